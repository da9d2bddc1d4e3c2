#pragma once

#include <set>
#include <vector>

#include "filters.hpp"
#include "grammar.hpp"

namespace protodsl {

struct EmConfig {
  int max_iters = 100;
  double rel_tol = 1e-6;
  double support_floor = 0.01;  // fraction of the corpus
  double delta = 0.5;           // score binarization threshold
  // Two-rate Bernoulli observation model: detection rate when the constraint
  // is present, false-positive rate when absent.
  double detect_rate = 0.95;
  double false_positive_rate = 0.05;

  void validate() const;
};

struct ThetaParams {
  // Per-constraint Bernoulli presence rate and binarization threshold.
  std::map<ConstraintId, double> pi;
  std::map<ConstraintId, double> tau;
};

struct LatentAssignment {
  // responsibilities[i][k]: posterior that protocol i exhibits constraint k.
  std::vector<std::map<ConstraintId, double>> responsibilities;
};

struct EmReport {
  int iterations = 0;
  std::vector<double> loglik_trace;
  std::set<ConstraintId> active;
  int K = 0;        // |active| after optimization
  int K_prime = 0;  // candidate count before optimization
  bool converged = false;
};

struct DslSyntax {
  Grammar grammar;
  std::set<ConstraintId> active;
};

// Initial rates: mean raw filter score per constraint; thresholds start at
// delta.
ThetaParams init_theta(const std::vector<ScoreMap>& scores, const EmConfig& cfg);

// Exact two-case posterior per (protocol, constraint): presence prior is the
// grammar gate times pi_k, the observation is the binarized score under the
// two-rate Bernoulli. Grammar-rejected constraints get zero responsibility.
LatentAssignment e_step(const std::vector<ScoreMap>& scores, const ThetaParams& theta,
                        const Grammar& grammar, const EmConfig& cfg);

// pi_k = sum_i r_ik / N (the closed-form maximizer); constraints whose support
// falls under support_floor * N are deactivated and pruned from the grammar.
// Constant filters (device, scientific) are exempt.
std::pair<ThetaParams, Grammar> m_step(const LatentAssignment& assignment,
                                       const ThetaParams& theta, const Grammar& grammar,
                                       const EmConfig& cfg);

// Observed-data log-likelihood under the current parameters and grammar.
double observed_loglik(const std::vector<ScoreMap>& scores, const ThetaParams& theta,
                       const Grammar& grammar, const EmConfig& cfg);

std::pair<DslSyntax, EmReport> run_em(const std::vector<ScoreMap>& scores, const EmConfig& cfg);

}  // namespace protodsl
