#include "em.hpp"

#include <algorithm>
#include <cmath>

namespace protodsl {

void EmConfig::validate() const {
  if (max_iters < 1) fail(ErrorKind::Invalid, "em config: max_iters must be >= 1");
  if (rel_tol <= 0) fail(ErrorKind::Invalid, "em config: rel_tol must be positive");
  if (support_floor <= 0 || support_floor >= 1)
    fail(ErrorKind::Invalid, "em config: support_floor must be in (0,1)");
  if (delta <= 0 || delta >= 1) fail(ErrorKind::Invalid, "em config: delta must be in (0,1)");
  if (detect_rate <= 0 || detect_rate >= 1 || false_positive_rate <= 0 ||
      false_positive_rate >= 1)
    fail(ErrorKind::Invalid, "em config: observation rates must be in (0,1)");
}

namespace {

double bernoulli(double rate, bool hit) { return hit ? rate : 1.0 - rate; }

bool binarize(const ScoreMap& scores, ConstraintId k, const ThetaParams& theta) {
  auto sit = scores.find(k);
  if (sit == scores.end()) fail(ErrorKind::Invalid, "score map missing " + constraint_name(k));
  auto tit = theta.tau.find(k);
  double tau = tit == theta.tau.end() ? 0.5 : tit->second;
  return sit->second >= tau;
}

}  // namespace

ThetaParams init_theta(const std::vector<ScoreMap>& scores, const EmConfig& cfg) {
  cfg.validate();
  if (scores.empty()) fail(ErrorKind::Invalid, "empty corpus");
  ThetaParams theta;
  for (ConstraintId k : all_constraints()) {
    double sum = 0.0;
    for (const ScoreMap& m : scores) {
      auto it = m.find(k);
      if (it == m.end()) fail(ErrorKind::Invalid, "score map missing " + constraint_name(k));
      sum += it->second;
    }
    theta.pi[k] = std::clamp(sum / double(scores.size()), 0.0, 1.0);
    theta.tau[k] = cfg.delta;
  }
  return theta;
}

LatentAssignment e_step(const std::vector<ScoreMap>& scores, const ThetaParams& theta,
                        const Grammar& grammar, const EmConfig& cfg) {
  cfg.validate();
  LatentAssignment assignment;
  assignment.responsibilities.resize(scores.size());
  for (ConstraintId k : all_constraints()) {
    const bool gate = accepts_construct(grammar, k);
    const double pi = theta.pi.at(k);
    const double p_present = gate ? pi : 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      double r = 0.0;
      if (p_present > 0.0) {
        const bool b = binarize(scores[i], k, theta);
        const double num = p_present * bernoulli(cfg.detect_rate, b);
        const double den =
            num + (1.0 - p_present) * bernoulli(cfg.false_positive_rate, b);
        r = num / den;
      }
      assignment.responsibilities[i][k] = r;
    }
  }
  return assignment;
}

std::pair<ThetaParams, Grammar> m_step(const LatentAssignment& assignment,
                                       const ThetaParams& theta, const Grammar& grammar,
                                       const EmConfig& cfg) {
  cfg.validate();
  const std::size_t n = assignment.responsibilities.size();
  if (n == 0) fail(ErrorKind::Invalid, "m_step: empty assignment");

  ThetaParams updated = theta;
  std::set<ConstraintId> to_prune;
  for (ConstraintId k : all_constraints()) {
    double support = 0.0;
    for (const auto& r : assignment.responsibilities) support += r.at(k);
    updated.pi[k] = std::clamp(support / double(n), 0.0, 1.0);
    const bool was_active = accepts_construct(grammar, k);
    if (was_active && !is_constant_constraint(k) && support < cfg.support_floor * double(n)) {
      to_prune.insert(k);
    }
  }
  if (to_prune.empty()) return {std::move(updated), grammar};
  Grammar pruned = prune(grammar, to_prune);
  return {std::move(updated), std::move(pruned)};
}

double observed_loglik(const std::vector<ScoreMap>& scores, const ThetaParams& theta,
                       const Grammar& grammar, const EmConfig& cfg) {
  double ll = 0.0;
  for (ConstraintId k : all_constraints()) {
    const double p_present = accepts_construct(grammar, k) ? theta.pi.at(k) : 0.0;
    for (const ScoreMap& m : scores) {
      const bool b = binarize(m, k, theta);
      const double p = p_present * bernoulli(cfg.detect_rate, b) +
                       (1.0 - p_present) * bernoulli(cfg.false_positive_rate, b);
      ll += std::log(p);
    }
  }
  return ll;
}

std::pair<DslSyntax, EmReport> run_em(const std::vector<ScoreMap>& scores, const EmConfig& cfg) {
  cfg.validate();
  if (scores.empty()) fail(ErrorKind::Invalid, "empty corpus");

  Grammar grammar = load_prior();
  ThetaParams theta = init_theta(scores, cfg);

  auto active_of = [](const Grammar& g) {
    std::set<ConstraintId> active;
    for (ConstraintId k : all_constraints())
      if (accepts_construct(g, k)) active.insert(k);
    return active;
  };

  EmReport report;
  report.K_prime = kConstraintCount;
  std::set<ConstraintId> active = active_of(grammar);
  double prev_ll = -std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    LatentAssignment assignment = e_step(scores, theta, grammar, cfg);
    std::tie(theta, grammar) = m_step(assignment, theta, grammar, cfg);
    const std::set<ConstraintId> next_active = active_of(grammar);
    const double ll = observed_loglik(scores, theta, grammar, cfg);

    report.iterations = iter;
    report.loglik_trace.push_back(ll);
    if (std::isfinite(prev_ll) && ll + 1e-9 < prev_ll) {
      fail(ErrorKind::Internal, "EM log-likelihood decreased at iteration " +
                                    std::to_string(iter) + ": " + std::to_string(prev_ll) +
                                    " -> " + std::to_string(ll));
    }

    const bool ll_settled =
        std::isfinite(prev_ll) &&
        std::abs(ll - prev_ll) <= cfg.rel_tol * std::max(1.0, std::abs(prev_ll));
    const bool set_stable = next_active == active;
    active = next_active;
    prev_ll = ll;
    if (ll_settled && set_stable) {
      report.converged = true;
      break;
    }
  }

  report.active = active;
  report.K = static_cast<int>(active.size());
  return {DslSyntax{std::move(grammar), std::move(active)}, std::move(report)};
}

}  // namespace protodsl
