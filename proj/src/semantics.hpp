#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "features.hpp"

namespace protodsl {

struct OperationRecord {
  std::string opcode;                 // uppercased verb lemma
  std::vector<std::string> pattern;   // ordered argument categories
  std::string sentence;

  bool operator==(const OperationRecord&) const = default;
};

// One record per verb-initial sentence across the corpus.
std::vector<OperationRecord> extract_records(const std::vector<ProtocolFeatures>& corpus);
OperationRecord record_from_sentence(const SentenceFeatures& sentence);

// Binary vectors: a one-hot opcode block plus unary-count category slots
// ("REG#1", "REG#2", ...), so distinct (opcode, category multiset) pairs map
// to distinct vectors. Slot order is first-occurrence order.
struct FeatureMatrix {
  std::vector<std::string> vocabulary;       // slot names
  std::vector<std::vector<uint8_t>> vectors; // one row per record
};

FeatureMatrix vectorize(const std::vector<OperationRecord>& records);

struct DpmmConfig {
  double alpha = 1.0;    // CRP concentration
  double sigma_m = 0.1;  // MAP regularizer for cluster means
  int sweeps = 500;
  uint64_t seed = 0;
  int stable_sweeps = 10;  // early stop after this many unchanged sweeps
  // The stability window only arms after this many sweeps. Starting from the
  // single-cluster initialization, quiet sweeps are common long before the
  // sampler has nucleated the real clusters; stopping on the first quiet
  // stretch would freeze that transient.
  int min_sweeps = 100;

  void validate() const;
};

struct Cluster {
  std::vector<double> sum;  // componentwise sum of member vectors
  int count = 0;

  // MAP mean with regularizer sigma_m.
  double mean(std::size_t d, double sigma_m) const {
    return sum[d] / (double(count) + sigma_m);
  }
};

struct DpmmState {
  std::vector<int> assignments;   // one dense cluster id per point
  std::vector<Cluster> clusters;  // no empty clusters
  double alpha = 1.0;
  double sigma_m = 0.1;
  uint64_t rng_seed = 0;

  std::size_t cluster_count() const { return clusters.size(); }
};

DpmmState init_dpmm(const FeatureMatrix& x, const DpmmConfig& cfg);

// One Gibbs update of point i: remove it from its cluster, sample a cluster
// from the CRP-weighted Gaussian posterior (unit variance, base mean 0),
// reinsert, refresh MAP means. The sampling distribution is normalized and
// asserted to sum to 1 within 1e-12.
void gibbs_step(DpmmState& state, const FeatureMatrix& x, std::size_t i, std::mt19937_64& rng);

// Per-point posterior probabilities (existing clusters..., new cluster);
// exposed for tests.
std::vector<double> gibbs_probabilities(const DpmmState& state, const FeatureMatrix& x,
                                        std::size_t i);

struct RegistryEntry {
  std::vector<std::string> pattern;
  std::vector<std::string> examples;  // up to 5 member sentences

  bool operator==(const RegistryEntry&) const = default;
};

// Opcode -> discovered parameter patterns with example sentences.
struct SemanticRegistry {
  std::map<std::string, std::vector<RegistryEntry>> entries;

  bool operator==(const SemanticRegistry&) const = default;
  bool empty() const { return entries.size() == 0; }
  std::string to_json() const;
  static SemanticRegistry from_json(std::string_view text);
};

struct DpmmTracePoint {
  int sweep = 0;
  int clusters = 0;
  int moved = 0;
};

struct DpmmResult {
  DpmmState state;
  SemanticRegistry registry;
  std::vector<DpmmTracePoint> trace;
  int sweeps_run = 0;
  bool converged = false;
};

DpmmResult run_dpmm(const std::vector<OperationRecord>& records, const FeatureMatrix& x,
                    const DpmmConfig& cfg);

// Registry derivation from a final state: one entry per cluster under its
// modal opcode with its modal pattern (ties break to the lexicographically
// smallest pattern string); entries with equal opcode and pattern merge.
SemanticRegistry build_registry(const std::vector<OperationRecord>& records,
                                const DpmmState& state);

}  // namespace protodsl
