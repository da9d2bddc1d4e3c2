#include "semantics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <json.hpp>

namespace protodsl {

namespace {

std::string upcase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string pattern_string(const std::vector<std::string>& pattern) {
  std::string out;
  for (const std::string& p : pattern) {
    out += p;
    out += '|';
  }
  return out;
}

}  // namespace

OperationRecord record_from_sentence(const SentenceFeatures& sentence) {
  OperationRecord rec;
  rec.opcode = upcase(sentence.opcode.value());
  rec.sentence = sentence.text;
  for (const ArgumentSpan& a : sentence.arguments) rec.pattern.push_back(a.category);
  return rec;
}

std::vector<OperationRecord> extract_records(const std::vector<ProtocolFeatures>& corpus) {
  std::vector<OperationRecord> records;
  for (const ProtocolFeatures& protocol : corpus) {
    for (const SentenceFeatures& sentence : protocol) {
      if (!sentence.opcode) continue;
      records.push_back(record_from_sentence(sentence));
    }
  }
  return records;
}

FeatureMatrix vectorize(const std::vector<OperationRecord>& records) {
  FeatureMatrix m;
  std::map<std::string, std::size_t> slot_index;
  auto slot = [&](const std::string& name) {
    auto it = slot_index.find(name);
    if (it != slot_index.end()) return it->second;
    std::size_t idx = m.vocabulary.size();
    slot_index[name] = idx;
    m.vocabulary.push_back(name);
    return idx;
  };

  // First pass pins the vocabulary in first-occurrence order.
  for (const OperationRecord& rec : records) {
    slot("op:" + rec.opcode);
    std::map<std::string, int> counts;
    for (const std::string& cat : rec.pattern) {
      int n = ++counts[cat];
      slot("cat:" + cat + "#" + std::to_string(n));
    }
  }
  for (const OperationRecord& rec : records) {
    std::vector<uint8_t> row(m.vocabulary.size(), 0);
    row[slot_index.at("op:" + rec.opcode)] = 1;
    std::map<std::string, int> counts;
    for (const std::string& cat : rec.pattern) {
      int n = ++counts[cat];
      row[slot_index.at("cat:" + cat + "#" + std::to_string(n))] = 1;
    }
    m.vectors.push_back(std::move(row));
  }
  return m;
}

void DpmmConfig::validate() const {
  if (alpha <= 0) fail(ErrorKind::Invalid, "dpmm config: alpha must be positive");
  if (sigma_m <= 0) fail(ErrorKind::Invalid, "dpmm config: sigma_m must be positive");
  if (sweeps < 1) fail(ErrorKind::Invalid, "dpmm config: sweeps must be >= 1");
  if (stable_sweeps < 1) fail(ErrorKind::Invalid, "dpmm config: stable_sweeps must be >= 1");
  if (min_sweeps < 0) fail(ErrorKind::Invalid, "dpmm config: min_sweeps must be >= 0");
}

DpmmState init_dpmm(const FeatureMatrix& x, const DpmmConfig& cfg) {
  cfg.validate();
  if (x.vectors.empty()) fail(ErrorKind::Invalid, "dpmm: empty input");
  DpmmState state;
  state.alpha = cfg.alpha;
  state.sigma_m = cfg.sigma_m;
  state.rng_seed = cfg.seed;
  state.assignments.assign(x.vectors.size(), 0);
  Cluster c0;
  c0.sum.assign(x.vocabulary.size(), 0.0);
  c0.count = static_cast<int>(x.vectors.size());
  for (const auto& row : x.vectors)
    for (std::size_t d = 0; d < row.size(); ++d) c0.sum[d] += double(row[d]) - 0.5;
  state.clusters.push_back(std::move(c0));
  return state;
}

namespace {

// The sampler works on centered coordinates (x - 1/2), putting the generic
// base mean 0 in the middle of the binary cube instead of at one corner; with
// the corner base, escaping the single-cluster initialization takes
// exp(-weight/2) odds and the sampler never leaves it.
double centered(uint8_t v) { return double(v) - 0.5; }

// Isotropic unit-variance Gaussian log-density up to the shared (2*pi)^(-D/2)
// factor, which cancels in the normalization.
double log_gaussian_kernel(const std::vector<uint8_t>& x, const Cluster* cluster,
                           double sigma_m) {
  double d2 = 0.0;
  if (cluster == nullptr) {
    for (uint8_t v : x) d2 += centered(v) * centered(v);  // base measure mean 0
  } else {
    for (std::size_t d = 0; d < x.size(); ++d) {
      double diff = centered(x[d]) - cluster->mean(d, sigma_m);
      d2 += diff * diff;
    }
  }
  return -0.5 * d2;
}

void remove_point(DpmmState& state, const FeatureMatrix& x, std::size_t i) {
  int c = state.assignments[i];
  Cluster& cluster = state.clusters[static_cast<std::size_t>(c)];
  cluster.count -= 1;
  for (std::size_t d = 0; d < x.vectors[i].size(); ++d) cluster.sum[d] -= centered(x.vectors[i][d]);
  if (cluster.count == 0) {
    // Drop the empty cluster and keep ids dense.
    state.clusters.erase(state.clusters.begin() + c);
    for (int& a : state.assignments)
      if (a > c) --a;
  }
  state.assignments[i] = -1;
}

void insert_point(DpmmState& state, const FeatureMatrix& x, std::size_t i, int c) {
  if (c == static_cast<int>(state.clusters.size())) {
    Cluster fresh;
    fresh.sum.assign(x.vocabulary.size(), 0.0);
    fresh.count = 0;
    state.clusters.push_back(std::move(fresh));
  }
  Cluster& cluster = state.clusters[static_cast<std::size_t>(c)];
  cluster.count += 1;
  for (std::size_t d = 0; d < x.vectors[i].size(); ++d) cluster.sum[d] += centered(x.vectors[i][d]);
  state.assignments[i] = c;
}

}  // namespace

std::vector<double> gibbs_probabilities(const DpmmState& state, const FeatureMatrix& x,
                                        std::size_t i) {
  // Caller must have removed point i already (assignment == -1).
  if (state.assignments[i] != -1)
    fail(ErrorKind::State, "gibbs_probabilities: point still assigned");
  double remaining = 0.0;
  for (const Cluster& c : state.clusters) remaining += c.count;
  const double denom = remaining + state.alpha;

  std::vector<double> log_weights;
  log_weights.reserve(state.clusters.size() + 1);
  for (const Cluster& c : state.clusters) {
    double log_prior = std::log(double(c.count) / denom);
    log_weights.push_back(log_prior + log_gaussian_kernel(x.vectors[i], &c, state.sigma_m));
  }
  log_weights.push_back(std::log(state.alpha / denom) +
                        log_gaussian_kernel(x.vectors[i], nullptr, state.sigma_m));

  double max_lw = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> probs(log_weights.size());
  double total = 0.0;
  for (std::size_t k = 0; k < log_weights.size(); ++k) {
    probs[k] = std::exp(log_weights[k] - max_lw);
    total += probs[k];
  }
  for (double& p : probs) p /= total;

  double check = 0.0;
  for (double p : probs) check += p;
  if (std::abs(check - 1.0) > 1e-12)
    fail(ErrorKind::Internal, "gibbs probabilities do not sum to 1");
  return probs;
}

void gibbs_step(DpmmState& state, const FeatureMatrix& x, std::size_t i, std::mt19937_64& rng) {
  remove_point(state, x, i);
  std::vector<double> probs = gibbs_probabilities(state, x, i);
  double u = next_unit(rng);
  double acc = 0.0;
  int choice = static_cast<int>(probs.size()) - 1;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    if (u < acc) {
      choice = static_cast<int>(k);
      break;
    }
  }
  insert_point(state, x, i, choice);
}

SemanticRegistry build_registry(const std::vector<OperationRecord>& records,
                                const DpmmState& state) {
  SemanticRegistry registry;
  for (std::size_t c = 0; c < state.clusters.size(); ++c) {
    std::map<std::string, int> opcode_votes;
    std::map<std::string, int> pattern_votes;
    std::map<std::string, const OperationRecord*> pattern_rep;
    std::vector<const OperationRecord*> members;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (state.assignments[i] != static_cast<int>(c)) continue;
      members.push_back(&records[i]);
      opcode_votes[records[i].opcode] += 1;
      std::string ps = pattern_string(records[i].pattern);
      pattern_votes[ps] += 1;
      if (!pattern_rep.count(ps)) pattern_rep[ps] = &records[i];
    }
    if (members.empty()) continue;

    // Modal opcode and modal pattern; ties break to the lexicographically
    // smallest key (std::map iteration order makes that the first max).
    auto modal = [](const std::map<std::string, int>& votes) {
      std::string best;
      int best_count = -1;
      for (const auto& [key, count] : votes) {
        if (count > best_count) {
          best = key;
          best_count = count;
        }
      }
      return best;
    };
    std::string opcode = modal(opcode_votes);
    std::string modal_ps = modal(pattern_votes);

    RegistryEntry entry;
    entry.pattern = pattern_rep.at(modal_ps)->pattern;
    for (const OperationRecord* rec : members) {
      if (entry.examples.size() >= 5) break;
      entry.examples.push_back(rec->sentence);
    }

    // Patterns within an opcode stay distinct: merge example lists instead of
    // duplicating an entry.
    auto& list = registry.entries[opcode];
    bool merged = false;
    for (RegistryEntry& existing : list) {
      if (existing.pattern == entry.pattern) {
        for (const std::string& ex : entry.examples) {
          if (existing.examples.size() >= 5) break;
          if (std::find(existing.examples.begin(), existing.examples.end(), ex) ==
              existing.examples.end())
            existing.examples.push_back(ex);
        }
        merged = true;
        break;
      }
    }
    if (!merged) list.push_back(std::move(entry));
  }
  return registry;
}

DpmmResult run_dpmm(const std::vector<OperationRecord>& records, const FeatureMatrix& x,
                    const DpmmConfig& cfg) {
  cfg.validate();
  if (records.size() != x.vectors.size())
    fail(ErrorKind::Invalid, "dpmm: records and vectors disagree");
  if (records.empty()) fail(ErrorKind::Invalid, "dpmm: empty input");

  DpmmResult result;
  result.state = init_dpmm(x, cfg);
  std::mt19937_64 rng(cfg.seed);

  int stable = 0;
  for (int sweep = 1; sweep <= cfg.sweeps; ++sweep) {
    std::vector<int> before = result.state.assignments;
    for (std::size_t i = 0; i < x.vectors.size(); ++i) {
      gibbs_step(result.state, x, i, rng);
    }
    int moved = 0;
    for (std::size_t i = 0; i < before.size(); ++i)
      if (before[i] != result.state.assignments[i]) ++moved;
    result.trace.push_back({sweep, static_cast<int>(result.state.cluster_count()), moved});
    result.sweeps_run = sweep;
    stable = (moved == 0) ? stable + 1 : 0;
    if (sweep >= cfg.min_sweeps && stable >= cfg.stable_sweeps) {
      result.converged = true;
      break;
    }
  }

  int total = 0;
  for (const Cluster& c : result.state.clusters) total += c.count;
  if (total != static_cast<int>(records.size()))
    fail(ErrorKind::Internal, "dpmm: cluster counts do not sum to N");

  result.registry = build_registry(records, result.state);
  return result;
}

// ---- registry serialization (the exemplar shape) ---------------------------

std::string SemanticRegistry::to_json() const {
  nlohmann::ordered_json root = nlohmann::ordered_json::object();
  for (const auto& [opcode, list] : entries) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const RegistryEntry& e : list) {
      nlohmann::ordered_json obj;
      obj["pattern"] = e.pattern;
      obj["example"] = e.examples;
      arr.push_back(std::move(obj));
    }
    root[opcode] = std::move(arr);
  }
  return root.dump(4);
}

SemanticRegistry SemanticRegistry::from_json(std::string_view text) {
  nlohmann::json root = nlohmann::json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.is_object())
    fail(ErrorKind::Parse, "semantic registry: not a JSON object");
  SemanticRegistry registry;
  for (const auto& [opcode, list] : root.items()) {
    if (!list.is_array()) fail(ErrorKind::Parse, "semantic registry: opcode value must be a list");
    for (const auto& item : list) {
      RegistryEntry entry;
      if (!item.contains("pattern") || !item["pattern"].is_array())
        fail(ErrorKind::Parse, "semantic registry: entry missing pattern");
      for (const auto& p : item["pattern"]) entry.pattern.push_back(p.get<std::string>());
      if (item.contains("example")) {
        for (const auto& ex : item["example"]) entry.examples.push_back(ex.get<std::string>());
      }
      registry.entries[opcode].push_back(std::move(entry));
    }
  }
  return registry;
}

}  // namespace protodsl
