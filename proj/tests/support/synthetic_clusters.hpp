#pragma once

// Synthetic binary-vector cluster generators for the DPMM recovery oracles.

#include <random>
#include <vector>

#include "semantics.hpp"

namespace protodsl::testing {

// Five 64-bit Hadamard-derived prototypes with pairwise Hamming distance
// exactly 32 (half the dimension).
inline std::vector<std::vector<uint8_t>> hadamard_prototypes() {
  std::vector<std::vector<uint8_t>> protos;
  for (int r : {1, 2, 3, 4, 7}) {
    std::vector<uint8_t> row(64, 0);
    for (int i = 0; i < 64; ++i) {
      row[static_cast<std::size_t>(i)] = static_cast<uint8_t>(__builtin_popcount(i & r) & 1);
    }
    protos.push_back(std::move(row));
  }
  return protos;
}

struct SyntheticClusters {
  FeatureMatrix matrix;
  std::vector<OperationRecord> records;  // dummy records, one per point
  std::vector<int> truth;                // generating cluster per point
};

inline SyntheticClusters make_separated_clusters(
    const std::vector<std::vector<uint8_t>>& prototypes, int points_per_cluster, uint64_t seed,
    double flip_prob) {
  std::mt19937_64 rng(seed);
  SyntheticClusters out;
  const std::size_t dim = prototypes.at(0).size();
  for (std::size_t d = 0; d < dim; ++d) out.matrix.vocabulary.push_back("b" + std::to_string(d));
  for (std::size_t c = 0; c < prototypes.size(); ++c) {
    for (int p = 0; p < points_per_cluster; ++p) {
      std::vector<uint8_t> row = prototypes[c];
      for (auto& bit : row) {
        if (next_unit(rng) < flip_prob) bit = static_cast<uint8_t>(1 - bit);
      }
      out.matrix.vectors.push_back(std::move(row));
      OperationRecord rec;
      rec.opcode = "OP" + std::to_string(c);
      rec.sentence = "synthetic point";
      out.records.push_back(std::move(rec));
      out.truth.push_back(static_cast<int>(c));
    }
  }
  return out;
}

}  // namespace protodsl::testing
