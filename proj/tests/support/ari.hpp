#pragma once

// Adjusted Rand index between two labelings, used as the clustering oracle.

#include <map>
#include <vector>

namespace protodsl::testing {

inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  std::map<std::pair<int, int>, long> joint;
  std::map<int, long> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    joint[{a[i], b[i]}] += 1;
    rows[a[i]] += 1;
    cols[b[i]] += 1;
  }
  auto choose2 = [](long m) { return double(m) * double(m - 1) / 2.0; };
  double sum_joint = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [_, c] : joint) sum_joint += choose2(c);
  for (const auto& [_, c] : rows) sum_rows += choose2(c);
  for (const auto& [_, c] : cols) sum_cols += choose2(c);
  double total = choose2(static_cast<long>(n));
  double expected = sum_rows * sum_cols / total;
  double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (sum_joint - expected) / (max_index - expected);
}

}  // namespace protodsl::testing
