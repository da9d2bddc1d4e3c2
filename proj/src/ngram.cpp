#include "ngram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "common.hpp"

namespace protodsl {

namespace {

std::vector<std::string> words_of(std::string_view s) {
  return split_ws(to_lower(s));
}

std::map<std::string, int> ngrams(const std::vector<std::string>& words, int n) {
  std::map<std::string, int> counts;
  if (static_cast<int>(words.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= words.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key += ' ';
      key += words[i + k];
    }
    counts[key] += 1;
  }
  return counts;
}

}  // namespace

double name_similarity(std::string_view candidate, std::string_view reference) {
  std::vector<std::string> cand = words_of(candidate);
  std::vector<std::string> ref = words_of(reference);
  if (cand.empty() || ref.empty()) return cand.empty() && ref.empty() ? 1.0 : 0.0;

  double log_sum = 0.0;
  for (int n = 1; n <= 4; ++n) {
    std::map<std::string, int> cg = ngrams(cand, n);
    std::map<std::string, int> rg = ngrams(ref, n);
    int total = 0;
    int matched = 0;
    for (const auto& [gram, count] : cg) {
      total += count;
      auto it = rg.find(gram);
      if (it != rg.end()) matched += std::min(count, it->second);
    }
    double p;
    if (n == 1) {
      // Unigram precision stays raw; zero overlap should score zero.
      if (total == 0) return 0.0;
      p = double(matched) / double(total);
      if (p == 0.0) return 0.0;
    } else {
      p = double(matched + 1) / double(total + 1);
    }
    log_sum += std::log(p);
  }

  double c = double(cand.size());
  double r = double(ref.size());
  double brevity = (c >= r) ? 1.0 : std::exp(1.0 - r / c);
  return brevity * std::exp(log_sum / 4.0);
}

}  // namespace protodsl
