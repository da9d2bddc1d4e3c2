#pragma once

#include <map>

#include "constraints.hpp"
#include "features.hpp"

namespace protodsl {

struct FilterConfig {
  int epsilon = 4;      // repetition / enumeration threshold
  double delta = 0.5;   // similarity binarization threshold

  void validate() const {
    if (epsilon < 1) fail(ErrorKind::Invalid, "filter config: epsilon must be >= 1");
    if (delta <= 0.0 || delta >= 1.0) fail(ErrorKind::Invalid, "filter config: delta must be in (0,1)");
  }
};

using ScoreMap = std::map<ConstraintId, double>;

// Prior belief that constraint `k` is exhibited by a protocol, evaluated on
// the protocol's full sentence list. Scores are in [0,1]; Exists terms are
// 0/1, similarity terms are real-valued, compositions are products and maxes.
double score(ConstraintId k, const ProtocolFeatures& features, const FilterConfig& cfg,
             const SimilarityProvider& sim);

ScoreMap score_all(const ProtocolFeatures& features, const FilterConfig& cfg,
                   const SimilarityProvider& sim);

}  // namespace protodsl
