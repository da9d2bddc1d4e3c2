#pragma once

#include <string>
#include <string_view>

namespace protodsl {

// Name-string similarity: geometric mean of modified n-gram precisions up to
// 4-grams with a brevity penalty. Orders with no candidate n-grams smooth to
// (m+1)/(t+1), which keeps 1-2 word names comparable instead of degenerate.
// Symmetric inputs score 1; the match threshold used by callers is 0.5.
double name_similarity(std::string_view candidate, std::string_view reference);

}  // namespace protodsl
