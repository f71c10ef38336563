#pragma once

#include <vector>

#include "frhyper/model.hpp"

namespace frhyper::detail {

// Visits every k-subset of {0..n-1} in lexicographic order. The visitor
// returns true to stop; the function returns true iff it was stopped.
template <class Visitor>
bool for_each_combination(Index n, Index k, Visitor&& visit) {
  if (k > n) return false;
  std::vector<Index> comb(k);
  for (Index i = 0; i < k; ++i) comb[i] = i;
  while (true) {
    if (visit(static_cast<const std::vector<Index>&>(comb))) return true;
    Index i = k;
    while (i > 0 && comb[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return false;
    ++comb[i - 1];
    for (Index j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
}

}  // namespace frhyper::detail
