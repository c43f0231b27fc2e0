#pragma once

// Scan-then-bisect root finding on [bottom, top] for predicates that are
// true near the top (entangled) and false near the bottom (separable).

#include "esdlab/errors.hpp"

#include <cmath>
#include <vector>

namespace esdlab::detail {

using Bracket = RootNotFound::Bracket;

// top, top - step, ..., down to and including bottom.
inline std::vector<double> descending_grid(double top, double bottom, double step) {
  std::vector<double> g;
  for (int k = 0;; ++k) {
    const double s = top - k * step;
    if (s <= bottom) break;
    g.push_back(s);
  }
  g.push_back(bottom);
  return g;
}

// Every adjacent pair of grid points where `inside` changes value.
template <class Pred>
std::vector<Bracket> scan_transitions(Pred&& inside, const std::vector<double>& grid) {
  std::vector<Bracket> out;
  bool prev = inside(grid.front());
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const bool cur = inside(grid[k]);
    if (cur != prev) out.push_back({grid[k], grid[k - 1]});
    prev = cur;
  }
  return out;
}

// Shrinks [lo, hi] with inside(hi) != inside(lo) to width <= tol and
// returns the midpoint.
template <class Pred>
double bisect(Pred&& inside, double lo, double hi, double tol) {
  const bool at_hi = inside(hi);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (inside(mid) == at_hi)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace esdlab::detail
