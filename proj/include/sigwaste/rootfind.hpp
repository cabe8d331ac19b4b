#pragma once

#include <cmath>
#include <utility>

#include "sigwaste/errors.hpp"

namespace sigw {

// Expands [lo, hi] until it brackets the root of an increasing function f,
// i.e. f(lo) <= 0 <= f(hi).
template <class F>
std::pair<double, double> bracket_increasing(F&& f, double lo, double hi,
                                             int max_expand = 200) {
  int n = 0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (++n > max_expand) throw InversionError("bracketing failed: no upper bound");
  }
  n = 0;
  while (f(lo) > 0.0) {
    lo *= 0.5;
    if (++n > max_expand) throw InversionError("bracketing failed: no lower bound");
  }
  return {lo, hi};
}

// Bisection for an increasing f with f(lo) <= 0 <= f(hi), to relative
// x-tolerance. Monotone inputs make this unconditionally safe.
template <class F>
double bisect_increasing(F&& f, double lo, double hi, double rel_tol = 1e-12,
                         int max_iter = 200) {
  if (f(lo) > 0.0 || f(hi) < 0.0)
    throw InversionError("bisection: root not bracketed");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point resolution
    (f(mid) < 0.0 ? lo : hi) = mid;
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace sigw
