#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigwaste/errors.hpp"

namespace sigw {

namespace detail {

template <class F>
double simpson_rec(F& f, double a, double m, double b, double fa, double fm,
                   double fb, double whole, double eps, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps || depth <= 0)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on [a,b] with tolerance relative to the panel magnitude.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol = 1e-12,
                        int max_depth = 52) {
  if (!(b >= a)) throw std::domain_error("adaptive_simpson: requires b >= a");
  if (b == a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb))
    throw QuadratureError("adaptive_simpson: integrand not finite on panel");
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double eps =
      rel_tol * std::max(std::abs(whole), std::numeric_limits<double>::min());
  return detail::simpson_rec(f, a, m, b, fa, fm, fb, whole, eps, max_depth);
}

// Integral of f over [0, b] where f may blow up (or have unbounded slope) at
// zero, as long as it is locally a power t^p with p > -1. Dyadic panels are
// refined toward zero and the remaining sliver is closed with a fitted
// power-law tail, which is exact for pure power integrands.
template <class F>
double integrate_from_zero(F&& f, double b, double rel_tol = 1e-12) {
  if (b < 0.0) throw std::domain_error("integrate_from_zero: negative endpoint");
  if (b == 0.0) return 0.0;
  constexpr int kPanels = 48;
  const double t0 = std::ldexp(b, -kPanels);
  const double f0 = f(t0);
  const double f1 = f(2.0 * t0);
  if (!std::isfinite(f0) || !std::isfinite(f1))
    throw QuadratureError("integrate_from_zero: integrand not finite near 0");
  double total = 0.0;
  if (f0 > 0.0 && f1 > 0.0) {
    const double p = std::log2(f1 / f0);
    if (p <= -1.0 + 1e-9)
      throw QuadratureError("integrate_from_zero: integrand not integrable at 0");
    total = f0 * t0 / (p + 1.0);
  }
  for (int j = kPanels - 1; j >= 0; --j)
    total += adaptive_simpson(f, std::ldexp(b, -(j + 1)), std::ldexp(b, -j),
                              rel_tol);
  return total;
}

}  // namespace sigw
