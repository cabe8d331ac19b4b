#include "sigwaste/counterexamples.hpp"

#include <cmath>
#include <stdexcept>

#include "sigwaste/equilibrium.hpp"
#include "sigwaste/errors.hpp"
#include "sigwaste/ic.hpp"
#include "sigwaste/rootfind.hpp"
#include "sigwaste/waste.hpp"

namespace sigw {

namespace {

// Bisection to floating-point resolution followed by Newton polish.
template <class F, class DF>
CoefficientSolve solve_increasing(double s, F&& g, DF&& dg) {
  if (!(s > 0.0)) throw std::domain_error("coefficient solve: stakes must be positive");
  auto [lo, hi] = bracket_increasing(g, 1e-9, std::max(10.0, s));
  double c = bisect_increasing(g, lo, hi, 1e-13);
  for (int i = 0; i < 4; ++i) {
    const double step = g(c) / dg(c);
    const double next = c - step;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    c = next;
  }
  return CoefficientSolve{s, c, std::abs(g(c))};
}

}  // namespace

CoefficientSolve cubic_coefficient(double s) {
  auto g = [s](double c) { return 2.0 * c * c + 3.0 * c * c * c - s; };
  auto dg = [](double c) { return 4.0 * c + 9.0 * c * c; };
  return solve_increasing(s, g, dg);
}

CoefficientSolve ratio_coefficient(double s) {
  auto g = [s](double c) {
    return c * c * (2.0 + c) / ((1.0 + c) * (1.0 + c)) - s;
  };
  auto dg = [](double c) {
    const double onec = 1.0 + c;
    return (4.0 * c + 3.0 * c * c + c * c * c) / (onec * onec * onec);
  };
  return solve_increasing(s, g, dg);
}

double waste_decreasing(double s) {
  const double c = cubic_coefficient(s).c;
  return (1.0 + c) / (2.0 + 3.0 * c);
}

double waste_increasing(double s) {
  const double c = ratio_coefficient(s).c;
  return (1.0 + c) / (2.0 + c);
}

MixedResult mixed_isoelastic(std::span<const double> weights,
                             std::span<const double> gammas,
                             std::span<const double> sigmas, double beta,
                             double s) {
  const std::size_t n = weights.size();
  if (n == 0 || gammas.size() != n || sigmas.size() != n)
    throw std::invalid_argument("mixed_isoelastic: term lists must match and be nonempty");
  if (!(beta > 0.0) || !(s > 0.0))
    throw std::domain_error("mixed_isoelastic: beta and s must be positive");
  for (std::size_t i = 0; i < n; ++i)
    if (!(weights[i] > 0.0) || !(gammas[i] > 0.0) || !(sigmas[i] > 0.0))
      throw std::invalid_argument("mixed_isoelastic: terms must be positive");

  MixedResult out;
  out.alpha = (beta + sigmas[0]) / gammas[0];
  double gmin = gammas[0], gmax = gammas[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double ai = (beta + sigmas[i]) / gammas[i];
    if (std::abs(ai - out.alpha) > 1e-12 * std::max(1.0, std::abs(out.alpha)))
      throw RatioConditionError(
          "mixed_isoelastic: (beta+sigma_i)/gamma_i must be constant across terms");
    gmin = std::min(gmin, gammas[i]);
    gmax = std::max(gmax, gammas[i]);
  }
  out.degenerate_isoelastic = gmax - gmin <= 1e-12;

  auto g = [&](double c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += weights[i] * gammas[i] * std::pow(c, gammas[i]);
    return out.alpha * acc - s * beta;
  };
  auto dg = [&](double c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += weights[i] * gammas[i] * gammas[i] * std::pow(c, gammas[i] - 1.0);
    return out.alpha * acc;
  };
  const CoefficientSolve root = solve_increasing(s, g, dg);
  out.c = root.c;
  out.residual = root.residual;

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double term = weights[i] * std::pow(out.c, gammas[i]);
    num += term;
    den += gammas[i] * term;
  }
  out.waste = beta / out.alpha * num / den;
  return out;
}

double elasticity_diagnostic(CounterexampleFamily family, double action,
                             double theta) {
  if (!(action > 0.0) || !(theta > 0.0))
    throw std::domain_error("elasticity_diagnostic: needs action > 0, theta > 0");
  Environment env;
  env.benefit = BenefitSpec{1.0, IsoelasticBenefit{1.0}};
  env.cost = family == CounterexampleFamily::QuadCubic ? CostSpec{QuadCubicCost{}}
                                                       : CostSpec{RatioCostSpec{}};
  env.domain = TypeDomain::from_grid({theta * 0.5, theta * 2.0});
  const double c = eval_cost(env, action, theta);
  const double ct = eval_cost_partials(env, action, theta).dtheta;
  // V = s*theta, so dlnV/dlntheta = 1
  return -ct * theta / c;
}

CrosscheckReport crosscheck_nonmultiplicative(CounterexampleFamily family,
                                              std::span<const double> stakes,
                                              std::size_t type_points) {
  if (stakes.empty())
    throw std::invalid_argument("crosscheck_nonmultiplicative: empty stakes list");
  CrosscheckReport report;
  report.family = family;

  const TypeDomain domain = candidate_domain(1.0, type_points);
  for (double s : stakes) {
    const CoefficientSolve root = family == CounterexampleFamily::QuadCubic
                                      ? cubic_coefficient(s)
                                      : ratio_coefficient(s);
    Environment env;
    env.benefit = BenefitSpec{s, IsoelasticBenefit{1.0}};
    env.cost = family == CounterexampleFamily::QuadCubic
                   ? CostSpec{QuadCubicCost{}}
                   : CostSpec{RatioCostSpec{}};
    env.domain = domain;

    const Strategy strat = solve_ode(env, domain.grid.front(),
                                     root.c * domain.grid.front());
    const WasteProfile wp = waste_profile(env, strat);
    const ICReport ic = verify_ic(env, strat);

    CrosscheckRow row;
    row.s = s;
    row.c = root.c;
    row.residual = root.residual;
    row.w_closed = family == CounterexampleFamily::QuadCubic
                       ? waste_decreasing(s)
                       : waste_increasing(s);
    row.w_grid_mean = wp.mean;
    row.w_grid_spread = wp.spread;
    row.ic_gain = ic.max_gain;
    row.ic_pass = ic.pass;
    row.w_constant = wp.is_constant;
    report.all_ic_pass = report.all_ic_pass && row.ic_pass;
    report.all_constant = report.all_constant && row.w_constant;
    report.rows.push_back(row);
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const bool decreasing = report.rows[i].w_closed < report.rows[i - 1].w_closed;
    const bool expected_decreasing = family == CounterexampleFamily::QuadCubic;
    if (report.rows[i].s > report.rows[i - 1].s &&
        decreasing != expected_decreasing)
      report.monotone_as_expected = false;
  }
  return report;
}

}  // namespace sigw
