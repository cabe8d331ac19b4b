#include "sigwaste/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigwaste/errors.hpp"
#include "sigwaste/quadrature.hpp"
#include "sigwaste/rootfind.hpp"

namespace sigw {

namespace {

constexpr double kSingularFloor = 1e-14;

// Marginal cost along the ODE path. Steep power-law solutions pass through
// extremely small actions near the lower boundary, so the guard against
// nonpositive probes sits at the bottom of the normal double range; a
// degenerate seed then surfaces as SingularityError rather than a domain
// error.
double marginal_cost(const Environment& env, double action, double theta) {
  return eval_cost_partials(env, std::max(action, 1e-300), theta).da;
}

// One Cash-Karp 4(5) step; returns the fifth-order value and the embedded
// error estimate.
template <class F>
double cash_karp_step(F& f, double t, double y, double h, double& err) {
  const double k1 = f(t, y);
  const double k2 = f(t + 0.2 * h, y + h * 0.2 * k1);
  const double k3 = f(t + 0.3 * h, y + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
  const double k4 =
      f(t + 0.6 * h, y + h * (0.3 * k1 - 0.9 * k2 + 1.2 * k3));
  const double k5 = f(t + h, y + h * (-11.0 / 54 * k1 + 2.5 * k2 -
                                      70.0 / 27 * k3 + 35.0 / 27 * k4));
  const double k6 =
      f(t + 0.875 * h,
        y + h * (1631.0 / 55296 * k1 + 175.0 / 512 * k2 + 575.0 / 13824 * k3 +
                 44275.0 / 110592 * k4 + 253.0 / 4096 * k5));
  const double y5 = y + h * (37.0 / 378 * k1 + 250.0 / 621 * k3 +
                             125.0 / 594 * k4 + 512.0 / 1771 * k6);
  const double y4 = y + h * (2825.0 / 27648 * k1 + 18575.0 / 48384 * k3 +
                             13525.0 / 55296 * k4 + 277.0 / 14336 * k5 +
                             0.25 * k6);
  err = std::abs(y5 - y4);
  return y5;
}

template <class F>
double rk45_advance(F& f, double t0, double y0, double t1, double rel_tol) {
  double t = t0, y = y0;
  double h = t1 - t0;
  long steps = 0;
  while (t < t1) {
    bool last = false;
    if (h >= t1 - t) {
      h = t1 - t;
      last = true;
    }
    double err = 0.0;
    const double y5 = cash_karp_step(f, t, y, h, err);
    const double scale =
        rel_tol * std::max(std::abs(y), std::abs(y5)) + 1e-300;
    const bool forced = h <= (t1 - t0) * 1e-13;
    if (err <= scale || forced) {
      t = last ? t1 : t + h;
      y = y5;
    }
    const double fac = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
    h *= std::clamp(fac, 0.2, 5.0);
    if (++steps > 1000000)
      throw NumericalError("rk45: step limit exceeded");
  }
  return y;
}

double benefit_power_exponent(const BenefitShape& shape) {
  if (const auto* iso = std::get_if<IsoelasticBenefit>(&shape)) return iso->beta;
  if (const auto* pc = std::get_if<PowerOfCdfBenefit>(&shape))
    return pc->k * (pc->n - 1);
  throw std::invalid_argument(
      "default ODE seeding needs a power-law benefit for this cost family");
}

// Exponent of the local power-law ansatz A ~ c*theta^p at the lower boundary
// for the non-multiplicative families.
double ansatz_exponent(const Environment& env) {
  if (std::holds_alternative<QuadCubicCost>(env.cost) ||
      std::holds_alternative<RatioCostSpec>(env.cost))
    return 1.0;
  const auto& m = std::get<MixedIsoelasticCost>(env.cost);
  if (m.weights.empty())
    throw std::invalid_argument("mixed cost: empty term list");
  const double beta = benefit_power_exponent(env.benefit.shape);
  const double alpha = (beta + m.sigmas[0]) / m.gammas[0];
  for (std::size_t i = 1; i < m.gammas.size(); ++i) {
    const double ai = (beta + m.sigmas[i]) / m.gammas[i];
    if (std::abs(ai - alpha) > 1e-9 * std::max(1.0, std::abs(alpha)))
      throw RatioConditionError(
          "mixed cost: (beta+sigma_i)/gamma_i is not constant across terms");
  }
  return alpha;
}

}  // namespace

Strategy::Strategy(std::vector<double> theta, std::vector<double> action,
                   Provenance provenance)
    : theta_(std::move(theta)),
      action_(std::move(action)),
      provenance_(provenance) {
  if (theta_.size() != action_.size() || theta_.size() < 2)
    throw std::invalid_argument("Strategy: grids must match (>= 2 points)");
  if (!(theta_.front() > 0.0))
    throw std::invalid_argument("Strategy: first type must be positive");
  for (std::size_t i = 1; i < theta_.size(); ++i) {
    if (!(theta_[i] > theta_[i - 1]))
      throw std::invalid_argument("Strategy: types not strictly increasing");
    if (!(action_[i] > action_[i - 1]))
      throw std::invalid_argument("Strategy: actions not strictly increasing");
  }
  if (!(action_.front() > 0.0) || !std::isfinite(action_.back()))
    throw std::invalid_argument("Strategy: actions must be positive and finite");
  interp_ = LogLogInterp(theta_, action_);
}

double Strategy::action(double theta) const {
  if (theta < 0.0) throw std::domain_error("Strategy::action: negative type");
  if (theta > theta_.back() * (1.0 + 1e-9))
    throw std::domain_error("Strategy::action: type beyond solved range");
  return interp_.value(std::min(theta, theta_.back()));
}

double Strategy::action_deriv(double theta) const {
  if (!(theta > 0.0) || theta > theta_.back() * (1.0 + 1e-9))
    throw std::domain_error("Strategy::action_deriv: type outside (0, theta_bar]");
  return interp_.derivative(std::min(theta, theta_.back()));
}

ClosedFormPoint closed_form_isoelastic(double stakes, double beta, double sigma,
                                       double gamma, double theta) {
  if (!(stakes > 0.0) || !(beta > 0.0) || !(sigma > 0.0) || !(gamma > 0.0))
    throw std::domain_error("closed_form_isoelastic: parameters must be positive");
  if (theta < 0.0) throw std::domain_error("closed_form_isoelastic: theta < 0");
  const double level = stakes * beta / (beta + sigma);
  ClosedFormPoint out;
  out.action = std::pow(level, 1.0 / gamma) * std::pow(theta, (beta + sigma) / gamma);
  out.cost = level * std::pow(theta, beta);
  return out;
}

std::vector<double> cumulative_base_integral(const BenefitShape& shape,
                                             const StrainSpec& strain,
                                             const std::vector<double>& grid,
                                             double quad_rel_tol) {
  auto f = [&](double t) { return shape_deriv(shape, t) / strain_value(strain, t); };
  std::vector<double> F(grid.size());
  F[0] = integrate_from_zero(f, grid[0], quad_rel_tol);
  for (std::size_t i = 1; i < grid.size(); ++i)
    F[i] = F[i - 1] + adaptive_simpson(f, grid[i - 1], grid[i], quad_rel_tol);
  return F;
}

Strategy solve_multiplicative(const Environment& env, const SolverOptions& opt) {
  if (!is_multiplicative(env.cost))
    throw std::invalid_argument("solve_multiplicative: cost is not multiplicative");
  const auto& m = std::get<MultiplicativeCost>(env.cost);
  const auto& grid = env.domain.grid;
  const auto F =
      cumulative_base_integral(env.benefit.shape, m.strain, grid, opt.quad_rel_tol);
  std::vector<double> actions(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    actions[i] = difficulty_invert(m.difficulty, env.benefit.stakes * F[i],
                                   opt.root_rel_tol);
  return Strategy(grid, std::move(actions), Provenance::Integral);
}

std::pair<double, double> default_ode_seed(const Environment& env,
                                           const SolverOptions& opt) {
  const double theta0 = env.domain.grid.front();
  if (is_multiplicative(env.cost)) {
    const auto& m = std::get<MultiplicativeCost>(env.cost);
    auto f = [&](double t) {
      return shape_deriv(env.benefit.shape, t) / strain_value(m.strain, t);
    };
    const double head = integrate_from_zero(f, theta0, opt.quad_rel_tol);
    return {theta0, difficulty_invert(m.difficulty, env.benefit.stakes * head,
                                      opt.root_rel_tol)};
  }
  // Local ansatz A = c*theta^p: the ODE at theta0 pins A*C_a = p*theta0*V'.
  const double p = ansatz_exponent(env);
  const double target = p * theta0 * eval_benefit_deriv(env, theta0);
  auto g = [&](double a) { return a * eval_cost_partials(env, a, theta0).da - target; };
  auto [lo, hi] = bracket_increasing(g, 0.5 * theta0, 2.0 * theta0);
  return {theta0, bisect_increasing(g, lo, hi, 1e-14)};
}

Strategy solve_ode(const Environment& env, double theta_start,
                   double action_start, const SolverOptions& opt) {
  const auto& grid = env.domain.grid;
  if (!(theta_start > 0.0) || theta_start > grid.back())
    throw std::domain_error("solve_ode: theta_start outside (0, theta_bar]");
  auto deriv = [&](double th, double a) {
    const double ca = marginal_cost(env, a, th);
    if (!(ca > kSingularFloor))
      throw SingularityError("solve_ode: marginal cost below 1e-14 on the path");
    return eval_benefit_deriv(env, th) / ca;
  };

  std::vector<double> actions(grid.size(),
                              std::numeric_limits<double>::quiet_NaN());
  std::size_t i0 = 0;
  while (i0 < grid.size() && grid[i0] < theta_start * (1.0 - 1e-12)) ++i0;
  if (i0 == grid.size())
    throw std::domain_error("solve_ode: no grid points at or above theta_start");

  double t = theta_start;
  double y = action_start;
  for (std::size_t i = i0; i < grid.size(); ++i) {
    y = rk45_advance(deriv, t, y, grid[i], opt.ode_rel_tol);
    t = grid[i];
    actions[i] = y;
  }
  // grid points below the seed: extend with the local power law
  if (i0 > 0) {
    double p = 1.0;
    if (i0 + 1 < grid.size() && actions[i0] > 0.0 && actions[i0 + 1] > 0.0)
      p = std::log(actions[i0 + 1] / actions[i0]) /
          std::log(grid[i0 + 1] / grid[i0]);
    for (std::size_t i = 0; i < i0; ++i)
      actions[i] = actions[i0] * std::pow(grid[i] / grid[i0], p);
  }
  return Strategy(grid, std::move(actions), Provenance::Ode);
}

Strategy solve_ode(const Environment& env, const SolverOptions& opt) {
  const auto [theta0, a0] = default_ode_seed(env, opt);
  return solve_ode(env, theta0, a0, opt);
}

EquilibriumCostCurve equilibrium_cost(const Environment& env,
                                      const Strategy& strategy) {
  EquilibriumCostCurve curve;
  curve.theta = strategy.knots();
  curve.cost.resize(curve.theta.size());
  for (std::size_t i = 0; i < curve.theta.size(); ++i)
    curve.cost[i] = eval_cost(env, strategy.actions()[i], curve.theta[i]);
  return curve;
}

}  // namespace sigw
