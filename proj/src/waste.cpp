#include "sigwaste/waste.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigwaste/quadrature.hpp"

namespace sigw {

namespace {

void summarize(WasteProfile& p) {
  double sum = 0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double w : p.w) {
    sum += w;
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  p.mean = sum / static_cast<double>(p.w.size());
  p.spread = hi - lo;
  p.is_constant = p.spread <= kConstancyTol;
}

const MultiplicativeCost& require_multiplicative(const Environment& env,
                                                 const char* who) {
  if (const auto* m = std::get_if<MultiplicativeCost>(&env.cost)) return *m;
  throw std::invalid_argument(std::string(who) + ": requires a multiplicative cost");
}

bool has_tabulated_part(const Environment& env, const MultiplicativeCost& m) {
  return std::holds_alternative<TabulatedBenefit>(env.benefit.shape) ||
         std::holds_alternative<TabulatedStrain>(m.strain);
}

}  // namespace

double waste_ratio(const Environment& env, const Strategy& strategy,
                   double theta) {
  if (!(theta > 0.0))
    throw std::domain_error("waste_ratio: undefined at theta = 0");
  const double v = eval_benefit(env, theta);
  if (!(v > 0.0)) throw std::domain_error("waste_ratio: surplus not positive");
  return eval_cost(env, strategy.action(theta), theta) / v;
}

double waste_isoelastic(double beta, double sigma) {
  if (!(beta > 0.0) || !(sigma > 0.0))
    throw std::domain_error("waste_isoelastic: elasticities must be positive");
  return beta / (beta + sigma);
}

double waste_integral_multiplicative(const BenefitShape& shape,
                                     const StrainSpec& strain, double theta,
                                     double quad_rel_tol) {
  if (!(theta > 0.0))
    throw std::domain_error("waste_integral_multiplicative: theta must be positive");
  auto f = [&](double t) { return shape_deriv(shape, t) / strain_value(strain, t); };
  const double integral = integrate_from_zero(f, theta, quad_rel_tol);
  return strain_value(strain, theta) / shape_value(shape, theta) * integral;
}

double relative_elasticity(const Environment& env, double theta) {
  const auto& m = require_multiplicative(env, "relative_elasticity");
  if (!(theta > 0.0))
    throw std::domain_error("relative_elasticity: theta must be positive");
  if (has_tabulated_part(env, m)) {
    // central log-differences on the domain grid
    const auto& g = env.domain.grid;
    if (g.size() < 3)
      throw std::invalid_argument(
          "relative_elasticity: tabulated specs need at least three grid points");
    auto it = std::lower_bound(g.begin(), g.end(), theta);
    std::size_t i = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(it - g.begin(), 1,
                                   static_cast<std::ptrdiff_t>(g.size()) - 2));
    const double lo = g[i - 1], hi = g[i + 1];
    const double dlnS = std::log(strain_value(m.strain, hi)) -
                        std::log(strain_value(m.strain, lo));
    const double dlnV = std::log(eval_benefit(env, hi)) -
                        std::log(eval_benefit(env, lo));
    return -dlnS / dlnV;
  }
  const double vp = eval_benefit_deriv(env, theta);
  if (!(vp > 0.0)) throw std::domain_error("relative_elasticity: V' vanishes");
  return strain_log_deriv(m.strain, theta) * eval_benefit(env, theta) / vp;
}

WasteProfile waste_profile(const Environment& env, const Strategy& strategy,
                           double quad_rel_tol) {
  WasteProfile p;
  p.theta = strategy.knots();
  p.w.resize(p.theta.size());
  for (std::size_t i = 0; i < p.theta.size(); ++i)
    p.w[i] = eval_cost(env, strategy.actions()[i], p.theta[i]) /
             eval_benefit(env, p.theta[i]);
  if (const auto* m = std::get_if<MultiplicativeCost>(&env.cost))
    p.w[0] = waste_integral_multiplicative(env.benefit.shape, m->strain,
                                           p.theta[0], quad_rel_tol);
  summarize(p);
  return p;
}

CharacterizationReport check_constant_waste(const Environment& env, double tol) {
  const auto& m = require_multiplicative(env, "check_constant_waste");
  CharacterizationReport r;
  r.theta = env.domain.grid;
  const auto F =
      cumulative_base_integral(env.benefit.shape, m.strain, r.theta);
  r.w.resize(r.theta.size());
  r.rho.resize(r.theta.size());
  double wlo = std::numeric_limits<double>::infinity(), whi = -wlo;
  double rlo = wlo, rhi = -wlo;
  double wsum = 0, rsum = 0;
  for (std::size_t i = 0; i < r.theta.size(); ++i) {
    r.w[i] = strain_value(m.strain, r.theta[i]) /
             shape_value(env.benefit.shape, r.theta[i]) * F[i];
    r.rho[i] = relative_elasticity(env, r.theta[i]);
    wsum += r.w[i];
    rsum += r.rho[i];
    wlo = std::min(wlo, r.w[i]);
    whi = std::max(whi, r.w[i]);
    rlo = std::min(rlo, r.rho[i]);
    rhi = std::max(rhi, r.rho[i]);
  }
  const auto n = static_cast<double>(r.theta.size());
  r.w_mean = wsum / n;
  r.rho_mean = rsum / n;
  r.w_spread = whi - wlo;
  r.rho_spread = rhi - rlo;
  r.w_constant = r.w_spread <= tol;
  r.rho_constant = r.rho_spread <= tol;
  r.biconditional_consistent = r.w_constant == r.rho_constant;
  r.w_formula = 1.0 / (1.0 + r.rho_mean);
  r.w_matches_formula = std::abs(r.w_mean - r.w_formula) <= tol;
  return r;
}

InvarianceReport invariance_sweep(const Environment& env,
                                  const std::vector<double>& stakes,
                                  const std::vector<double>& gammas,
                                  Exec exec) {
  const auto& base = require_multiplicative(env, "invariance_sweep");
  if (stakes.empty() || gammas.empty())
    throw std::invalid_argument("invariance_sweep: empty sweep lists");

  InvarianceReport report;
  report.theta = env.domain.grid;
  const std::ptrdiff_t cells =
      static_cast<std::ptrdiff_t>(stakes.size() * gammas.size());
  report.cells.resize(cells);

  auto run_cell = [&](std::ptrdiff_t c) {
    const double s = stakes[static_cast<std::size_t>(c) / gammas.size()];
    const double g = gammas[static_cast<std::size_t>(c) % gammas.size()];
    Environment e = env;
    e.benefit.stakes = s;
    e.cost = MultiplicativeCost{PowerDifficulty{g}, base.strain};
    const Strategy strat = solve_multiplicative(e);
    SweepCell& cell = report.cells[static_cast<std::size_t>(c)];
    cell.stakes = s;
    cell.gamma = g;
    cell.action = strat.actions();
    cell.max_action = cell.action.back();
    cell.cost = equilibrium_cost(e, strat).cost;
    cell.w = waste_profile(e, strat).w;
  };

  if (exec == Exec::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t c = 0; c < cells; ++c) run_cell(c);
  } else {
    for (std::ptrdiff_t c = 0; c < cells; ++c) run_cell(c);
  }

  for (std::size_t i = 0; i < report.theta.size(); ++i) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& cell : report.cells) {
      lo = std::min(lo, cell.w[i]);
      hi = std::max(hi, cell.w[i]);
    }
    report.max_w_deviation = std::max(report.max_w_deviation, hi - lo);
  }
  return report;
}

EnvelopeCheck envelope_check(const Environment& env, const Strategy& strategy) {
  const auto& th = strategy.knots();
  const auto& a = strategy.actions();
  std::vector<double> u(th.size());
  for (std::size_t i = 0; i < th.size(); ++i)
    u[i] = eval_benefit(env, th[i]) - eval_cost(env, a[i], th[i]);

  EnvelopeCheck out;
  double scale = 0.0;
  std::vector<double> exact(th.size());
  for (std::size_t i = 1; i + 1 < th.size(); ++i) {
    exact[i] = -eval_cost_partials(env, a[i], th[i]).dtheta;
    scale = std::max(scale, std::abs(exact[i]));
  }
  for (std::size_t i = 1; i + 1 < th.size(); ++i) {
    const double h1 = th[i] - th[i - 1];
    const double h2 = th[i + 1] - th[i];
    // three-point nonuniform derivative, exact for quadratics
    const double du = (h1 * h1 * u[i + 1] - h2 * h2 * u[i - 1] +
                       (h2 * h2 - h1 * h1) * u[i]) /
                      (h1 * h2 * (h1 + h2));
    const double err =
        std::abs(du - exact[i]) / std::max(std::abs(exact[i]), 1e-12 * scale);
    if (err > out.max_rel_err) {
      out.max_rel_err = err;
      out.worst_theta = th[i];
    }
  }
  return out;
}

}  // namespace sigw
