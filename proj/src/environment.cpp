#include "sigwaste/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigwaste/rootfind.hpp"

namespace sigw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double fd_step(double x) { return std::max(1e-6, 1e-6 * std::abs(x)); }

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

std::vector<double> log_points(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace

TabulatedBenefit::TabulatedBenefit(const std::vector<double>& theta,
                                   const std::vector<double>& value)
    : curve(theta, value) {
  for (std::size_t i = 1; i < value.size(); ++i)
    if (!(value[i] > value[i - 1]))
      throw std::invalid_argument("TabulatedBenefit: values must be strictly increasing");
}

TabulatedDifficulty::TabulatedDifficulty(const std::vector<double>& action,
                                         const std::vector<double>& value)
    : curve(action, value) {
  for (std::size_t i = 1; i < value.size(); ++i)
    if (!(value[i] > value[i - 1]))
      throw std::invalid_argument("TabulatedDifficulty: values must be strictly increasing");
}

TabulatedStrain::TabulatedStrain(const std::vector<double>& theta,
                                 const std::vector<double>& value)
    : curve(theta, value) {}

TypeDomain TypeDomain::log_spaced(double theta_bar, std::size_t points,
                                  double span) {
  require_positive(theta_bar, "theta_bar");
  if (!std::isfinite(theta_bar))
    throw std::invalid_argument("TypeDomain: grids need a finite theta_bar");
  if (points < 2) throw std::invalid_argument("TypeDomain: need at least two grid points");
  if (!(span > 0.0 && span < 1.0)) throw std::invalid_argument("TypeDomain: bad span");
  TypeDomain d;
  d.theta_bar = theta_bar;
  d.grid = log_points(theta_bar * span, theta_bar, points);
  return d;
}

TypeDomain TypeDomain::from_grid(std::vector<double> grid) {
  if (grid.size() < 2) throw std::invalid_argument("TypeDomain: need at least two grid points");
  if (!(grid.front() > 0.0))
    throw std::invalid_argument("TypeDomain: first grid point must be positive");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("TypeDomain: grid not strictly increasing");
  TypeDomain d;
  d.theta_bar = grid.back();
  d.grid = std::move(grid);
  return d;
}

Environment isoelastic_environment(double stakes, double beta, double sigma,
                                   double gamma, TypeDomain domain) {
  require_positive(stakes, "stakes");
  require_positive(beta, "beta");
  require_positive(sigma, "sigma");
  require_positive(gamma, "gamma");
  Environment env;
  env.benefit = BenefitSpec{stakes, IsoelasticBenefit{beta}};
  env.cost = MultiplicativeCost{PowerDifficulty{gamma}, PowerStrain{sigma}};
  env.domain = std::move(domain);
  return env;
}

double shape_value(const BenefitShape& shape, double theta) {
  return std::visit(
      overloaded{
          [&](const IsoelasticBenefit& b) { return std::pow(theta, b.beta); },
          [&](const PowerOfCdfBenefit& b) {
            return std::pow(theta, b.k * (b.n - 1));
          },
          [&](const TabulatedBenefit& b) { return b.curve.value(theta); }},
      shape);
}

double shape_deriv(const BenefitShape& shape, double theta) {
  return std::visit(
      overloaded{
          [&](const IsoelasticBenefit& b) {
            return b.beta * std::pow(theta, b.beta - 1.0);
          },
          [&](const PowerOfCdfBenefit& b) {
            const double e = b.k * (b.n - 1);
            return e * std::pow(theta, e - 1.0);
          },
          [&](const TabulatedBenefit& b) { return b.curve.derivative(theta); }},
      shape);
}

double strain_value(const StrainSpec& s, double theta) {
  return std::visit(
      overloaded{[&](const PowerStrain& p) { return std::pow(theta, -p.sigma); },
                 [&](const ExponentialStrain&) { return std::exp(-theta); },
                 [&](const TabulatedStrain& t) { return t.curve.value(theta); }},
      s);
}

double strain_deriv(const StrainSpec& s, double theta) {
  return std::visit(
      overloaded{[&](const PowerStrain& p) {
                   return -p.sigma * std::pow(theta, -p.sigma - 1.0);
                 },
                 [&](const ExponentialStrain&) { return -std::exp(-theta); },
                 [&](const TabulatedStrain& t) {
                   return t.curve.derivative(theta);
                 }},
      s);
}

double strain_log_deriv(const StrainSpec& s, double theta) {
  return std::visit(
      overloaded{[&](const PowerStrain& p) { return p.sigma / theta; },
                 [&](const ExponentialStrain&) { return 1.0; },
                 [&](const TabulatedStrain& t) {
                   return -t.curve.derivative(theta) / t.curve.value(theta);
                 }},
      s);
}

double difficulty_value(const DifficultySpec& d, double action) {
  return std::visit(
      overloaded{[&](const PowerDifficulty& p) { return std::pow(action, p.gamma); },
                 [&](const TabulatedDifficulty& t) {
                   return action == 0.0 ? 0.0 : t.curve.value(action);
                 }},
      d);
}

double difficulty_deriv(const DifficultySpec& d, double action) {
  return std::visit(
      overloaded{[&](const PowerDifficulty& p) {
                   return p.gamma * std::pow(action, p.gamma - 1.0);
                 },
                 [&](const TabulatedDifficulty& t) {
                   return t.curve.derivative(action);
                 }},
      d);
}

double difficulty_invert(const DifficultySpec& d, double y, double rel_tol) {
  if (y < 0.0) throw InversionError("difficulty_invert: negative target");
  if (y == 0.0) return 0.0;
  if (const auto* p = std::get_if<PowerDifficulty>(&d))
    return std::pow(y, 1.0 / p->gamma);
  const auto& t = std::get<TabulatedDifficulty>(d);
  auto g = [&](double a) { return t.curve.value(a) - y; };
  auto [lo, hi] = bracket_increasing(g, t.curve.x_front(), t.curve.x_back());
  return bisect_increasing(g, lo, hi, rel_tol);
}

bool is_multiplicative(const CostSpec& c) {
  return std::holds_alternative<MultiplicativeCost>(c);
}

namespace {

void check_theta_domain(const Environment& env, double theta) {
  const double slack = 1e-12 * env.domain.theta_bar;
  if (theta < 0.0 || theta > env.domain.theta_bar + slack)
    throw std::domain_error("theta outside [0, theta_bar]");
}

}  // namespace

double eval_benefit(const Environment& env, double theta) {
  check_theta_domain(env, theta);
  if (theta == 0.0) return 0.0;
  return env.benefit.stakes * shape_value(env.benefit.shape, theta);
}

double eval_benefit_deriv(const Environment& env, double theta) {
  check_theta_domain(env, theta);
  return env.benefit.stakes * shape_deriv(env.benefit.shape, theta);
}

double eval_cost(const Environment& env, double action, double theta) {
  check_theta_domain(env, theta);
  if (action < 0.0) throw std::domain_error("action must be nonnegative");
  if (action == 0.0) return 0.0;  // 0 * inf convention at the singular corner
  return std::visit(
      overloaded{
          [&](const MultiplicativeCost& m) {
            return difficulty_value(m.difficulty, action) *
                   strain_value(m.strain, theta);
          },
          [&](const QuadCubicCost&) {
            if (theta == 0.0) return kInf;
            return action * action / theta +
                   action * action * action / (theta * theta);
          },
          [&](const RatioCostSpec&) { return action * action / (theta + action); },
          [&](const MixedIsoelasticCost& m) {
            if (theta == 0.0) return kInf;
            double c = 0.0;
            for (std::size_t i = 0; i < m.weights.size(); ++i)
              c += m.weights[i] * std::pow(action, m.gammas[i]) *
                   std::pow(theta, -m.sigmas[i]);
            return c;
          }},
      env.cost);
}

CostPartials eval_cost_partials(const Environment& env, double action,
                                double theta) {
  check_theta_domain(env, theta);
  if (!(action > 0.0) || !(theta > 0.0))
    throw std::domain_error("eval_cost_partials: requires action > 0, theta > 0");
  return std::visit(
      overloaded{
          [&](const MultiplicativeCost& m) {
            CostPartials p;
            if (std::holds_alternative<TabulatedDifficulty>(m.difficulty)) {
              const double h = std::min(fd_step(action), 0.5 * action);
              p.da = (eval_cost(env, action + h, theta) -
                      eval_cost(env, action - h, theta)) /
                     (2.0 * h);
            } else {
              p.da = difficulty_deriv(m.difficulty, action) *
                     strain_value(m.strain, theta);
            }
            if (std::holds_alternative<TabulatedStrain>(m.strain)) {
              const double h = std::min(fd_step(theta), 0.5 * theta);
              p.dtheta = (eval_cost(env, action, theta + h) -
                          eval_cost(env, action, theta - h)) /
                         (2.0 * h);
            } else {
              p.dtheta = difficulty_value(m.difficulty, action) *
                         strain_deriv(m.strain, theta);
            }
            return p;
          },
          [&](const QuadCubicCost&) {
            CostPartials p;
            p.da = 2.0 * action / theta +
                   3.0 * action * action / (theta * theta);
            p.dtheta = -action * action / (theta * theta) -
                       2.0 * action * action * action / (theta * theta * theta);
            return p;
          },
          [&](const RatioCostSpec&) {
            CostPartials p;
            const double den = (theta + action) * (theta + action);
            p.da = action * (2.0 * theta + action) / den;
            p.dtheta = -action * action / den;
            return p;
          },
          [&](const MixedIsoelasticCost& m) {
            CostPartials p;
            for (std::size_t i = 0; i < m.weights.size(); ++i) {
              const double ag = std::pow(action, m.gammas[i]);
              const double ts = std::pow(theta, -m.sigmas[i]);
              p.da += m.weights[i] * m.gammas[i] * ag / action * ts;
              p.dtheta -= m.weights[i] * m.sigmas[i] * ag * ts / theta;
            }
            return p;
          }},
      env.cost);
}

ValidationReport validate_assumptions(const Environment& env,
                                      std::span<const double> actions) {
  std::vector<double> default_actions;
  if (actions.empty()) {
    default_actions = log_points(1e-3, 10.0, 48);
    actions = default_actions;
  }
  // restrict to types where the finite-difference probes stay interior
  std::vector<double> thetas;
  const double lo = std::max(1e-3 * env.domain.theta_bar, env.domain.grid.front());
  const double hi = env.domain.theta_bar * (1.0 - 5e-4);
  for (std::size_t i = 0; i < env.domain.grid.size();
       i += std::max<std::size_t>(1, env.domain.grid.size() / 48))
    if (env.domain.grid[i] >= lo && env.domain.grid[i] <= hi)
      thetas.push_back(env.domain.grid[i]);
  if (thetas.empty() || thetas.back() < 0.99 * hi) thetas.push_back(hi);

  ValidationReport report;
  auto add = [&](CheckResult r) {
    report.pass = report.pass && r.pass;
    report.checks.push_back(std::move(r));
  };

  {
    CheckResult r;
    r.name = "V(0) = 0";
    r.worst = eval_benefit(env, 0.0);
    r.pass = r.worst == 0.0;
    add(r);
  }
  {
    CheckResult r;
    r.name = "V' > 0";
    r.worst = kInf;
    for (double th : thetas) {
      const double v = eval_benefit_deriv(env, th);
      if (v < r.worst) {
        r.worst = v;
        r.at_theta = th;
      }
    }
    r.pass = r.worst > 0.0;
    add(r);
  }
  {
    CheckResult r;
    r.name = "C(0, theta) = 0";
    for (double th : thetas) {
      const double c = std::abs(eval_cost(env, 0.0, th));
      if (c > r.worst) {
        r.worst = c;
        r.at_theta = th;
      }
    }
    r.pass = r.worst == 0.0;
    add(r);
  }
  {
    CheckResult r;
    r.name = "C_a > 0";
    r.worst = kInf;
    for (double a : actions)
      for (double th : thetas) {
        const double ca = eval_cost_partials(env, a, th).da;
        if (ca < r.worst) {
          r.worst = ca;
          r.at_action = a;
          r.at_theta = th;
        }
      }
    r.pass = r.worst > 0.0;
    add(r);
  }
  {
    CheckResult r;
    r.name = "C_atheta < 0";
    r.worst = -kInf;
    for (double a : actions)
      for (double th : thetas) {
        // wider relative steps than the first-derivative probes: the
        // four-point stencil divides by 4*ha*ht and needs the headroom
        const double ha = std::max(1e-4 * a, 1e-9);
        const double ht = std::min(std::max(1e-4 * th, 1e-9), 0.25 * th);
        const double cross =
            (eval_cost(env, a + ha, th + ht) - eval_cost(env, a + ha, th - ht) -
             eval_cost(env, a - ha, th + ht) + eval_cost(env, a - ha, th - ht)) /
            (4.0 * ha * ht);
        if (cross > r.worst) {
          r.worst = cross;
          r.at_action = a;
          r.at_theta = th;
        }
      }
    r.pass = r.worst < 0.0;
    add(r);
  }
  return report;
}

}  // namespace sigw
