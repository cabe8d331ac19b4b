#pragma once

#include <cstddef>
#include <vector>

#include "sigwaste/environment.hpp"
#include "sigwaste/pchip.hpp"

namespace sigw {

enum class Provenance { ClosedForm, Integral, Ode };

struct SolverOptions {
  double quad_rel_tol = 1e-12;  // per-panel quadrature tolerance
  double root_rel_tol = 1e-10;  // difficulty inversion tolerance
  double ode_rel_tol = 1e-9;    // adaptive Runge-Kutta tolerance
};

// A solved separating strategy: strictly increasing actions tabulated on the
// domain grid. Between knots the curve is interpolated monotonically in
// log-log space (exact for the power-law solutions this model produces); at
// theta = 0 the action is 0.
class Strategy {
 public:
  Strategy(std::vector<double> theta, std::vector<double> action,
           Provenance provenance);

  double action(double theta) const;
  double action_deriv(double theta) const;

  const std::vector<double>& knots() const { return theta_; }
  const std::vector<double>& actions() const { return action_; }
  Provenance provenance() const { return provenance_; }

 private:
  std::vector<double> theta_, action_;
  LogLogInterp interp_;
  Provenance provenance_;
};

struct ClosedFormPoint {
  double action = 0;
  double cost = 0;
};

// The fully isoelastic benchmark: B=t^beta, S=t^-sigma, D=a^gamma,
// action (s*beta/(beta+sigma))^(1/gamma) * t^((beta+sigma)/gamma) and cost
// s*beta/(beta+sigma) * t^beta.
ClosedFormPoint closed_form_isoelastic(double stakes, double beta, double sigma,
                                       double gamma, double theta);

// Exact construction for multiplicative costs: cumulative quadrature of
// stakes * B'/S from zero, then inversion of the difficulty map. Avoids the
// singular lower boundary entirely.
Strategy solve_multiplicative(const Environment&, const SolverOptions& = {});

// Direct adaptive Runge-Kutta integration of A' = V'/C_a(A, theta) from a
// seed near the lower boundary. Works for any cost family satisfying the
// maintained assumptions; the default seed uses a quadrature bootstrap for
// multiplicative costs and the local power-law ansatz otherwise. Throws
// SingularityError if C_a falls below 1e-14 along the path.
Strategy solve_ode(const Environment&, const SolverOptions& = {});
Strategy solve_ode(const Environment&, double theta_start, double action_start,
                   const SolverOptions& = {});

// Seed used by the one-argument solve_ode overload, exposed for tests.
std::pair<double, double> default_ode_seed(const Environment&,
                                           const SolverOptions& = {});

struct EquilibriumCostCurve {
  std::vector<double> theta;
  std::vector<double> cost;
};

EquilibriumCostCurve equilibrium_cost(const Environment&, const Strategy&);

// Cumulative base integral F(theta_i) = integral_0^theta_i B'/S, shared by
// the multiplicative solver and the waste module (stakes excluded).
std::vector<double> cumulative_base_integral(const BenefitShape&,
                                             const StrainSpec&,
                                             const std::vector<double>& grid,
                                             double quad_rel_tol = 1e-12);

}  // namespace sigw
