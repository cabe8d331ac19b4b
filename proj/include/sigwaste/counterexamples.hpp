#pragma once

#include <span>
#include <vector>

#include "sigwaste/environment.hpp"

namespace sigw {

// The non-multiplicative families with constant-in-type waste that moves
// with stakes. Each family pins its linear equilibrium A = c(s)*theta by a
// scalar coefficient equation.
struct CoefficientSolve {
  double stakes = 0;
  double c = 0;
  double residual = 0;  // |defining equation| at the root
};

// Unique positive root of 2c^2 + 3c^3 = s (quadratic-cubic cost family).
CoefficientSolve cubic_coefficient(double s);

// Unique positive root of c^2(2+c)/(1+c)^2 = s (ratio cost family).
CoefficientSolve ratio_coefficient(double s);

// Waste for the quadratic-cubic family: (1+c)/(2+3c), decreasing in s with
// range (1/3, 1/2).
double waste_decreasing(double s);

// Waste for the ratio family: (1+c)/(2+c), increasing in s with range
// (1/2, 1).
double waste_increasing(double s);

struct MixedResult {
  double alpha = 0;  // common exponent (beta+sigma_i)/gamma_i
  double c = 0;      // coefficient of A = c*theta^alpha
  double waste = 0;
  double residual = 0;
  // true when all gamma_i coincide: the environment is effectively
  // isoelastic and waste reduces to beta/(beta+sigma)
  bool degenerate_isoelastic = false;
};

// Mixed-isoelastic cost sum_i w_i a^g_i t^-s_i with benefit s*t^beta. Requires
// (beta+sigma_i)/gamma_i constant across terms (RatioConditionError
// otherwise); solves alpha * sum_i w_i g_i c^g_i = s*beta and evaluates the
// closed-form waste.
MixedResult mixed_isoelastic(std::span<const double> weights,
                             std::span<const double> gammas,
                             std::span<const double> sigmas, double beta,
                             double s);

enum class CounterexampleFamily { QuadCubic, Ratio };

// -dlnC(a,theta)/dlnV(theta) at a fixed action, with V = s*theta. Varies with
// theta for both families even though their equilibrium waste is constant.
double elasticity_diagnostic(CounterexampleFamily, double action, double theta);

struct CrosscheckRow {
  double s = 0;
  double c = 0;
  double residual = 0;
  double w_closed = 0;
  double w_grid_mean = 0;
  double w_grid_spread = 0;
  double ic_gain = 0;
  bool ic_pass = false;
  bool w_constant = false;
};

struct CrosscheckReport {
  CounterexampleFamily family{};
  std::vector<CrosscheckRow> rows;
  bool all_ic_pass = true;
  bool all_constant = true;
  bool monotone_as_expected = true;  // decreasing (QuadCubic) / increasing (Ratio)
};

// For each stakes value: solves the equilibrium by direct ODE integration,
// verifies incentive compatibility, checks that the grid waste is constant in
// type and matches the closed form, and confirms the direction of the stakes
// effect across the list.
CrosscheckReport crosscheck_nonmultiplicative(CounterexampleFamily,
                                              std::span<const double> stakes,
                                              std::size_t type_points = 256);

}  // namespace sigw
