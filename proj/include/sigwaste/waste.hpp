#pragma once

#include <cstddef>
#include <vector>

#include "sigwaste/environment.hpp"
#include "sigwaste/equilibrium.hpp"
#include "sigwaste/exec.hpp"

namespace sigw {

// Waste ratio sampled on the domain grid: cost of the equilibrium action over
// the surplus from costless revelation.
struct WasteProfile {
  std::vector<double> theta;
  std::vector<double> w;
  double mean = 0;
  double spread = 0;  // max - min over the grid
  bool is_constant = false;  // spread <= 1e-6
};

inline constexpr double kConstancyTol = 1e-6;

// C(A(theta), theta) / V(theta); theta must be positive with positive surplus.
double waste_ratio(const Environment&, const Strategy&, double theta);

// beta/(beta+sigma): the isoelastic constant, independent of type, stakes,
// and difficulty.
double waste_isoelastic(double beta, double sigma);

// W(theta) = S(theta)/B(theta) * integral_0^theta B'/S. No strategy or
// difficulty input: both cancel.
double waste_integral_multiplicative(const BenefitShape&, const StrainSpec&,
                                     double theta, double quad_rel_tol = 1e-12);

// rho(theta) = (-S'/S) * (V/V'). Multiplicative costs only; analytic for
// parametric families, central log-differences on the grid for tabulated
// ones.
double relative_elasticity(const Environment&, double theta);

// Grid waste profile. For multiplicative costs the first grid point is
// computed from the integral form rather than the ratio of two near-zero
// solver outputs.
WasteProfile waste_profile(const Environment&, const Strategy&,
                           double quad_rel_tol = 1e-12);

struct CharacterizationReport {
  std::vector<double> theta;
  std::vector<double> w;
  std::vector<double> rho;
  double w_mean = 0, w_spread = 0;
  double rho_mean = 0, rho_spread = 0;
  bool w_constant = false;
  bool rho_constant = false;
  bool biconditional_consistent = false;  // w_constant == rho_constant
  double w_formula = 0;                   // 1/(1 + mean rho)
  bool w_matches_formula = false;
};

// Tests both sides of the constant-waste characterization on the grid:
// whether W is constant, whether rho is constant, and whether W = 1/(1+rho).
CharacterizationReport check_constant_waste(const Environment&,
                                            double tol = kConstancyTol);

struct SweepCell {
  double stakes = 0;
  double gamma = 0;
  double max_action = 0;
  std::vector<double> w;
  std::vector<double> action;
  std::vector<double> cost;
};

struct InvarianceReport {
  std::vector<double> theta;
  std::vector<SweepCell> cells;
  double max_w_deviation = 0;  // max over grid of (max-min across cells)
};

// Re-solves the equilibrium for every (stakes, gamma) combination and reports
// how much the waste profile moves. Cells are independent; Exec::Parallel
// distributes them across threads with bit-identical results.
InvarianceReport invariance_sweep(const Environment&,
                                  const std::vector<double>& stakes,
                                  const std::vector<double>& gammas,
                                  Exec exec = Exec::Parallel);

struct EnvelopeCheck {
  double max_rel_err = 0;
  double worst_theta = 0;
};

// Compares the numerical derivative of the equilibrium payoff along the grid
// against -C_theta(A(theta), theta) at interior grid points.
EnvelopeCheck envelope_check(const Environment&, const Strategy&);

}  // namespace sigw
