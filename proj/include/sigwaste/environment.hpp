#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sigwaste/pchip.hpp"

namespace sigw {

// ---------------------------------------------------------------------------
// Benefit: V(theta) = stakes * B(theta), with B(0) = 0 and B increasing.
// ---------------------------------------------------------------------------

struct IsoelasticBenefit {
  double beta = 1.0;  // B(t) = t^beta
};

struct PowerOfCdfBenefit {
  int n = 2;       // contestants; B(t) = (t^k)^(n-1)
  double k = 1.0;  // type-distribution exponent
};

struct TabulatedBenefit {
  TabulatedBenefit(const std::vector<double>& theta,
                   const std::vector<double>& value);
  LogLogInterp curve;  // power-law extension below the first knot gives B(0)=0
};

using BenefitShape =
    std::variant<IsoelasticBenefit, PowerOfCdfBenefit, TabulatedBenefit>;

struct BenefitSpec {
  double stakes = 1.0;
  BenefitShape shape = IsoelasticBenefit{};
};

// ---------------------------------------------------------------------------
// Cost: multiplicative difficulty * strain, or one of the non-multiplicative
// families where waste turns out to depend on stakes.
// ---------------------------------------------------------------------------

struct PowerDifficulty {
  double gamma = 1.0;  // D(a) = a^gamma
};

struct TabulatedDifficulty {
  TabulatedDifficulty(const std::vector<double>& action,
                      const std::vector<double>& value);
  LogLogInterp curve;
};

using DifficultySpec = std::variant<PowerDifficulty, TabulatedDifficulty>;

struct PowerStrain {
  double sigma = 1.0;  // S(t) = t^-sigma, infinite at t = 0
};

struct ExponentialStrain {};  // S(t) = exp(-t)

struct TabulatedStrain {
  // Not validated for monotonicity at construction; validate_assumptions
  // reports violations with a witness instead.
  TabulatedStrain(const std::vector<double>& theta,
                  const std::vector<double>& value);
  LogLogInterp curve;
};

using StrainSpec = std::variant<PowerStrain, ExponentialStrain, TabulatedStrain>;

struct MultiplicativeCost {
  DifficultySpec difficulty = PowerDifficulty{};
  StrainSpec strain = PowerStrain{};
};

struct QuadCubicCost {};  // C(a,t) = a^2/t + a^3/t^2

struct RatioCostSpec {};  // C(a,t) = a^2/(t+a)

struct MixedIsoelasticCost {
  std::vector<double> weights;
  std::vector<double> gammas;
  std::vector<double> sigmas;  // C(a,t) = sum_i w_i a^g_i t^-s_i
};

using CostSpec = std::variant<MultiplicativeCost, QuadCubicCost, RatioCostSpec,
                              MixedIsoelasticCost>;

// ---------------------------------------------------------------------------
// Type domain: [0, theta_bar] with a strictly increasing evaluation grid in
// (0, theta_bar]. Solvers never evaluate at theta = 0.
// ---------------------------------------------------------------------------

struct TypeDomain {
  double theta_bar = 1.0;
  std::vector<double> grid;

  // log-spaced from theta_bar*span up to theta_bar
  static TypeDomain log_spaced(double theta_bar = 1.0, std::size_t points = 1024,
                               double span = 1e-6);
  static TypeDomain from_grid(std::vector<double> grid);
};

struct Environment {
  BenefitSpec benefit{};
  CostSpec cost = MultiplicativeCost{};
  TypeDomain domain = TypeDomain::log_spaced();
};

// Convenience builder for the workhorse family: B=t^beta, S=t^-sigma,
// D=a^gamma.
Environment isoelastic_environment(double stakes, double beta, double sigma,
                                   double gamma,
                                   TypeDomain domain = TypeDomain::log_spaced());

// --- primitive evaluation -------------------------------------------------

double shape_value(const BenefitShape&, double theta);
double shape_deriv(const BenefitShape&, double theta);

double strain_value(const StrainSpec&, double theta);  // may be +inf at 0
double strain_deriv(const StrainSpec&, double theta);  // theta > 0
double strain_log_deriv(const StrainSpec&, double theta);  // -S'/S

double difficulty_value(const DifficultySpec&, double action);
double difficulty_deriv(const DifficultySpec&, double action);
// Inverts the increasing map D; analytic for the power family, bracketed
// bisection otherwise. Throws InversionError when bracketing fails.
double difficulty_invert(const DifficultySpec&, double y, double rel_tol = 1e-10);

bool is_multiplicative(const CostSpec&);

// --- environment operations ------------------------------------------------

double eval_benefit(const Environment&, double theta);
double eval_benefit_deriv(const Environment&, double theta);

// Returns 0 at action 0 for every theta (the 0 * inf convention at the
// singular corner), +inf where type 0 faces prohibitive costs.
double eval_cost(const Environment&, double action, double theta);

struct CostPartials {
  double da = 0;      // dC/da
  double dtheta = 0;  // dC/dtheta
};

// Analytic for built-in families; central finite differences with step
// h = max(1e-6, 1e-6*|x|) for tabulated components. Requires action > 0,
// theta > 0.
CostPartials eval_cost_partials(const Environment&, double action, double theta);

struct CheckResult {
  std::string name;
  bool pass = true;
  double worst = 0;      // most violating value observed
  double at_action = 0;  // witness
  double at_theta = 0;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool pass = true;
};

// Checks the maintained assumptions on a product grid: V(0)=0, V'>0,
// C(0,theta)=0, C_a>0, and the single-crossing condition C_ath<0 via a
// four-point finite-difference cross partial. Diagnostic only: never throws
// on violations.
ValidationReport validate_assumptions(const Environment&,
                                      std::span<const double> actions = {});

}  // namespace sigw
