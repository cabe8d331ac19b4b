#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sigwaste/environment.hpp"
#include "sigwaste/equilibrium.hpp"
#include "sigwaste/waste.hpp"

using namespace sigw;

namespace {

Environment exp_strain_env(double stakes = 1.0, double gamma = 1.0,
                           TypeDomain domain = TypeDomain::log_spaced()) {
  Environment env;
  env.benefit = BenefitSpec{stakes, IsoelasticBenefit{1.0}};
  env.cost = MultiplicativeCost{PowerDifficulty{gamma}, ExponentialStrain{}};
  env.domain = std::move(domain);
  return env;
}

}  // namespace

TEST_CASE("pointwise waste ratio") {
  {
    Environment env = isoelastic_environment(1.0, 1.0, 1.0, 1.0);
    const Strategy strat = solve_multiplicative(env);
    CHECK(waste_ratio(env, strat, 0.7) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_THROWS_AS(waste_ratio(env, strat, 0.0), std::domain_error);
  }
  {
    Environment env = isoelastic_environment(1.0, 3.0, 1.0, 2.0);
    const Strategy strat = solve_multiplicative(env);
    CHECK(waste_ratio(env, strat, 0.3) == doctest::Approx(0.75).epsilon(1e-9));
  }
  {
    Environment env = exp_strain_env();
    const Strategy strat = solve_multiplicative(env);
    CHECK(waste_ratio(env, strat, 1.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));
  }
}

TEST_CASE("isoelastic waste constant") {
  CHECK(waste_isoelastic(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(waste_isoelastic(2.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(waste_isoelastic(1.0, 1e6) == doctest::Approx(1e-6).epsilon(1e-9));
  CHECK_THROWS_AS(waste_isoelastic(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(waste_isoelastic(1.0, -1.0), std::domain_error);
}

TEST_CASE("integral form of the waste ratio") {
  CHECK(waste_integral_multiplicative(IsoelasticBenefit{1.0}, PowerStrain{1.0},
                                      0.42) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(waste_integral_multiplicative(IsoelasticBenefit{2.0}, PowerStrain{1.0},
                                      1.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  // exact antiderivative oracle: (1 - e^-theta)/theta at theta = 2
  CHECK(waste_integral_multiplicative(IsoelasticBenefit{1.0},
                                      ExponentialStrain{}, 2.0) ==
        doctest::Approx((1.0 - std::exp(-2.0)) / 2.0).epsilon(1e-9));
}

TEST_CASE("relative elasticity") {
  {
    Environment env = isoelastic_environment(1.0, 2.0, 3.0, 1.0);
    for (double th : {0.01, 0.3, 1.0})
      CHECK(relative_elasticity(env, th) == doctest::Approx(1.5).epsilon(1e-12));
  }
  {
    // rho(theta) = theta by hand differentiation
    Environment env = exp_strain_env();
    CHECK(relative_elasticity(env, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    const double h = 1e-6;
    const double fd =
        -(std::log(std::exp(-(0.5 + h))) - std::log(std::exp(-(0.5 - h)))) /
        (std::log(0.5 + h) - std::log(0.5 - h));
    CHECK(relative_elasticity(env, 0.5) == doctest::Approx(fd).epsilon(1e-5));
  }
  {
    Environment env = isoelastic_environment(1.0, 1.0, 1.0, 1.0);
    CHECK(relative_elasticity(env, 0.9) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(1.0 / (1.0 + relative_elasticity(env, 0.9)) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }
  {
    // tabulated strain falls back to grid log-differences
    std::vector<double> th, sv;
    for (int i = 0; i <= 200; ++i) {
      const double t = std::pow(10.0, -4.0 + 4.0 * i / 200.0);
      th.push_back(t);
      sv.push_back(1.0 / t);
    }
    Environment env = isoelastic_environment(1.0, 1.0, 1.0, 1.0);
    env.cost = MultiplicativeCost{PowerDifficulty{1.0}, TabulatedStrain{th, sv}};
    CHECK(relative_elasticity(env, 0.3) == doctest::Approx(1.0).epsilon(1e-3));
  }
  Environment non_mult;
  non_mult.cost = QuadCubicCost{};
  CHECK_THROWS_AS(relative_elasticity(non_mult, 0.5), std::invalid_argument);
}

TEST_CASE("constant-waste characterization report") {
  {
    const CharacterizationReport r =
        check_constant_waste(isoelastic_environment(1.0, 2.0, 3.0, 1.0));
    CHECK(r.w_constant);
    CHECK(r.rho_constant);
    CHECK(r.biconditional_consistent);
    CHECK(r.w_mean == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(r.w_formula == doctest::Approx(1.0 / 2.5).epsilon(1e-9));
    CHECK(r.w_matches_formula);
  }
  {
    const CharacterizationReport r = check_constant_waste(exp_strain_env());
    CHECK_FALSE(r.w_constant);
    CHECK_FALSE(r.rho_constant);
    CHECK(r.biconditional_consistent);
    for (std::size_t i = 0; i < r.theta.size(); i += 37) {
      const double exact = (1.0 - std::exp(-r.theta[i])) / r.theta[i];
      CHECK(r.w[i] == doctest::Approx(exact).epsilon(1e-8));
    }
  }
  {
    // reparametrized isoelastic: B = t^2, S = t^-4 has rho = 2, W = 1/3
    const CharacterizationReport r =
        check_constant_waste(isoelastic_environment(1.0, 2.0, 4.0, 1.0));
    CHECK(r.w_constant);
    CHECK(r.w_mean == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(r.rho_mean == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("invariance sweep: waste fixed while actions and costs move") {
  Environment base = isoelastic_environment(1.0, 1.0, 1.0, 1.0,
                                            TypeDomain::log_spaced(1.0, 256));
  const std::vector<double> stakes{0.5, 1.0, 2.0, 10.0};
  const std::vector<double> gammas{0.5, 1.0, 2.0, 4.0};
  const InvarianceReport rep = invariance_sweep(base, stakes, gammas);

  CHECK(rep.cells.size() == 16);
  CHECK(rep.max_w_deviation <= 1e-6);
  for (const auto& cell : rep.cells)
    for (double w : cell.w) CHECK(w == doctest::Approx(0.5).epsilon(1e-6));

  double amax = 0.0, amin = 1e300;
  for (const auto& cell : rep.cells) {
    amax = std::max(amax, cell.max_action);
    amin = std::min(amin, cell.max_action);
  }
  CHECK(amax / amin > 2.0);

  // cost scales linearly in stakes: compare s=2 and s=1 cells at gamma=1
  const SweepCell* s1 = nullptr;
  const SweepCell* s2 = nullptr;
  for (const auto& cell : rep.cells) {
    if (cell.gamma == 1.0 && cell.stakes == 1.0) s1 = &cell;
    if (cell.gamma == 1.0 && cell.stakes == 2.0) s2 = &cell;
  }
  REQUIRE(s1 != nullptr);
  REQUIRE(s2 != nullptr);
  for (std::size_t i = 0; i < s1->cost.size(); ++i)
    CHECK(s2->cost[i] == doctest::Approx(2.0 * s1->cost[i]).epsilon(1e-9));

  // identical results on both execution policies
  const InvarianceReport serial = invariance_sweep(base, stakes, gammas, Exec::Serial);
  CHECK(serial.max_w_deviation == rep.max_w_deviation);
  for (std::size_t c = 0; c < rep.cells.size(); ++c) {
    CHECK(serial.cells[c].w == rep.cells[c].w);
    CHECK(serial.cells[c].action == rep.cells[c].action);
    CHECK(serial.cells[c].cost == rep.cells[c].cost);
  }
}

TEST_CASE("waste profile stays inside (0,1) and matches the constant") {
  for (double beta : {0.5, 2.0})
    for (double sigma : {1.0, 3.0})
      for (double s : {1.0, 10.0})
        for (double gamma : {0.5, 2.0}) {
          Environment env = isoelastic_environment(s, beta, sigma, gamma,
                                                   TypeDomain::log_spaced(1.0, 256));
          const Strategy strat = solve_multiplicative(env);
          const WasteProfile wp = waste_profile(env, strat);
          const double target = waste_isoelastic(beta, sigma);
          CHECK(wp.is_constant);
          for (double w : wp.w) {
            CHECK(std::abs(w - target) <= 1e-6);
            CHECK(w > 0.0);
            CHECK(w < 1.0);
          }
        }
  // strictly interior also in the non-constant case
  Environment env = exp_strain_env();
  const WasteProfile wp = waste_profile(env, solve_multiplicative(env));
  CHECK_FALSE(wp.is_constant);
  for (double w : wp.w) {
    CHECK(w > 0.0);
    CHECK(w < 1.0);
  }
}

TEST_CASE("envelope condition holds along solved equilibria") {
  {
    Environment env = isoelastic_environment(1.0, 2.0, 1.0, 2.0);
    const EnvelopeCheck chk = envelope_check(env, solve_multiplicative(env));
    CHECK(chk.max_rel_err <= 1e-4);
  }
  {
    Environment env = exp_strain_env();
    const EnvelopeCheck chk = envelope_check(env, solve_multiplicative(env));
    CHECK(chk.max_rel_err <= 1e-4);
  }
  {
    Environment env;
    env.benefit = BenefitSpec{5.0, IsoelasticBenefit{1.0}};
    env.cost = QuadCubicCost{};
    const double t0 = env.domain.grid.front();
    const EnvelopeCheck chk = envelope_check(env, solve_ode(env, t0, t0));
    CHECK(chk.max_rel_err <= 1e-4);
  }
}
