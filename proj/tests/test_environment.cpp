#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <limits>
#include <vector>

#include "sigwaste/environment.hpp"
#include "sigwaste/rng.hpp"

using namespace sigw;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Environment quadcubic_env(double stakes = 1.0) {
  Environment env;
  env.benefit = BenefitSpec{stakes, IsoelasticBenefit{1.0}};
  env.cost = QuadCubicCost{};
  return env;
}

Environment ratio_env(double stakes = 1.0) {
  Environment env;
  env.benefit = BenefitSpec{stakes, IsoelasticBenefit{1.0}};
  env.cost = RatioCostSpec{};
  return env;
}

Environment mixed_env() {
  Environment env;
  env.benefit = BenefitSpec{1.0, IsoelasticBenefit{1.0}};
  env.cost = MixedIsoelasticCost{{1.0, 1.0}, {2.0, 3.0}, {1.0, 2.0}};
  return env;
}

}  // namespace

TEST_CASE("benefit evaluation") {
  Environment env = isoelastic_environment(1.0, 1.0, 1.0, 1.0);
  CHECK(eval_benefit(env, 0.0) == 0.0);

  Environment env2 = isoelastic_environment(2.0, 3.0, 1.0, 1.0);
  CHECK(eval_benefit(env2, 0.5) == doctest::Approx(0.25).epsilon(1e-15));

  Environment env3;
  env3.benefit = BenefitSpec{1.0, PowerOfCdfBenefit{3, 1.0}};
  CHECK(eval_benefit(env3, 0.5) == doctest::Approx(0.25).epsilon(1e-15));

  CHECK_THROWS_AS(eval_benefit(env, -0.1), std::domain_error);
  CHECK_THROWS_AS(eval_benefit(env, 1.5), std::domain_error);
}

TEST_CASE("cost evaluation and the 0*inf convention") {
  Environment env = isoelastic_environment(1.0, 1.0, 1.0, 2.0);  // D=a^2, S=1/t
  CHECK(eval_cost(env, 0.0, 0.0) == 0.0);
  CHECK(eval_cost(env, 0.0, 0.5) == 0.0);
  CHECK(eval_cost(env, 1.0, 0.0) == kInf);
  CHECK(eval_cost(env, 1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));

  CHECK(eval_cost(quadcubic_env(), 1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eval_cost(quadcubic_env(), 1.0, 0.0) == kInf);
  CHECK(eval_cost(ratio_env(), 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_cost(ratio_env(), 1.0, 0.0) == 1.0);  // finite for this family
  CHECK(eval_cost(mixed_env(), 1.0, 0.0) == kInf);

  Environment exp_env = isoelastic_environment(1.0, 1.0, 1.0, 1.0);
  exp_env.cost = MultiplicativeCost{PowerDifficulty{1.0}, ExponentialStrain{}};
  CHECK(eval_cost(exp_env, 1.0, 0.0) == doctest::Approx(1.0));  // S(0) = 1

  CHECK_THROWS_AS(eval_cost(env, -1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(eval_cost(env, 1.0, 2.0), std::domain_error);
}

TEST_CASE("cost partials at pinned points") {
  Environment env = isoelastic_environment(1.0, 1.0, 1.0, 2.0);
  env.domain = TypeDomain::log_spaced(2.0, 128);
  CHECK(eval_cost_partials(env, 1.0, 2.0).da == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(eval_cost_partials(quadcubic_env(), 1.0, 1.0).da ==
        doctest::Approx(5.0).epsilon(1e-15));
  // c(2+c)/(1+c)^2 at c = a/theta = 1
  CHECK(eval_cost_partials(ratio_env(), 1.0, 1.0).da ==
        doctest::Approx(0.75).epsilon(1e-15));

  CHECK_THROWS_AS(eval_cost_partials(env, 0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(eval_cost_partials(env, 0.5, 0.0), std::domain_error);
}

TEST_CASE("analytic partials agree with central differences") {
  std::vector<Environment> envs{
      isoelastic_environment(1.0, 1.0, 1.0, 2.0),
      isoelastic_environment(2.0, 0.5, 2.0, 1.0),
      quadcubic_env(),
      ratio_env(),
      mixed_env(),
  };
  {
    Environment exp_env = isoelastic_environment(1.0, 1.0, 1.0, 1.5);
    exp_env.cost = MultiplicativeCost{PowerDifficulty{1.5}, ExponentialStrain{}};
    envs.push_back(exp_env);
  }
  Philox2x64 rng(99, 0);
  for (const auto& env : envs) {
    for (int i = 0; i < 100; ++i) {
      // log-uniform interior points
      const double a = std::pow(10.0, -2.0 + 3.0 * rng.next_double());
      const double th = std::pow(10.0, -2.0 + 2.0 * rng.next_double() *
                                             0.99);  // up to ~0.95
      const CostPartials p = eval_cost_partials(env, a, th);
      const double ha = 1e-6 * a;
      const double ht = 1e-6 * th;
      const double fd_a =
          (eval_cost(env, a + ha, th) - eval_cost(env, a - ha, th)) / (2.0 * ha);
      const double fd_t =
          (eval_cost(env, a, th + ht) - eval_cost(env, a, th - ht)) / (2.0 * ht);
      CHECK(p.da == doctest::Approx(fd_a).epsilon(1e-5));
      CHECK(p.dtheta == doctest::Approx(fd_t).epsilon(1e-5));
    }
  }
}

TEST_CASE("zero-action cost is exactly zero on the whole grid") {
  std::vector<Environment> envs{isoelastic_environment(1.0, 2.0, 0.5, 3.0),
                                quadcubic_env(), ratio_env(), mixed_env()};
  for (const auto& env : envs)
    for (double th : env.domain.grid) CHECK(eval_cost(env, 0.0, th) == 0.0);
}

TEST_CASE("validate_assumptions passes on the built-in families") {
  for (const auto& env :
       {isoelastic_environment(1.0, 1.0, 1.0, 1.0),
        isoelastic_environment(2.0, 0.5, 2.0, 4.0), quadcubic_env(), ratio_env(),
        mixed_env()}) {
    const ValidationReport report = validate_assumptions(env);
    CHECK(report.pass);
    for (const auto& check : report.checks) CHECK(check.pass);
  }
  Environment exp_env = isoelastic_environment(1.0, 1.0, 1.0, 1.0);
  exp_env.cost = MultiplicativeCost{PowerDifficulty{2.0}, ExponentialStrain{}};
  CHECK(validate_assumptions(exp_env).pass);
}

TEST_CASE("validate_assumptions flags an increasing strain with a witness") {
  // strain rising in theta reverses the single-crossing condition
  std::vector<double> th, sv;
  for (int i = 0; i <= 32; ++i) {
    const double t = 1e-3 + (1.0 - 1e-3) * i / 32.0;
    th.push_back(t);
    sv.push_back(1.0 + 2.0 * t);
  }
  Environment env;
  env.benefit = BenefitSpec{1.0, IsoelasticBenefit{1.0}};
  env.cost = MultiplicativeCost{PowerDifficulty{2.0}, TabulatedStrain{th, sv}};
  const ValidationReport report = validate_assumptions(env);
  CHECK_FALSE(report.pass);
  bool found = false;
  for (const auto& check : report.checks)
    if (check.name == "C_atheta < 0") {
      found = true;
      CHECK_FALSE(check.pass);
      CHECK(check.worst > 0.0);
      CHECK(check.at_theta > 0.0);
      CHECK(check.at_action > 0.0);
    }
  CHECK(found);
}

TEST_CASE("tabulated benefit tracks its analytic source") {
  std::vector<double> th, bv;
  for (int i = 0; i <= 400; ++i) {
    const double t = std::pow(10.0, -4.0 + 4.0 * i / 400.0);
    th.push_back(t);
    bv.push_back(std::pow(t, 2.0));
  }
  Environment env;
  env.benefit = BenefitSpec{1.5, TabulatedBenefit{th, bv}};
  for (double t : {1e-3, 0.03, 0.4, 0.9}) {
    CHECK(eval_benefit(env, t) == doctest::Approx(1.5 * t * t).epsilon(1e-10));
    CHECK(eval_benefit_deriv(env, t) == doctest::Approx(3.0 * t).epsilon(1e-6));
  }
  CHECK(eval_benefit(env, 0.0) == 0.0);
}

TEST_CASE("type domain grids") {
  const TypeDomain d = TypeDomain::log_spaced(1.0, 1024);
  CHECK(d.grid.size() == 1024);
  CHECK(d.grid.front() == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(d.grid.back() == 1.0);
  for (std::size_t i = 1; i < d.grid.size(); ++i) CHECK(d.grid[i] > d.grid[i - 1]);

  CHECK_THROWS_AS(TypeDomain::log_spaced(std::numeric_limits<double>::infinity(), 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(TypeDomain::from_grid({0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(TypeDomain::from_grid({0.5, 0.5}), std::invalid_argument);
}
