#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <limits>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "sigwaste/environment.hpp"
#include "sigwaste/equilibrium.hpp"
#include "sigwaste/ic.hpp"

using namespace sigw;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// solve on the 4x-refined candidate grid so the verifier never interpolates
Strategy refined_solve(const Environment& env) {
  return solve_multiplicative(env);
}

Environment iso_candidates(double s, double beta, double sigma, double gamma,
                           std::size_t type_points = 128) {
  return isoelastic_environment(s, beta, sigma, gamma,
                                candidate_domain(1.0, type_points));
}

}  // namespace

TEST_CASE("best response sits on the diagonal for a solved equilibrium") {
  Environment env = iso_candidates(1.0, 1.0, 1.0, 1.0);
  const Strategy strat = refined_solve(env);
  const auto& knots = strat.knots();
  const BestResponse br = best_response(env, strat, 0.5, knots);
  CHECK(br.gain <= 1e-8);
  // argmax within one grid step of the truthful candidate
  std::size_t nearest = 0;
  for (std::size_t j = 0; j < knots.size(); ++j)
    if (std::abs(knots[j] - 0.5) < std::abs(knots[nearest] - 0.5)) nearest = j;
  const double step = knots[nearest + 1] - knots[nearest - 1];
  CHECK(std::abs(br.candidate - 0.5) <= step);
}

TEST_CASE("best response detects a perturbed strategy") {
  Environment env = iso_candidates(1.0, 1.0, 1.0, 1.0);
  const Strategy good = refined_solve(env);
  std::vector<double> cubed(good.knots().size());
  for (std::size_t i = 0; i < cubed.size(); ++i)
    cubed[i] = std::pow(good.knots()[i], 3.0);
  const Strategy perturbed(good.knots(), cubed, Provenance::ClosedForm);
  double max_gain = 0.0;
  for (double th : {0.25, 0.5, 1.0})
    max_gain = std::max(
        max_gain, best_response(env, perturbed, th, perturbed.knots()).gain);
  CHECK(max_gain > 1e-3);
}

TEST_CASE("best response on the linear stakes-dependent equilibrium") {
  Environment env;
  env.benefit = BenefitSpec{5.0, IsoelasticBenefit{1.0}};
  env.cost = QuadCubicCost{};
  env.domain = candidate_domain(1.0, 128);
  const double t0 = env.domain.grid.front();
  const Strategy strat = solve_ode(env, t0, t0);  // A = theta, c(5) = 1
  const auto& knots = strat.knots();
  const BestResponse br = best_response(env, strat, 0.25, knots);
  CHECK(br.gain <= 1e-6 * 5.0);
  std::size_t nearest = 0;
  for (std::size_t j = 0; j < knots.size(); ++j)
    if (std::abs(knots[j] - 0.25) < std::abs(knots[nearest] - 0.25)) nearest = j;
  CHECK(std::abs(br.candidate - 0.25) <= knots[nearest + 1] - knots[nearest - 1]);
}

TEST_CASE("verify_ic passes every built-in family") {
  std::vector<Environment> envs{
      iso_candidates(1.0, 1.0, 1.0, 1.0),
      iso_candidates(2.0, 2.0, 1.0, 2.0),
      iso_candidates(1.0, 0.5, 2.0, 0.5),
  };
  for (const auto& env : envs) {
    const ICReport rep = verify_ic(env, refined_solve(env));
    CHECK(rep.pass);
    CHECK(rep.soc_pass);
    CHECK(rep.max_gain <= rep.eps);
  }
  {
    Environment env;
    env.benefit = BenefitSpec{1.0, IsoelasticBenefit{1.0}};
    env.cost = MultiplicativeCost{PowerDifficulty{1.0}, ExponentialStrain{}};
    env.domain = candidate_domain(1.0, 128);
    const ICReport rep = verify_ic(env, solve_multiplicative(env));
    CHECK(rep.pass);
    CHECK(rep.soc_pass);
  }
  {
    Environment env;
    env.benefit = BenefitSpec{0.75, IsoelasticBenefit{1.0}};
    env.cost = RatioCostSpec{};
    env.domain = candidate_domain(1.0, 128);
    const double t0 = env.domain.grid.front();
    const ICReport rep = verify_ic(env, solve_ode(env, t0, t0));
    CHECK(rep.pass);
  }
}

TEST_CASE("verify_ic flags a scaled strategy with a witness") {
  Environment env = iso_candidates(1.0, 1.0, 1.0, 1.0);
  const Strategy good = refined_solve(env);
  std::vector<double> scaled = good.actions();
  for (double& a : scaled) a *= 1.5;
  const ICReport rep =
      verify_ic(env, Strategy(good.knots(), scaled, Provenance::ClosedForm));
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_gain >= 1e-3);
  CHECK(rep.worst_type > 0.0);
  CHECK(rep.worst_candidate < rep.worst_type);  // downward mimicry pays
}

TEST_CASE("type zero cannot mimic under power strain") {
  Environment env = iso_candidates(1.0, 1.0, 1.0, 1.0);
  const Strategy strat = refined_solve(env);
  CHECK(mimic_payoff(env, strat, 0.5, 0.0) == kNegInf);
  CHECK(mimic_payoff(env, strat, 0.0, 0.0) == 0.0);
  const BestResponse br = best_response(env, strat, 0.0, strat.knots());
  CHECK(br.candidate == 0.0);  // opt-out
  CHECK(br.gain == 0.0);
}

TEST_CASE("mimicry surface invariants") {
  Environment env = iso_candidates(1.0, 1.0, 1.0, 1.0, 64);
  const Strategy strat = refined_solve(env);
  std::vector<double> types;
  for (std::size_t i = 0; i < strat.knots().size(); i += 4)
    types.push_back(strat.knots()[i]);
  std::vector<double> candidates{0.0};
  candidates.insert(candidates.end(), strat.knots().begin(), strat.knots().end());

  const MimicPayoffSurface surface = mimic_surface(env, strat, types, candidates);
  for (std::size_t i = 0; i < types.size(); ++i) {
    // opting out pays exactly zero
    CHECK(surface.at(i, 0) == 0.0);
    // the diagonal is the equilibrium payoff
    const double u = eval_benefit(env, types[i]) -
                     eval_cost(env, strat.action(types[i]), types[i]);
    CHECK(surface.at(i, 1 + 4 * i) == doctest::Approx(u).epsilon(1e-12));
    // diagonal dominance across the whole row
    for (std::size_t j = 0; j < candidates.size(); ++j)
      CHECK(surface.at(i, j) <= u + 1e-6);
  }
}

TEST_CASE("refining the candidate grid moves the gain by at most its curvature bound") {
  Environment coarse_env = iso_candidates(1.0, 1.0, 1.0, 1.0, 64);
  Environment fine_env = iso_candidates(1.0, 1.0, 1.0, 1.0, 256);
  const Strategy coarse = refined_solve(coarse_env);
  const Strategy fine = refined_solve(fine_env);

  auto scaled_of = [](const Strategy& s) {
    std::vector<double> a = s.actions();
    for (double& x : a) x *= 1.5;
    return Strategy(s.knots(), a, Provenance::ClosedForm);
  };
  const Strategy coarse_bad = scaled_of(coarse);
  const Strategy fine_bad = scaled_of(fine);

  const ICReport rc = verify_ic(coarse_env, coarse_bad);
  const ICReport rf = verify_ic(fine_env, fine_bad);
  CHECK_FALSE(rc.pass);
  CHECK_FALSE(rf.pass);
  // finer grids only sharpen the detected violation, and by no more than the
  // coarse grid's discretization error: |Pi''| h^2 / 8 with Pi'' = -1.5/theta
  // at the coarse argmax
  CHECK(rf.max_gain >= rc.max_gain - 1e-12);
  const auto& k = coarse_bad.knots();
  double h = 0.0;
  for (std::size_t j = 1; j < k.size(); ++j)
    if (k[j] > rc.worst_candidate) {
      h = k[j] - k[j - 1];
      break;
    }
  const double bound = 1.5 / rc.worst_type * h * h / 8.0;
  CHECK(rf.max_gain - rc.max_gain <= 2.0 * bound);
}

TEST_CASE("parallel and serial verification agree bit for bit") {
  Environment env = iso_candidates(1.0, 2.0, 1.0, 2.0);
  const Strategy strat = refined_solve(env);
  const ICReport serial = verify_ic(env, strat, -1.0, Exec::Serial);
  const ICReport parallel = verify_ic(env, strat, -1.0, Exec::Parallel);
  CHECK(serial.max_gain == parallel.max_gain);
  CHECK(serial.worst_type == parallel.worst_type);
  CHECK(serial.worst_candidate == parallel.worst_candidate);
  CHECK(serial.soc_worst == parallel.soc_worst);
#if defined(_OPENMP)
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const ICReport one = verify_ic(env, strat, -1.0, Exec::Parallel);
  omp_set_num_threads(saved);
  CHECK(one.max_gain == parallel.max_gain);
  CHECK(one.worst_type == parallel.worst_type);
#endif
}
