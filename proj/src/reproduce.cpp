#include "sigwaste/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "sigwaste/auction.hpp"
#include "sigwaste/counterexamples.hpp"
#include "sigwaste/environment.hpp"
#include "sigwaste/equilibrium.hpp"
#include "sigwaste/ic.hpp"
#include "sigwaste/tournament.hpp"
#include "sigwaste/waste.hpp"

namespace sigw::reproduce {

namespace {

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

// The equilibria exercised by the incentive-compatibility and envelope
// criteria: a spread of isoelastic parameters plus the exponential-strain and
// both stakes-dependent families.
struct SolvedCase {
  std::string label;
  Environment env;
  Strategy strategy;
};

std::vector<SolvedCase> solved_equilibria() {
  std::vector<SolvedCase> cases;
  const TypeDomain domain = candidate_domain(1.0, 256);
  const double grid0 = domain.grid.front();

  const double iso[][4] = {
      // stakes, beta, sigma, gamma
      {1.0, 1.0, 1.0, 1.0},
      {1.0, 2.0, 1.0, 2.0},
      {2.0, 0.5, 2.0, 1.0},
      {5.0, 1.0, 3.0, 0.5},
      {0.5, 3.0, 0.5, 4.0},
  };
  for (const auto& p : iso) {
    Environment env = isoelastic_environment(p[0], p[1], p[2], p[3], domain);
    Strategy strat = solve_multiplicative(env);
    cases.push_back({fmt("isoelastic s=%g b=%g s=%g", p[0], p[1], p[2]),
                     std::move(env), std::move(strat)});
  }
  {
    Environment env;
    env.benefit = BenefitSpec{1.0, IsoelasticBenefit{1.0}};
    env.cost = MultiplicativeCost{PowerDifficulty{1.0}, ExponentialStrain{}};
    env.domain = domain;
    Strategy strat = solve_multiplicative(env);
    cases.push_back({"exponential strain", std::move(env), std::move(strat)});
  }
  {
    Environment env;
    env.benefit = BenefitSpec{5.0, IsoelasticBenefit{1.0}};
    env.cost = QuadCubicCost{};
    env.domain = domain;
    Strategy strat = solve_ode(env, grid0, cubic_coefficient(5.0).c * grid0);
    cases.push_back({"quadcubic s=5", std::move(env), std::move(strat)});
  }
  {
    Environment env;
    env.benefit = BenefitSpec{0.75, IsoelasticBenefit{1.0}};
    env.cost = RatioCostSpec{};
    env.domain = domain;
    Strategy strat = solve_ode(env, grid0, ratio_coefficient(0.75).c * grid0);
    cases.push_back({"ratio cost s=0.75", std::move(env), std::move(strat)});
  }
  return cases;
}

CriterionResult constant_waste_formula() {
  CriterionResult r;
  r.name = "constant-waste-formula";
  const double values[] = {0.5, 1.0, 2.0, 3.0};
  double worst = 0.0;
  double worst_b = 0, worst_s = 0;
  for (double beta : values)
    for (double sigma : values) {
      Environment env = isoelastic_environment(1.0, beta, sigma, 1.0,
                                               TypeDomain::log_spaced(1.0, 1024));
      const Strategy strat = solve_multiplicative(env);
      const WasteProfile wp = waste_profile(env, strat);
      const double target = waste_isoelastic(beta, sigma);
      for (double w : wp.w) {
        const double err = std::abs(w - target);
        if (err > worst) {
          worst = err;
          worst_b = beta;
          worst_s = sigma;
        }
      }
    }
  r.pass = worst <= 1e-6;
  r.detail = fmt("max |W - b/(b+s)| = %.3g (beta=%g sigma=%g)", worst, worst_b, worst_s);
  return r;
}

CriterionResult stakes_difficulty_invariance() {
  CriterionResult r;
  r.name = "stakes-difficulty-invariance";
  Environment base = isoelastic_environment(1.0, 1.0, 1.0, 1.0);
  const InvarianceReport rep =
      invariance_sweep(base, {0.5, 1.0, 2.0, 10.0}, {0.5, 1.0, 2.0, 4.0});
  double amax = 0.0, amin = std::numeric_limits<double>::infinity();
  for (const auto& cell : rep.cells) {
    amax = std::max(amax, cell.max_action);
    amin = std::min(amin, cell.max_action);
  }
  const double spread_factor = amax / amin;
  r.pass = rep.max_w_deviation <= 1e-6 && spread_factor > 2.0;
  r.detail = fmt("max W deviation = %.3g, action spread factor = %.3g",
                 rep.max_w_deviation, spread_factor);
  return r;
}

CriterionResult cost_curve_invariance() {
  CriterionResult r;
  r.name = "cost-curve-invariance";
  const TypeDomain domain = TypeDomain::log_spaced(1.0, 1024);
  double worst_gamma = 0.0;
  {
    std::vector<std::vector<double>> costs;
    for (double gamma : {0.5, 1.0, 2.0, 4.0}) {
      Environment env = isoelastic_environment(1.0, 1.0, 1.0, gamma, domain);
      costs.push_back(equilibrium_cost(env, solve_multiplicative(env)).cost);
    }
    for (std::size_t i = 0; i < costs[0].size(); ++i)
      for (std::size_t g = 1; g < costs.size(); ++g)
        worst_gamma = std::max(worst_gamma,
                               std::abs(costs[g][i] - costs[0][i]) / costs[0][i]);
  }
  double worst_stakes = 0.0;
  {
    Environment unit = isoelastic_environment(1.0, 1.0, 1.0, 1.0, domain);
    const auto base = equilibrium_cost(unit, solve_multiplicative(unit)).cost;
    for (double s : {0.5, 2.0, 10.0}) {
      Environment env = isoelastic_environment(s, 1.0, 1.0, 1.0, domain);
      const auto cost = equilibrium_cost(env, solve_multiplicative(env)).cost;
      for (std::size_t i = 0; i < cost.size(); ++i)
        worst_stakes =
            std::max(worst_stakes, std::abs(cost[i] / s - base[i]) / base[i]);
    }
  }
  r.pass = worst_gamma <= 1e-6 && worst_stakes <= 1e-6;
  r.detail = fmt("gamma rel dev = %.3g, stakes linearity rel dev = %.3g",
                 worst_gamma, worst_stakes);
  return r;
}

CriterionResult constant_waste_characterization() {
  CriterionResult r;
  r.name = "constant-waste-characterization";
  bool pass = true;
  std::string detail;

  auto iso_case = [&](double beta, double sigma) {
    Environment env = isoelastic_environment(1.0, beta, sigma, 1.0);
    const CharacterizationReport rep = check_constant_waste(env);
    const double err = std::abs(rep.w_mean - rep.w_formula);
    pass = pass && rep.w_constant && rep.rho_constant && err <= 1e-8;
    return err;
  };
  const double e1 = iso_case(2.0, 3.0);
  const double e2 = iso_case(2.0, 4.0);  // reparametrized: rho = 2, W = 1/3

  Environment exp_env;
  exp_env.benefit = BenefitSpec{1.0, IsoelasticBenefit{1.0}};
  exp_env.cost = MultiplicativeCost{PowerDifficulty{1.0}, ExponentialStrain{}};
  const CharacterizationReport rep = check_constant_waste(exp_env);
  pass = pass && !rep.w_constant && !rep.rho_constant;
  double oracle_err = 0.0;
  for (std::size_t i = 0; i < rep.theta.size(); ++i) {
    const double th = rep.theta[i];
    const double exact = (1.0 - std::exp(-th)) / th;
    oracle_err = std::max(oracle_err, std::abs(rep.w[i] - exact));
  }
  pass = pass && oracle_err <= 1e-6;

  r.pass = pass;
  r.detail = fmt("iso |W-1/(1+rho)| = %.2g/%.2g, exp-strain oracle err = %.3g",
                 e1, e2, oracle_err);
  return r;
}

CriterionResult incentive_compatibility() {
  CriterionResult r;
  r.name = "incentive-compatibility";
  bool pass = true;
  double worst_rel = 0.0;
  for (const auto& c : solved_equilibria()) {
    const ICReport rep = verify_ic(c.env, c.strategy);
    pass = pass && rep.pass;
    worst_rel = std::max(worst_rel, rep.max_gain / rep.eps);
  }
  // a visibly wrong strategy must be caught
  Environment env = isoelastic_environment(1.0, 1.0, 1.0, 1.0,
                                           candidate_domain(1.0, 256));
  const Strategy good = solve_multiplicative(env);
  std::vector<double> scaled = good.actions();
  for (double& a : scaled) a *= 1.5;
  const ICReport bad =
      verify_ic(env, Strategy(good.knots(), scaled, Provenance::ClosedForm));
  pass = pass && !bad.pass && bad.max_gain >= 1e-3;
  r.pass = pass;
  r.detail = fmt("max gain / eps = %.3g over solved set; scaled-strategy gain = %.3g",
                 worst_rel, bad.max_gain);
  return r;
}

CriterionResult tournament_monte_carlo(std::uint64_t seed) {
  CriterionResult r;
  r.name = "tournament-monte-carlo";
  bool pass = true;
  for (int n = 2; n <= 10; ++n) {
    const double closed = tournament_waste(n, 1.0, 1.0);
    pass = pass && std::abs(closed - (n - 1.0) / n) <= 1e-15;
  }
  double worst_z = 0.0;
  for (int n : {2, 3, 5})
    for (double k : {1.0, 2.0})
      for (double sigma : {1.0, 2.0}) {
        TournamentSpec spec;
        spec.n = n;
        spec.k = k;
        spec.sigma = sigma;
        const MonteCarloReport rep = simulate_tournament(spec, 100000, seed);
        const double z =
            std::abs(rep.ratio - rep.closed_form_ratio) / rep.se_ratio;
        worst_z = std::max(worst_z, z);
        pass = pass && z <= 4.0;
      }
  TournamentSpec base;  // N=2, k=sigma=s=1, linear difficulty
  const MonteCarloReport rep = simulate_tournament(base, 100000, seed);
  const double zc = std::abs(rep.mean_cost - 0.25) / rep.se_cost;
  const double zb = std::abs(rep.mean_benefit - 0.5) / rep.se_benefit;
  pass = pass && zc <= 4.0 && zb <= 4.0;
  r.pass = pass;
  r.detail = fmt("worst ratio z = %.2f; exact-check z = %.2f / %.2f", worst_z, zc, zb);
  return r;
}

CriterionResult tullock_contest() {
  CriterionResult r;
  r.name = "tullock-contest";
  bool pass = true;
  {
    const TullockOutcome o = tullock_equilibrium(ContestSpec{1.0, 2, 1.0, 1.0});
    pass = pass && o.effort == 0.25 && o.dissipation == 0.5;
  }
  {
    const TullockOutcome o = tullock_equilibrium(ContestSpec{1.0, 4, 1.0, 1.0});
    pass = pass && o.dissipation == 0.75;
  }
  {
    const TullockOutcome o = tullock_equilibrium(ContestSpec{1.0, 2, 1.0, 2.0});
    pass = pass && o.dissipation == 0.25;
  }
  const long ns[] = {2, 10, 100, 1000};
  const auto rows = compare_limits(1.0, 1.0, 0.5, 1.0, ns);
  const ComparisonRow& last = rows.back();
  const double contest_gap = std::abs(last.contest_dissipation - 0.5);
  pass = pass && last.signaling_waste >= 0.999 && contest_gap <= 1e-3;
  r.pass = pass;
  r.detail = fmt("N=1000: signaling = %.6f, contest gap to r/gamma = %.2g",
                 last.signaling_waste, contest_gap);
  return r;
}

CriterionResult allpay_equivalence(std::uint64_t seed) {
  CriterionResult r;
  r.name = "all-pay-equivalence";
  const TypeDomain domain = TypeDomain::log_spaced(1.0, 512);
  double worst = 0.0;
  for (double beta : {0.5, 1.0, 2.0})
    for (double sigma : {0.5, 1.0, 2.0})
      for (double gamma : {1.0, 2.0})
        for (int n : {2, 3}) {
          const EquivalenceReport rep =
              verify_equivalence(beta, sigma, gamma, n, domain);
          worst = std::max(worst, rep.max_discrepancy);
        }
  double worst_identity = 0.0;
  for (double beta : {0.5, 1.0, 2.0})
    for (double sigma : {0.5, 1.0, 2.0})
      for (int n : {2, 3, 5}) {
        const AuctionMap map = make_auction_map(beta, sigma, n);
        const SecondHighestValue sh = conditional_second_highest(map, 1.0);
        worst_identity = std::max(
            worst_identity, std::abs(sh.order_statistic_form - sh.elasticity_form));
      }
  const AuctionMap map = make_auction_map(1.0, 1.0, 2);
  const McEstimate mc = mc_conditional_second_highest(map, 0.7, 1000000, seed);
  const double target = conditional_second_highest(map, 0.7).elasticity_form;
  const double z = std::abs(mc.estimate - target) / mc.se;
  r.pass = worst <= 1e-6 && worst_identity <= 1e-14 && z <= 3.0;
  r.detail = fmt("max bid discrepancy = %.3g, identity gap = %.2g, MC z = %.2f",
                 worst, worst_identity, z);
  return r;
}

CriterionResult stakes_dependent_waste() {
  CriterionResult r;
  r.name = "stakes-dependent-waste";
  bool pass = true;

  const CoefficientSolve c5 = cubic_coefficient(5.0);
  pass = pass && std::abs(c5.c - 1.0) <= 1e-9 &&
         std::abs(waste_decreasing(5.0) - 0.4) <= 1e-9;
  const CoefficientSolve c075 = ratio_coefficient(0.75);
  pass = pass && std::abs(c075.c - 1.0) <= 1e-9 &&
         std::abs(waste_increasing(0.75) - 2.0 / 3.0) <= 1e-9;

  // 100 log-spaced stakes: residuals, monotonicity, ranges
  double worst_residual = 0.0;
  double prev_dec = 1.0, prev_inc = 0.0;
  bool monotone = true, in_range = true;
  for (int i = 0; i < 100; ++i) {
    const double s = std::pow(10.0, -3.0 + 5.0 * i / 99.0);
    const CoefficientSolve a = cubic_coefficient(s);
    const CoefficientSolve b = ratio_coefficient(s);
    worst_residual = std::max({worst_residual, a.residual, b.residual});
    const double wd = waste_decreasing(s);
    const double wi = waste_increasing(s);
    in_range = in_range && wd > 1.0 / 3.0 && wd < 0.5 && wi > 0.5 && wi < 1.0;
    if (i > 0) monotone = monotone && wd < prev_dec && wi > prev_inc;
    prev_dec = wd;
    prev_inc = wi;
  }
  pass = pass && worst_residual <= 1e-12 && monotone && in_range;

  const double quad_stakes[] = {1.0, 5.0, 20.0};
  const double ratio_stakes[] = {0.2, 0.75, 5.0};
  const CrosscheckReport quad =
      crosscheck_nonmultiplicative(CounterexampleFamily::QuadCubic, quad_stakes);
  const CrosscheckReport ratio =
      crosscheck_nonmultiplicative(CounterexampleFamily::Ratio, ratio_stakes);
  double worst_spread = 0.0;
  for (const auto& row : quad.rows) worst_spread = std::max(worst_spread, row.w_grid_spread);
  for (const auto& row : ratio.rows) worst_spread = std::max(worst_spread, row.w_grid_spread);
  pass = pass && quad.all_constant && quad.monotone_as_expected &&
         ratio.all_constant && ratio.monotone_as_expected;

  r.pass = pass;
  r.detail = fmt("worst residual = %.2g, worst W(theta) spread = %.2g",
                 worst_residual, worst_spread);
  return r;
}

CriterionResult envelope_condition() {
  CriterionResult r;
  r.name = "envelope-condition";
  double worst = 0.0;
  std::string worst_label;
  for (const auto& c : solved_equilibria()) {
    const EnvelopeCheck chk = envelope_check(c.env, c.strategy);
    if (chk.max_rel_err > worst) {
      worst = chk.max_rel_err;
      worst_label = c.label;
    }
  }
  r.pass = worst <= 1e-4;
  r.detail = fmt("max rel err = %.3g", worst) + " (" + worst_label + ")";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> results;
  results.push_back(constant_waste_formula());
  results.push_back(stakes_difficulty_invariance());
  results.push_back(cost_curve_invariance());
  results.push_back(constant_waste_characterization());
  results.push_back(incentive_compatibility());
  results.push_back(tournament_monte_carlo(seed));
  results.push_back(tullock_contest());
  results.push_back(allpay_equivalence(seed));
  results.push_back(stakes_dependent_waste());
  results.push_back(envelope_condition());
  return results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.pass; });
}

}  // namespace sigw::reproduce
