// Command-line front end: solves signaling equilibria from a JSON config,
// reports waste profiles and sweeps, verifies incentive compatibility, and
// runs the tournament / contest / all-pay comparisons.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigwaste/auction.hpp"
#include "sigwaste/config.hpp"
#include "sigwaste/counterexamples.hpp"
#include "sigwaste/csv.hpp"
#include "sigwaste/environment.hpp"
#include "sigwaste/equilibrium.hpp"
#include "sigwaste/errors.hpp"
#include "sigwaste/ic.hpp"
#include "sigwaste/reproduce.hpp"
#include "sigwaste/tournament.hpp"
#include "sigwaste/waste.hpp"

namespace {

using namespace sigw;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  long grid_points = 0;  // 0 = keep config value
  double tol = 0.0;      // 0 = keep config value
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool need_out) {
  cmd->add_option("--config", opts.config_path, "JSON run configuration")
      ->required();
  auto* out = cmd->add_option("--out", opts.out_path, "output CSV path");
  if (need_out) out->required();
  cmd->add_option("--grid-points", opts.grid_points, "override domain.grid_points");
  cmd->add_option("--tol", opts.tol, "override solver tolerances");
}

RunConfig load(const CommonOpts& opts) {
  RunConfig cfg = load_config(opts.config_path);
  if (opts.grid_points > 0) {
    if (opts.grid_points < 64) throw ConfigError("--grid-points: must be >= 64");
    cfg.grid_points = static_cast<std::size_t>(opts.grid_points);
    cfg.env.domain =
        TypeDomain::log_spaced(cfg.env.domain.theta_bar, cfg.grid_points);
  }
  if (opts.tol > 0.0) {
    cfg.solver.quad_rel_tol = std::min(cfg.solver.quad_rel_tol, opts.tol);
    cfg.solver.ode_rel_tol = opts.tol;
  }
  if (!opts.out_path.empty()) cfg.output.path = opts.out_path;
  return cfg;
}

Strategy solve_env(const Environment& env, const SolverOptions& solver) {
  return is_multiplicative(env.cost) ? solve_multiplicative(env, solver)
                                     : solve_ode(env, solver);
}

void write_rows(const RunConfig& cfg, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
  if (cfg.output.path.empty())
    emit_csv(std::cout, header, rows, cfg.output.precision);
  else
    write_csv(cfg.output.path, header, rows, cfg.output.precision);
}

int cmd_solve(const CommonOpts& opts) {
  const RunConfig cfg = load(opts);
  const Strategy strat = solve_env(cfg.env, cfg.solver);
  const EquilibriumCostCurve cost = equilibrium_cost(cfg.env, strat);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < strat.knots().size(); ++i)
    rows.push_back({strat.knots()[i], strat.actions()[i], cost.cost[i]});
  write_rows(cfg, {"theta", "action", "cost"}, rows);
  return 0;
}

int cmd_waste(const CommonOpts& opts) {
  const RunConfig cfg = load(opts);
  const Strategy strat = solve_env(cfg.env, cfg.solver);
  const WasteProfile wp = waste_profile(cfg.env, strat);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < wp.theta.size(); ++i)
    rows.push_back({wp.theta[i], wp.w[i]});
  write_rows(cfg, {"theta", "W"}, rows);
  return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::vector<double>& stakes,
              const std::vector<double>& gammas) {
  const RunConfig cfg = load(opts);
  const InvarianceReport rep = invariance_sweep(cfg.env, stakes, gammas);
  std::vector<std::vector<double>> rows;
  for (const auto& cell : rep.cells)
    for (std::size_t i = 0; i < rep.theta.size(); ++i)
      rows.push_back({cell.stakes, cell.gamma, rep.theta[i], cell.w[i],
                      cell.action[i], cell.cost[i]});
  write_rows(cfg, {"s", "gamma", "theta", "W", "action", "cost"}, rows);
  return 0;
}

int cmd_verify_ic(const CommonOpts& opts) {
  RunConfig cfg = load(opts);
  // solve on the 4x-refined candidate grid; types are every fourth knot
  cfg.env.domain = candidate_domain(cfg.env.domain.theta_bar, cfg.grid_points);
  const Strategy strat = solve_env(cfg.env, cfg.solver);
  const ICReport rep = verify_ic(cfg.env, strat);
  if (rep.pass) {
    std::cout << "ic: pass (max gain " << format_sig(rep.max_gain, 6)
              << " <= eps " << format_sig(rep.eps, 6) << ")\n";
    return 0;
  }
  std::cout << "theta,theta_hat,gain\n"
            << format_sig(rep.worst_type) << ',' << format_sig(rep.worst_candidate)
            << ',' << format_sig(rep.max_gain) << '\n';
  return 1;
}

int cmd_tournament(int n, double k, double sigma, double s, long trials,
                   std::uint64_t seed, const std::string& out) {
  TournamentSpec spec;
  spec.n = n;
  spec.k = k;
  spec.sigma = sigma;
  spec.prize = s;
  const MonteCarloReport rep = simulate_tournament(spec, trials, seed);
  const std::vector<std::string> header{
      "n", "k", "sigma", "s", "trials", "mean_cost", "se_cost",
      "mean_benefit", "se_benefit", "ratio", "se_ratio", "closed_form"};
  const std::vector<std::vector<double>> rows{
      {static_cast<double>(n), k, sigma, s, static_cast<double>(trials),
       rep.mean_cost, rep.se_cost, rep.mean_benefit, rep.se_benefit, rep.ratio,
       rep.se_ratio, rep.closed_form_ratio}};
  if (out.empty())
    emit_csv(std::cout, header, rows);
  else
    write_csv(out, header, rows);
  return 0;
}

int cmd_tullock(int n, double r, double gamma, double s) {
  const TullockOutcome o = tullock_equilibrium(ContestSpec{s, n, r, gamma});
  std::cout << "effort " << format_sig(o.effort) << "\n"
            << "dissipation " << format_sig(o.dissipation) << "\n";
  return 0;
}

int cmd_compare(const std::vector<long>& n_list, double k, double sigma,
                double r, double gamma, const std::string& out) {
  const auto rows_in = compare_limits(k, sigma, r, gamma, n_list);
  std::vector<std::vector<double>> rows;
  for (const auto& row : rows_in)
    rows.push_back({static_cast<double>(row.n), row.signaling_waste,
                    row.contest_dissipation});
  const std::vector<std::string> header{"n", "signaling_waste",
                                        "contest_dissipation"};
  if (out.empty())
    emit_csv(std::cout, header, rows);
  else
    write_csv(out, header, rows);
  return 0;
}

int cmd_auction(double beta, double sigma, double gamma, int n,
                long grid_points, const std::string& out) {
  const EquivalenceReport rep = verify_equivalence(
      beta, sigma, gamma, n,
      TypeDomain::log_spaced(1.0, static_cast<std::size_t>(grid_points)));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.v.size(); ++i)
    rows.push_back({rep.v[i], rep.bid_closed_form[i], rep.bid_from_signaling[i],
                    rep.bid_closed_form[i] - rep.bid_from_signaling[i]});
  const std::vector<std::string> header{"v", "bid_closed_form",
                                        "bid_from_signaling", "discrepancy"};
  if (out.empty())
    emit_csv(std::cout, header, rows);
  else
    write_csv(out, header, rows);
  return 0;
}

int cmd_counterexample(const std::string& family, std::vector<double> stakes,
                       const std::vector<double>& weights,
                       const std::vector<double>& gammas,
                       const std::vector<double>& sigmas, double beta,
                       const std::string& out) {
  if (stakes.empty()) stakes = {0.5, 1.0, 2.0, 5.0, 10.0};
  std::vector<std::vector<double>> rows;
  if (family == "quadcubic") {
    for (double s : stakes)
      rows.push_back({s, cubic_coefficient(s).c, waste_decreasing(s)});
  } else if (family == "ratio") {
    for (double s : stakes)
      rows.push_back({s, ratio_coefficient(s).c, waste_increasing(s)});
  } else if (family == "mixed") {
    if (weights.empty())
      throw ConfigError("counterexample mixed: --weights/--gammas/--sigmas required");
    for (double s : stakes) {
      const MixedResult m = mixed_isoelastic(weights, gammas, sigmas, beta, s);
      rows.push_back({s, m.c, m.waste});
    }
  } else {
    throw ConfigError("counterexample: unknown family '" + family + "'");
  }
  const std::vector<std::string> header{"s", "c", "waste"};
  if (out.empty())
    emit_csv(std::cout, header, rows);
  else
    write_csv(out, header, rows);
  return 0;
}

int cmd_reproduce(std::uint64_t seed) {
  const auto results = sigw::reproduce::run_all(seed);
  for (const auto& r : results)
    std::printf("[%s] %-34s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
  const bool ok = sigw::reproduce::all_pass(results);
  std::printf("%zu/%zu criteria passed\n",
              static_cast<std::size_t>(
                  std::count_if(results.begin(), results.end(),
                                [](const auto& r) { return r.pass; })),
              results.size());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"separating-equilibrium signaling toolkit"};
  app.require_subcommand(1);

  CommonOpts solve_opts, waste_opts, sweep_opts, ic_opts;
  std::vector<double> sweep_stakes{0.5, 1.0, 2.0, 10.0};
  std::vector<double> sweep_gammas{0.5, 1.0, 2.0, 4.0};

  auto* solve = app.add_subcommand("solve", "solve the separating equilibrium");
  add_common(solve, solve_opts, true);

  auto* waste = app.add_subcommand("waste", "waste ratio profile");
  add_common(waste, waste_opts, true);

  auto* sweep = app.add_subcommand("sweep", "stakes x difficulty sweep");
  add_common(sweep, sweep_opts, true);
  sweep->add_option("--stakes", sweep_stakes, "stakes values");
  sweep->add_option("--gamma", sweep_gammas, "difficulty exponents");

  auto* vic = app.add_subcommand("verify-ic", "brute-force incentive check");
  add_common(vic, ic_opts, false);

  int t_n = 2;
  double t_k = 1.0, t_sigma = 1.0, t_s = 1.0;
  long t_trials = 100000;
  std::uint64_t t_seed = 1;
  std::string t_out;
  auto* tour = app.add_subcommand("tournament", "Monte Carlo signaling tournament");
  tour->add_option("--n", t_n, "contestants")->required();
  tour->add_option("--k", t_k, "type distribution exponent");
  tour->add_option("--sigma", t_sigma, "strain elasticity");
  tour->add_option("--s", t_s, "prize");
  tour->add_option("--trials", t_trials, "Monte Carlo trials");
  tour->add_option("--seed", t_seed, "RNG seed");
  tour->add_option("--out", t_out, "output CSV path");

  int c_n = 2;
  double c_r = 1.0, c_gamma = 1.0, c_s = 1.0;
  auto* tul = app.add_subcommand("tullock", "symmetric contest benchmark");
  tul->add_option("--n", c_n, "players")->required();
  tul->add_option("--r", c_r, "win-probability exponent");
  tul->add_option("--gamma", c_gamma, "effort cost exponent");
  tul->add_option("--s", c_s, "prize");

  std::vector<long> cmp_n{2, 5, 10, 100, 1000};
  double cmp_k = 1.0, cmp_sigma = 1.0, cmp_r = 1.0, cmp_gamma = 1.0;
  std::string cmp_out;
  auto* cmp = app.add_subcommand("compare", "signaling waste vs contest dissipation");
  cmp->add_option("--n-list", cmp_n, "field sizes");
  cmp->add_option("--k", cmp_k, "type distribution exponent");
  cmp->add_option("--sigma", cmp_sigma, "strain elasticity");
  cmp->add_option("--r", cmp_r, "contest exponent");
  cmp->add_option("--gamma", cmp_gamma, "contest cost exponent");
  cmp->add_option("--out", cmp_out, "output CSV path");

  double a_beta = 1.0, a_sigma = 1.0, a_gamma = 1.0;
  int a_n = 2;
  long a_grid = 512;
  std::string a_out;
  auto* auc = app.add_subcommand("auction", "all-pay equivalence check");
  auc->add_option("--beta", a_beta, "benefit elasticity");
  auc->add_option("--sigma", a_sigma, "strain elasticity");
  auc->add_option("--gamma", a_gamma, "difficulty exponent");
  auc->add_option("--n", a_n, "bidders");
  auc->add_option("--grid-points", a_grid, "value grid size");
  auc->add_option("--out", a_out, "output CSV path");

  std::string ce_family;
  std::vector<double> ce_stakes, ce_weights, ce_gammas, ce_sigmas;
  double ce_beta = 1.0;
  std::string ce_out;
  auto* ce = app.add_subcommand("counterexample", "stakes-dependent waste families");
  ce->add_option("--family", ce_family, "quadcubic | ratio | mixed")->required();
  ce->add_option("--s", ce_stakes, "stakes values");
  ce->add_option("--weights", ce_weights, "mixed family weights");
  ce->add_option("--gammas", ce_gammas, "mixed family action exponents");
  ce->add_option("--sigmas", ce_sigmas, "mixed family strain exponents");
  ce->add_option("--beta", ce_beta, "benefit elasticity (mixed family)");
  ce->add_option("--out", ce_out, "output CSV path");

  std::uint64_t rep_seed = 0x5157A5ull;
  auto* rep = app.add_subcommand("reproduce", "run the full verification battery");
  rep->add_option("--seed", rep_seed, "RNG seed for the Monte Carlo criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_opts);
    if (waste->parsed()) return cmd_waste(waste_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_stakes, sweep_gammas);
    if (vic->parsed()) return cmd_verify_ic(ic_opts);
    if (tour->parsed())
      return cmd_tournament(t_n, t_k, t_sigma, t_s, t_trials, t_seed, t_out);
    if (tul->parsed()) return cmd_tullock(c_n, c_r, c_gamma, c_s);
    if (cmp->parsed())
      return cmd_compare(cmp_n, cmp_k, cmp_sigma, cmp_r, cmp_gamma, cmp_out);
    if (auc->parsed())
      return cmd_auction(a_beta, a_sigma, a_gamma, a_n, a_grid, a_out);
    if (ce->parsed())
      return cmd_counterexample(ce_family, ce_stakes, ce_weights, ce_gammas,
                                ce_sigmas, ce_beta, ce_out);
    if (rep->parsed()) return cmd_reproduce(rep_seed);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
