#include "sigwaste/tournament.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigwaste/rng.hpp"

namespace sigw {

namespace {

void validate(const TournamentSpec& spec) {
  if (spec.n < 2) throw std::domain_error("tournament: need at least two contestants");
  if (!(spec.prize > 0.0) || !(spec.k > 0.0) || !(spec.sigma > 0.0))
    throw std::domain_error("tournament: prize, k, sigma must be positive");
}

struct TrialOut {
  double cost = 0;     // per-capita realized signaling cost
  double benefit = 0;  // per-capita V(theta_i)
  double winner = 0;   // winning type
};

}  // namespace

double tournament_benefit(const TournamentSpec& spec, double theta) {
  validate(spec);
  if (theta < 0.0 || theta > 1.0)
    throw std::domain_error("tournament_benefit: theta outside [0,1]");
  return spec.prize * std::pow(theta, spec.k * (spec.n - 1));
}

double tournament_waste(int n, double k, double sigma) {
  if (n < 2) throw std::domain_error("tournament_waste: need n >= 2");
  if (!(k > 0.0) || !(sigma > 0.0))
    throw std::domain_error("tournament_waste: k and sigma must be positive");
  const double b = k * (n - 1);
  return b / (b + sigma);
}

MonteCarloReport simulate_tournament(const TournamentSpec& spec, long trials,
                                     std::uint64_t seed, Exec exec) {
  validate(spec);
  if (trials < 1) throw std::domain_error("simulate_tournament: trials must be >= 1");

  const double beta = spec.k * (spec.n - 1);
  const double waste = beta / (beta + spec.sigma);
  const double inv_k = 1.0 / spec.k;
  const double inv_n = 1.0 / spec.n;

  std::vector<TrialOut> out(static_cast<std::size_t>(trials));
  auto run_trial = [&](long t) {
    Philox2x64 rng(seed, static_cast<std::uint64_t>(t));
    double cost_sum = 0.0, benefit_sum = 0.0;
    double best = -1.0;
    for (int i = 0; i < spec.n; ++i) {
      const double u = rng.next_double();
      const double theta = std::pow(u, inv_k);
      // equilibrium cost is waste * V(theta) regardless of the difficulty map
      const double v = spec.prize * std::pow(theta, beta);
      benefit_sum += v;
      cost_sum += waste * v;
      if (theta > best) best = theta;  // strict: ties go to the lowest index
    }
    TrialOut& o = out[static_cast<std::size_t>(t)];
    o.cost = cost_sum * inv_n;
    o.benefit = benefit_sum * inv_n;
    o.winner = best;
  };

  if (exec == Exec::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (long t = 0; t < trials; ++t) run_trial(t);
  } else {
    for (long t = 0; t < trials; ++t) run_trial(t);
  }

  // fixed-order reduction
  double sc = 0, sc2 = 0, sb = 0, sb2 = 0, sw = 0;
  for (long t = 0; t < trials; ++t) {
    const TrialOut& o = out[static_cast<std::size_t>(t)];
    sc += o.cost;
    sc2 += o.cost * o.cost;
    sb += o.benefit;
    sb2 += o.benefit * o.benefit;
    sw += o.winner;
  }

  MonteCarloReport r;
  r.trials = trials;
  r.n = spec.n;
  const double tn = static_cast<double>(trials);
  r.mean_cost = sc / tn;
  r.mean_benefit = sb / tn;
  r.mean_winner_type = sw / tn;
  r.prize_per_capita = spec.prize * inv_n;
  r.ratio = r.mean_cost / r.prize_per_capita;
  r.closed_form_ratio = waste;
  r.se_defined = trials > 1;
  if (r.se_defined) {
    const double var_c = std::max(0.0, (sc2 - tn * r.mean_cost * r.mean_cost) / (tn - 1.0));
    const double var_b = std::max(0.0, (sb2 - tn * r.mean_benefit * r.mean_benefit) / (tn - 1.0));
    r.se_cost = std::sqrt(var_c / tn);
    r.se_benefit = std::sqrt(var_b / tn);
    r.se_ratio = r.se_cost / r.prize_per_capita;
  } else {
    r.se_cost = r.se_benefit = r.se_ratio =
        std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

TullockOutcome tullock_equilibrium(const ContestSpec& spec) {
  if (spec.n < 2) throw std::domain_error("tullock: need n >= 2");
  if (!(spec.prize > 0.0)) throw std::domain_error("tullock: prize must be positive");
  if (!(spec.r > 0.0) || spec.r > 1.0)
    throw std::domain_error("tullock: r must lie in (0, 1]");
  if (!(spec.gamma >= 1.0)) throw std::domain_error("tullock: gamma must be >= 1");
  // A contest with exponent r and cost x^gamma is isomorphic to a lottery in
  // y = x^gamma with exponent r/gamma and linear cost.
  const double r_eff = spec.r / spec.gamma;
  const double n = spec.n;
  TullockOutcome out;
  const double transformed_effort = spec.prize * r_eff * (n - 1.0) / (n * n);
  out.effort = std::pow(transformed_effort, 1.0 / spec.gamma);
  out.dissipation = r_eff * (n - 1.0) / n;
  return out;
}

std::vector<ComparisonRow> compare_limits(double k, double sigma, double r,
                                          double gamma,
                                          std::span<const long> n_list) {
  std::vector<ComparisonRow> rows;
  rows.reserve(n_list.size());
  long prev = 0;
  for (long n : n_list) {
    if (n < 2) throw std::domain_error("compare_limits: n must be >= 2");
    if (n <= prev) throw std::domain_error("compare_limits: n list must increase");
    prev = n;
    ComparisonRow row;
    row.n = n;
    row.signaling_waste = tournament_waste(static_cast<int>(n), k, sigma);
    row.contest_dissipation =
        (r / gamma) * (static_cast<double>(n) - 1.0) / static_cast<double>(n);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sigw
