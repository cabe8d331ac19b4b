#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sigwaste/environment.hpp"
#include "sigwaste/exec.hpp"

namespace sigw {

// Winner-take-all tournament: N contestants, one prize, types drawn from
// F(theta) = theta^k on [0,1], isoelastic strain t^-sigma. The induced
// benefit elasticity is k*(N-1).
struct TournamentSpec {
  double prize = 1.0;
  int n = 2;
  double k = 1.0;
  double sigma = 1.0;
  // Kept for completeness: realized equilibrium costs do not depend on it.
  DifficultySpec difficulty = PowerDifficulty{1.0};
};

// s * theta^(k*(N-1)), theta in [0,1]
double tournament_benefit(const TournamentSpec&, double theta);

// k*(N-1) / (k*(N-1) + sigma); reduces to (N-1)/N for k = sigma = 1
double tournament_waste(int n, double k, double sigma);

struct MonteCarloReport {
  long trials = 0;
  int n = 0;
  double mean_cost = 0;     // realized signaling cost per capita
  double se_cost = 0;
  double mean_benefit = 0;  // sample mean of V(theta_i); expectation s/N
  double se_benefit = 0;
  double prize_per_capita = 0;  // s/N, one prize awarded every trial
  double ratio = 0;             // mean_cost / prize_per_capita
  double se_ratio = 0;
  double mean_winner_type = 0;
  bool se_defined = false;  // false for trials < 2
  double closed_form_ratio = 0;
};

// Seeded Monte Carlo: trial t draws its types from Philox substream (seed, t)
// and every contestant plays the separating strategy. The prize goes to the
// highest type (ties broken by lowest contestant index). Per-trial results
// are reduced in trial order, so the report is bit-identical for any thread
// count.
MonteCarloReport simulate_tournament(const TournamentSpec&, long trials,
                                     std::uint64_t seed,
                                     Exec exec = Exec::Parallel);

// Tullock contest: win probability x_i^r / sum_j x_j^r, effort cost x^gamma.
struct ContestSpec {
  double prize = 1.0;
  int n = 2;
  double r = 1.0;      // in (0, 1]
  double gamma = 1.0;  // >= 1
};

struct TullockOutcome {
  double effort = 0;       // per player
  double dissipation = 0;  // (r/gamma) * (N-1)/N
};

TullockOutcome tullock_equilibrium(const ContestSpec&);

struct ComparisonRow {
  long n = 0;
  double signaling_waste = 0;
  double contest_dissipation = 0;
};

// Signaling waste vs contest dissipation across field sizes: the former
// tends to 1, the latter to r/gamma.
std::vector<ComparisonRow> compare_limits(double k, double sigma, double r,
                                          double gamma,
                                          std::span<const long> n_list);

}  // namespace sigw
