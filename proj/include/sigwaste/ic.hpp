#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sigwaste/environment.hpp"
#include "sigwaste/equilibrium.hpp"
#include "sigwaste/exec.hpp"

namespace sigw {

// Payoff for a type mimicking candidate type theta_hat: the benefit of being
// perceived as theta_hat minus the cost of playing its equilibrium action.
// theta_hat = 0 is the opt-out (action 0, lowest perception, payoff 0);
// infinite costs enter as -inf and never win an argmax.
double mimic_payoff(const Environment&, const Strategy&, double theta_hat,
                    double theta);

struct BestResponse {
  double candidate = 0;  // best theta_hat (0 = opt-out)
  double gain = 0;       // payoff improvement over truthful play
  double payoff = 0;     // payoff at the best candidate
};

// Grid search over the candidates plus the opt-out action.
BestResponse best_response(const Environment&, const Strategy&, double theta,
                           std::span<const double> candidates);

struct ICReport {
  double max_gain = 0;
  double worst_type = 0;
  double worst_candidate = 0;
  double eps = 0;  // pass threshold, 1e-6 * max V by default
  bool pass = false;
  // discrete second-order check: second difference of the mimicry payoff at
  // the truthful candidate must not be positive
  double soc_worst = 0;
  double soc_worst_type = 0;
  bool soc_pass = false;
};

// Brute-force incentive-compatibility check: no type on the type grid may
// gain more than eps by mimicking any candidate. Rows (true types) are
// independent; Exec::Parallel spreads them across threads and reduces in row
// order, so reports are identical across thread counts.
ICReport verify_ic(const Environment&, const Strategy&,
                   std::span<const double> types,
                   std::span<const double> candidates, double eps = -1.0,
                   Exec exec = Exec::Parallel);

// Convenience: candidates are the strategy knots, types every fourth knot
// (the solve should be done on the 4x-refined grid to begin with).
ICReport verify_ic(const Environment&, const Strategy&, double eps = -1.0,
                   Exec exec = Exec::Parallel);

// Builds the grid for a strategy meant to be IC-checked with `type_points`
// types: 4*(type_points-1)+1 log-spaced candidates with matched endpoints.
TypeDomain candidate_domain(double theta_bar, std::size_t type_points,
                            double span = 1e-6);

struct MimicPayoffSurface {
  std::vector<double> types;
  std::vector<double> candidates;
  std::vector<double> pi;  // row-major: types x candidates

  double at(std::size_t i, std::size_t j) const {
    return pi[i * candidates.size() + j];
  }
};

MimicPayoffSurface mimic_surface(const Environment&, const Strategy&,
                                 std::span<const double> types,
                                 std::span<const double> candidates,
                                 Exec exec = Exec::Parallel);

}  // namespace sigw
