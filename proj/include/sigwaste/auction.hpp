#pragma once

#include <cstdint>
#include <vector>

#include "sigwaste/environment.hpp"
#include "sigwaste/exec.hpp"

namespace sigw {

// Translation of an isoelastic signaling environment (stakes 1, theta_bar 1)
// into a symmetric N-bidder all-pay auction: value v = theta^sigma with CDF
// G(v) = v^alpha on [0,1], alpha = beta/(sigma*(N-1)).
struct AuctionMap {
  double beta = 1.0;
  double sigma = 1.0;
  int n = 2;

  double alpha() const { return beta / (sigma * (n - 1)); }
  double value_of_type(double theta) const;
  double cdf(double v) const;
};

AuctionMap make_auction_map(double beta, double sigma, int n);

// Closed-form symmetric equilibrium bid: v * G(v)^(N-1) * beta/(beta+sigma).
double allpay_bid(const AuctionMap&, double v);

struct SecondHighestValue {
  double order_statistic_form = 0;  // v * alpha(N-1)/(alpha(N-1)+1)
  double elasticity_form = 0;       // v * beta/(beta+sigma)
};

// Expected highest rival value conditional on it being below v. The two
// algebraic forms are returned together and asserted equal to rounding.
SecondHighestValue conditional_second_highest(const AuctionMap&, double v);

struct McEstimate {
  double estimate = 0;
  double se = 0;
  long kept = 0;
};

// Monte Carlo oracle for the conditional expectation: samples the max of N-1
// draws from G and keeps those below v. Shares the counter-based RNG used by
// the tournament simulator; deterministic per seed.
McEstimate mc_conditional_second_highest(const AuctionMap&, double v,
                                         long draws, std::uint64_t seed,
                                         Exec exec = Exec::Parallel);

struct EquivalenceReport {
  std::vector<double> v;
  std::vector<double> bid_closed_form;
  std::vector<double> bid_from_signaling;
  double max_discrepancy = 0;
};

// Solves the signaling equilibrium with D(a) = a^gamma and stakes 1 on the
// given domain (theta_bar must be 1), maps b(theta) = D(A(theta)) onto the
// value grid v_i = theta_i^sigma, and compares against the closed-form bid.
EquivalenceReport verify_equivalence(double beta, double sigma, double gamma,
                                     int n, const TypeDomain& domain);

}  // namespace sigw
