#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sigwaste/auction.hpp"
#include "sigwaste/equilibrium.hpp"

using namespace sigw;

TEST_CASE("all-pay bid closed form") {
  const AuctionMap map = make_auction_map(1.0, 1.0, 2);
  CHECK(map.alpha() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(allpay_bid(map, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(allpay_bid(map, 0.0) == 0.0);

  const AuctionMap map2 = make_auction_map(2.0, 1.0, 3);
  CHECK(map2.alpha() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(allpay_bid(map2, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(allpay_bid(map, 1.5), std::domain_error);
  CHECK_THROWS_AS(allpay_bid(map, -0.1), std::domain_error);
  CHECK_THROWS_AS(make_auction_map(1.0, 1.0, 1), std::domain_error);
}

TEST_CASE("bid is strictly increasing in value") {
  const AuctionMap map = make_auction_map(2.0, 0.5, 3);
  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double v = i / 100.0;
    const double b = allpay_bid(map, v);
    CHECK(b > prev);
    prev = b;
  }
}

TEST_CASE("conditional second-highest value: both algebraic forms") {
  {
    const SecondHighestValue sh =
        conditional_second_highest(make_auction_map(1.0, 1.0, 2), 1.0);
    CHECK(sh.order_statistic_form == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sh.elasticity_form == doctest::Approx(0.5).epsilon(1e-15));
  }
  {
    const SecondHighestValue sh =
        conditional_second_highest(make_auction_map(2.0, 1.0, 3), 0.9);
    CHECK(sh.elasticity_form == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(sh.order_statistic_form == doctest::Approx(0.6).epsilon(1e-15));
  }
  // the identity alpha(N-1)/(alpha(N-1)+1) = beta/(beta+sigma) holds to
  // rounding for arbitrary parameters
  for (double beta : {0.5, 1.0, 2.0, 3.0})
    for (double sigma : {0.5, 1.0, 2.0})
      for (int n : {2, 3, 5, 7}) {
        const SecondHighestValue sh =
            conditional_second_highest(make_auction_map(beta, sigma, n), 0.73);
        CHECK(std::abs(sh.order_statistic_form - sh.elasticity_form) <= 1e-15);
      }
  CHECK_THROWS_AS(conditional_second_highest(make_auction_map(1.0, 1.0, 2), 0.0),
                  std::domain_error);
}

TEST_CASE("monte carlo oracle for the conditional expectation") {
  const AuctionMap map = make_auction_map(1.0, 1.0, 2);
  const McEstimate mc = mc_conditional_second_highest(map, 0.7, 1000000, 21);
  const double target = conditional_second_highest(map, 0.7).elasticity_form;
  CHECK(mc.kept > 500000);
  CHECK(std::abs(mc.estimate - target) <= 3.0 * mc.se);

  // a second configuration with N > 2 and non-unit alpha
  const AuctionMap map2 = make_auction_map(2.0, 1.0, 4);
  const McEstimate mc2 = mc_conditional_second_highest(map2, 0.8, 1000000, 22);
  const double target2 = conditional_second_highest(map2, 0.8).elasticity_form;
  CHECK(std::abs(mc2.estimate - target2) <= 3.0 * mc2.se);

  // determinism across executions and policies
  const McEstimate again = mc_conditional_second_highest(map, 0.7, 100000, 21);
  const McEstimate serial =
      mc_conditional_second_highest(map, 0.7, 100000, 21, Exec::Serial);
  CHECK(again.estimate == serial.estimate);
  CHECK(again.kept == serial.kept);
}

TEST_CASE("signaling bids equal all-pay bids on the value grid") {
  {
    const EquivalenceReport rep =
        verify_equivalence(1.0, 1.0, 1.0, 2, TypeDomain::log_spaced(1.0, 512));
    CHECK(rep.max_discrepancy <= 1e-9);
    // spot-check the closed forms b(theta) = theta^2/2 on the value grid
    for (std::size_t i = 0; i < rep.v.size(); i += 101)
      CHECK(rep.bid_closed_form[i] ==
            doctest::Approx(rep.v[i] * rep.v[i] / 2.0).epsilon(1e-12));
  }
  {
    const EquivalenceReport rep =
        verify_equivalence(2.0, 1.0, 2.0, 3, TypeDomain::log_spaced(1.0, 512));
    CHECK(rep.max_discrepancy <= 1e-6);
  }
  CHECK_THROWS_AS(
      verify_equivalence(1.0, 1.0, 1.0, 2, TypeDomain::log_spaced(2.0, 64)),
      std::invalid_argument);
}

TEST_CASE("waste recovered from the bid function") {
  for (double beta : {1.0, 2.0})
    for (double sigma : {0.5, 1.0})
      for (int n : {2, 4}) {
        const AuctionMap map = make_auction_map(beta, sigma, n);
        for (double v : {0.3, 0.8, 1.0}) {
          const double gross = v * std::pow(map.cdf(v), n - 1);
          CHECK(allpay_bid(map, v) / gross ==
                doctest::Approx(beta / (beta + sigma)).epsilon(1e-14));
        }
      }
}
