#include "sigwaste/auction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sigwaste/equilibrium.hpp"
#include "sigwaste/errors.hpp"
#include "sigwaste/rng.hpp"

namespace sigw {

double AuctionMap::value_of_type(double theta) const {
  return std::pow(theta, sigma);
}

double AuctionMap::cdf(double v) const {
  if (v < 0.0 || v > 1.0) throw std::domain_error("AuctionMap::cdf: v outside [0,1]");
  return std::pow(v, alpha());
}

AuctionMap make_auction_map(double beta, double sigma, int n) {
  if (!(beta > 0.0) || !(sigma > 0.0))
    throw std::domain_error("auction map: beta and sigma must be positive");
  if (n < 2) throw std::domain_error("auction map: need at least two bidders");
  return AuctionMap{beta, sigma, n};
}

double allpay_bid(const AuctionMap& map, double v) {
  if (v < 0.0 || v > 1.0) throw std::domain_error("allpay_bid: v outside [0,1]");
  if (v == 0.0) return 0.0;
  return v * std::pow(map.cdf(v), map.n - 1) * map.beta / (map.beta + map.sigma);
}

SecondHighestValue conditional_second_highest(const AuctionMap& map, double v) {
  if (!(v > 0.0) || v > 1.0)
    throw std::domain_error("conditional_second_highest: v outside (0,1]");
  const double an = map.alpha() * (map.n - 1);
  SecondHighestValue out;
  out.order_statistic_form = v * an / (an + 1.0);
  out.elasticity_form = v * map.beta / (map.beta + map.sigma);
  return out;
}

McEstimate mc_conditional_second_highest(const AuctionMap& map, double v,
                                         long draws, std::uint64_t seed,
                                         Exec exec) {
  if (!(v > 0.0) || v > 1.0)
    throw std::domain_error("mc_conditional_second_highest: v outside (0,1]");
  if (draws < 1) throw std::domain_error("mc_conditional_second_highest: draws >= 1");

  const double inv_alpha = 1.0 / map.alpha();
  std::vector<double> maxima(static_cast<std::size_t>(draws));
  std::vector<unsigned char> keep(static_cast<std::size_t>(draws));
  auto run_draw = [&](long d) {
    Philox2x64 rng(seed, static_cast<std::uint64_t>(d));
    double m = 0.0;
    for (int j = 0; j < map.n - 1; ++j) {
      const double x = std::pow(rng.next_double(), inv_alpha);
      if (x > m) m = x;
    }
    maxima[static_cast<std::size_t>(d)] = m;
    keep[static_cast<std::size_t>(d)] = m < v ? 1 : 0;
  };

  if (exec == Exec::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (long d = 0; d < draws; ++d) run_draw(d);
  } else {
    for (long d = 0; d < draws; ++d) run_draw(d);
  }

  double sum = 0, sum2 = 0;
  long kept = 0;
  for (long d = 0; d < draws; ++d) {
    if (!keep[static_cast<std::size_t>(d)]) continue;
    const double m = maxima[static_cast<std::size_t>(d)];
    sum += m;
    sum2 += m * m;
    ++kept;
  }
  McEstimate out;
  out.kept = kept;
  if (kept < 2) {
    out.estimate = kept == 1 ? sum : std::numeric_limits<double>::quiet_NaN();
    out.se = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double kn = static_cast<double>(kept);
  out.estimate = sum / kn;
  const double var = std::max(0.0, (sum2 - kn * out.estimate * out.estimate) / (kn - 1.0));
  out.se = std::sqrt(var / kn);
  return out;
}

EquivalenceReport verify_equivalence(double beta, double sigma, double gamma,
                                     int n, const TypeDomain& domain) {
  if (std::abs(domain.theta_bar - 1.0) > 1e-12)
    throw std::invalid_argument("verify_equivalence: requires theta_bar = 1");
  const AuctionMap map = make_auction_map(beta, sigma, n);
  Environment env = isoelastic_environment(1.0, beta, sigma, gamma, domain);
  const Strategy strat = solve_multiplicative(env);

  EquivalenceReport report;
  const auto& th = strat.knots();
  report.v.resize(th.size());
  report.bid_closed_form.resize(th.size());
  report.bid_from_signaling.resize(th.size());
  for (std::size_t i = 0; i < th.size(); ++i) {
    const double v = map.value_of_type(th[i]);
    report.v[i] = v;
    report.bid_closed_form[i] = allpay_bid(map, std::min(v, 1.0));
    report.bid_from_signaling[i] = std::pow(strat.actions()[i], gamma);
    const double d = std::abs(report.bid_closed_form[i] - report.bid_from_signaling[i]);
    if (d > report.max_discrepancy) report.max_discrepancy = d;
  }
  return report;
}

}  // namespace sigw
