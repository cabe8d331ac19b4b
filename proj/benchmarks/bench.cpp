// Times the OpenMP kernels against their serial reference paths and checks
// that both produce bit-identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "sigwaste/auction.hpp"
#include "sigwaste/environment.hpp"
#include "sigwaste/equilibrium.hpp"
#include "sigwaste/ic.hpp"
#include "sigwaste/tournament.hpp"
#include "sigwaste/waste.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_ms(F&& f) {
  const auto t0 = Clock::now();
  f();
  const auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool same) {
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              same ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  long trials = 2000000;
  if (argc > 1) trials = std::atol(argv[1]);

#if defined(_OPENMP)
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel paths run serially\n");
#endif

  {
    sigw::TournamentSpec spec;
    spec.n = 4;
    sigw::MonteCarloReport serial, parallel;
    const double ts = time_ms(
        [&] { serial = sigw::simulate_tournament(spec, trials, 42, sigw::Exec::Serial); });
    const double tp = time_ms(
        [&] { parallel = sigw::simulate_tournament(spec, trials, 42, sigw::Exec::Parallel); });
    const bool same = serial.mean_cost == parallel.mean_cost &&
                      serial.se_cost == parallel.se_cost &&
                      serial.mean_benefit == parallel.mean_benefit &&
                      serial.ratio == parallel.ratio &&
                      serial.mean_winner_type == parallel.mean_winner_type;
    report("monte carlo tournament", ts, tp, same);
  }

  {
    sigw::Environment env =
        sigw::isoelastic_environment(1.0, 1.0, 1.0, 2.0, sigw::candidate_domain(1.0, 512));
    const sigw::Strategy strat = sigw::solve_multiplicative(env);
    sigw::ICReport serial, parallel;
    const double ts =
        time_ms([&] { serial = sigw::verify_ic(env, strat, -1.0, sigw::Exec::Serial); });
    const double tp =
        time_ms([&] { parallel = sigw::verify_ic(env, strat, -1.0, sigw::Exec::Parallel); });
    const bool same = serial.max_gain == parallel.max_gain &&
                      serial.worst_type == parallel.worst_type &&
                      serial.soc_worst == parallel.soc_worst;
    report("incentive-compat surface", ts, tp, same);
  }

  {
    sigw::Environment env = sigw::isoelastic_environment(1.0, 1.0, 1.0, 1.0);
    const std::vector<double> stakes{0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    const std::vector<double> gammas{0.5, 1.0, 2.0, 3.0, 4.0, 8.0};
    sigw::InvarianceReport serial, parallel;
    const double ts = time_ms(
        [&] { serial = sigw::invariance_sweep(env, stakes, gammas, sigw::Exec::Serial); });
    const double tp = time_ms(
        [&] { parallel = sigw::invariance_sweep(env, stakes, gammas, sigw::Exec::Parallel); });
    bool same = serial.max_w_deviation == parallel.max_w_deviation;
    for (std::size_t c = 0; same && c < serial.cells.size(); ++c)
      same = serial.cells[c].w == parallel.cells[c].w &&
             serial.cells[c].action == parallel.cells[c].action;
    report("stakes/difficulty sweep", ts, tp, same);
  }

  {
    const sigw::AuctionMap map = sigw::make_auction_map(1.0, 1.0, 3);
    sigw::McEstimate serial, parallel;
    const double ts = time_ms([&] {
      serial = sigw::mc_conditional_second_highest(map, 0.7, trials, 7, sigw::Exec::Serial);
    });
    const double tp = time_ms([&] {
      parallel = sigw::mc_conditional_second_highest(map, 0.7, trials, 7, sigw::Exec::Parallel);
    });
    const bool same = serial.estimate == parallel.estimate &&
                      serial.se == parallel.se && serial.kept == parallel.kept;
    report("order-statistic sampler", ts, tp, same);
  }

  return 0;
}
