#include "sigwaste/ic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sigw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct RowScratch {
  std::vector<double> cand_action;   // A(theta_hat_j)
  std::vector<double> cand_benefit;  // V(theta_hat_j)
  // multiplicative fast path: C = D(A_j) * S(theta_i)
  std::vector<double> cand_difficulty;
  const MultiplicativeCost* mult = nullptr;
};

RowScratch precompute(const Environment& env, const Strategy& strategy,
                      std::span<const double> candidates) {
  RowScratch s;
  s.cand_action.resize(candidates.size());
  s.cand_benefit.resize(candidates.size());
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    s.cand_action[j] = strategy.action(candidates[j]);
    s.cand_benefit[j] = eval_benefit(env, candidates[j]);
  }
  if (const auto* m = std::get_if<MultiplicativeCost>(&env.cost)) {
    s.mult = m;
    s.cand_difficulty.resize(candidates.size());
    for (std::size_t j = 0; j < candidates.size(); ++j)
      s.cand_difficulty[j] = difficulty_value(m->difficulty, s.cand_action[j]);
  }
  return s;
}

double payoff_from_scratch(const Environment& env, const RowScratch& s,
                           std::size_t j, double theta, double strain_at_theta) {
  double cost;
  if (s.mult) {
    cost = s.cand_difficulty[j] * strain_at_theta;
  } else {
    cost = eval_cost(env, s.cand_action[j], theta);
  }
  if (std::isinf(cost)) return kNegInf;
  return s.cand_benefit[j] - cost;
}

struct RowResult {
  double gain = 0;
  double best_candidate = 0;
  double soc = kNegInf;  // second difference at the truthful candidate
  bool soc_checked = false;
};

RowResult scan_row(const Environment& env, const Strategy& strategy,
                   const RowScratch& s, std::span<const double> candidates,
                   double theta) {
  const double strain_at_theta =
      s.mult ? strain_value(s.mult->strain, theta) : 0.0;
  auto payoff = [&](std::size_t j) {
    return candidates[j] == 0.0
               ? 0.0
               : payoff_from_scratch(env, s, j, theta, strain_at_theta);
  };
  // opt-out: action 0, perceived as the lowest type, payoff exactly 0
  double best = 0.0;
  double best_cand = 0.0;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const double pi = payoff(j);
    if (pi > best) {
      best = pi;
      best_cand = candidates[j];
    }
  }
  const double truthful =
      theta == 0.0
          ? 0.0
          : eval_benefit(env, theta) -
                eval_cost(env, strategy.action(theta), theta);
  RowResult r;
  r.gain = best - truthful;
  r.best_candidate = best_cand;

  // discrete curvature around the truthful candidate
  auto it = std::lower_bound(candidates.begin(), candidates.end(), theta);
  if (it != candidates.end()) {
    std::size_t j = static_cast<std::size_t>(it - candidates.begin());
    if (j > 0 && theta - candidates[j - 1] < candidates[j] - theta) --j;
    if (j > 0 && j + 1 < candidates.size()) {
      const double lo = payoff(j - 1), mid = payoff(j), hi = payoff(j + 1);
      if (std::isfinite(lo) && std::isfinite(hi)) {
        r.soc = lo - 2.0 * mid + hi;
        r.soc_checked = true;
      }
    }
  }
  return r;
}

}  // namespace

double mimic_payoff(const Environment& env, const Strategy& strategy,
                    double theta_hat, double theta) {
  if (theta_hat < 0.0) throw std::domain_error("mimic_payoff: negative candidate");
  if (theta_hat == 0.0) return 0.0;
  const double cost = eval_cost(env, strategy.action(theta_hat), theta);
  if (std::isinf(cost)) return kNegInf;
  return eval_benefit(env, theta_hat) - cost;
}

BestResponse best_response(const Environment& env, const Strategy& strategy,
                           double theta, std::span<const double> candidates) {
  const RowScratch s = precompute(env, strategy, candidates);
  const RowResult r = scan_row(env, strategy, s, candidates, theta);
  BestResponse out;
  out.candidate = r.best_candidate;
  out.gain = r.gain;
  out.payoff = r.gain + (theta == 0.0
                             ? 0.0
                             : eval_benefit(env, theta) -
                                   eval_cost(env, strategy.action(theta), theta));
  return out;
}

ICReport verify_ic(const Environment& env, const Strategy& strategy,
                   std::span<const double> types,
                   std::span<const double> candidates, double eps, Exec exec) {
  if (types.empty() || candidates.empty())
    throw std::invalid_argument("verify_ic: empty grids");
  const double max_v = std::max(eval_benefit(env, candidates.back()),
                                eval_benefit(env, types.back()));
  ICReport report;
  report.eps = eps > 0.0 ? eps : 1e-6 * max_v;

  const RowScratch scratch = precompute(env, strategy, candidates);
  std::vector<RowResult> rows(types.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(types.size());
  if (exec == Exec::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i)
      rows[static_cast<std::size_t>(i)] =
          scan_row(env, strategy, scratch, candidates, types[static_cast<std::size_t>(i)]);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      rows[static_cast<std::size_t>(i)] =
          scan_row(env, strategy, scratch, candidates, types[static_cast<std::size_t>(i)]);
  }

  report.max_gain = -std::numeric_limits<double>::infinity();
  report.soc_worst = -std::numeric_limits<double>::infinity();
  const double soc_slack = 1e-12 * std::max(1.0, max_v);
  bool any_soc = false;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (rows[i].gain > report.max_gain) {
      report.max_gain = rows[i].gain;
      report.worst_type = types[i];
      report.worst_candidate = rows[i].best_candidate;
    }
    if (rows[i].soc_checked) {
      any_soc = true;
      if (rows[i].soc > report.soc_worst) {
        report.soc_worst = rows[i].soc;
        report.soc_worst_type = types[i];
      }
    }
  }
  report.pass = report.max_gain <= report.eps;
  report.soc_pass = !any_soc || report.soc_worst <= soc_slack;
  return report;
}

ICReport verify_ic(const Environment& env, const Strategy& strategy, double eps,
                   Exec exec) {
  const auto& knots = strategy.knots();
  std::vector<double> types;
  for (std::size_t i = 0; i < knots.size(); i += 4) types.push_back(knots[i]);
  if (types.back() != knots.back()) types.push_back(knots.back());
  return verify_ic(env, strategy, types, knots, eps, exec);
}

TypeDomain candidate_domain(double theta_bar, std::size_t type_points,
                            double span) {
  return TypeDomain::log_spaced(theta_bar, 4 * (type_points - 1) + 1, span);
}

MimicPayoffSurface mimic_surface(const Environment& env,
                                 const Strategy& strategy,
                                 std::span<const double> types,
                                 std::span<const double> candidates,
                                 Exec exec) {
  MimicPayoffSurface surface;
  surface.types.assign(types.begin(), types.end());
  surface.candidates.assign(candidates.begin(), candidates.end());
  surface.pi.resize(types.size() * candidates.size());
  const RowScratch scratch = precompute(env, strategy, candidates);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(types.size());

  auto fill_row = [&](std::ptrdiff_t i) {
    const double theta = types[static_cast<std::size_t>(i)];
    const double strain_at_theta =
        scratch.mult ? strain_value(scratch.mult->strain, theta) : 0.0;
    for (std::size_t j = 0; j < candidates.size(); ++j)
      surface.pi[static_cast<std::size_t>(i) * candidates.size() + j] =
          candidates[j] == 0.0
              ? 0.0
              : payoff_from_scratch(env, scratch, j, theta, strain_at_theta);
  };

  if (exec == Exec::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) fill_row(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) fill_row(i);
  }
  return surface;
}

}  // namespace sigw
