#include "sigwaste/config.hpp"

#include <fstream>

#include "sigwaste/errors.hpp"

namespace sigw {

namespace {

using nlohmann::json;

double positive_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string(key) + ": expected a number");
  const double v = j.at(key).get<double>();
  if (!(v > 0.0)) throw ConfigError(std::string(key) + ": must be positive");
  return v;
}

std::vector<double> positive_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ConfigError(std::string("cost.") + key + ": expected an array");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number() || !(v.get<double>() > 0.0))
      throw ConfigError(std::string("cost.") + key + ": entries must be positive numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

BenefitSpec parse_benefit(const json& root) {
  const json j = root.value("benefit", json::object());
  BenefitSpec spec;
  spec.stakes = positive_number(j, "stakes", 1.0);
  const std::string shape = j.value("shape", "isoelastic");
  if (shape == "isoelastic") {
    spec.shape = IsoelasticBenefit{positive_number(j, "beta", 1.0)};
  } else if (shape == "power_of_cdf") {
    if (!j.contains("n")) throw ConfigError("benefit.n: required for power_of_cdf");
    const int n = j.at("n").get<int>();
    if (n < 2) throw ConfigError("benefit.n: must be >= 2");
    spec.shape = PowerOfCdfBenefit{n, positive_number(j, "k", 1.0)};
  } else {
    throw ConfigError("benefit.shape: unknown shape '" + shape + "'");
  }
  return spec;
}

CostSpec parse_cost(const json& root) {
  const json j = root.value("cost", json::object());
  const std::string variant = j.value("variant", "multiplicative");
  if (variant == "multiplicative") {
    MultiplicativeCost cost;
    cost.difficulty = PowerDifficulty{positive_number(j, "gamma", 1.0)};
    const std::string strain = j.value("strain", "power");
    if (strain == "power")
      cost.strain = PowerStrain{positive_number(j, "sigma", 1.0)};
    else if (strain == "exponential")
      cost.strain = ExponentialStrain{};
    else
      throw ConfigError("cost.strain: unknown strain '" + strain + "'");
    return cost;
  }
  if (variant == "quadcubic") return QuadCubicCost{};
  if (variant == "ratio") return RatioCostSpec{};
  if (variant == "mixed") {
    MixedIsoelasticCost cost;
    cost.weights = positive_array(j, "weights");
    cost.gammas = positive_array(j, "gammas");
    cost.sigmas = positive_array(j, "sigmas");
    if (cost.weights.size() != cost.gammas.size() ||
        cost.weights.size() != cost.sigmas.size() || cost.weights.empty())
      throw ConfigError("cost: mixed term lists must be nonempty and equal length");
    return cost;
  }
  throw ConfigError("cost.variant: unknown variant '" + variant + "'");
}

}  // namespace

RunConfig parse_config(const nlohmann::json& root) {
  try {
    RunConfig cfg;
    cfg.env.benefit = parse_benefit(root);
    cfg.env.cost = parse_cost(root);

    const json dom = root.value("domain", json::object());
    const double theta_bar = positive_number(dom, "theta_bar", 1.0);
    if (dom.contains("grid_points")) {
      const auto gp = dom.at("grid_points").get<long>();
      if (gp < 64) throw ConfigError("domain.grid_points: must be >= 64");
      cfg.grid_points = static_cast<std::size_t>(gp);
    }
    cfg.env.domain = TypeDomain::log_spaced(theta_bar, cfg.grid_points);

    const json solver = root.value("solver", json::object());
    cfg.solver.quad_rel_tol = positive_number(solver, "quad_tol", cfg.solver.quad_rel_tol);
    cfg.solver.ode_rel_tol = positive_number(solver, "ode_tol", cfg.solver.ode_rel_tol);
    cfg.solver.root_rel_tol = positive_number(solver, "root_tol", cfg.solver.root_rel_tol);

    const json out = root.value("output", json::object());
    cfg.output.path = out.value("path", "");
    cfg.output.precision = out.value("precision", 12);
    if (cfg.output.precision < 1 || cfg.output.precision > 17)
      throw ConfigError("output.precision: must lie in [1, 17]");
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: parse error in ") + path + ": " + e.what());
  }
  return parse_config(root);
}

}  // namespace sigw
