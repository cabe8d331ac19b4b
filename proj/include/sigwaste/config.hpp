#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "sigwaste/environment.hpp"
#include "sigwaste/equilibrium.hpp"

namespace sigw {

struct OutputConfig {
  std::string path;
  int precision = 12;
};

struct RunConfig {
  Environment env;
  std::size_t grid_points = 1024;
  SolverOptions solver;
  OutputConfig output;
};

// Parses the JSON run configuration. Schema (all keys optional unless noted):
//
//   benefit.stakes           positive number, default 1
//   benefit.shape            "isoelastic" | "power_of_cdf", default isoelastic
//   benefit.beta             positive, isoelastic shape, default 1
//   benefit.n, benefit.k     power_of_cdf shape (n required, >= 2)
//   cost.variant             "multiplicative" | "quadcubic" | "ratio" | "mixed"
//   cost.gamma               power difficulty exponent, default 1
//   cost.strain              "power" | "exponential", default power
//   cost.sigma               power strain exponent, default 1
//   cost.weights[], cost.gammas[], cost.sigmas[]   mixed variant (required)
//   domain.theta_bar         positive, default 1
//   domain.grid_points       integer >= 64, default 1024
//   solver.quad_tol, solver.ode_tol, solver.root_tol   positive
//   output.path, output.precision
//
// Throws ConfigError on unreadable files, malformed JSON, or invalid values.
RunConfig parse_config(const nlohmann::json&);
RunConfig load_config(const std::string& path);

}  // namespace sigw
