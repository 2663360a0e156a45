#pragma once

// Run configuration files.
//
// A config is a sectioned key = value document. Blank lines and lines
// starting with '#' are ignored; keys and sections outside the grammar below
// are errors, as are repeated keys.
//
//   [space1] / [space2]   dim, p, cq, tau
//   [operator]            matrix      rows separated by ';', entries by ','
//   [maps]                T           identity | scale:<c> | box:<box>
//                         S           identity | box:<box> | resolvent | equilibrium
//                         S_matrix, S_shift, S_param, S_box
//                                     data of S (M, c, mu or r, feasible box)
//                         K_matrix, K_shift
//                                     operator K of the inclusion variant
//   [schedule]            variant, gamma, alpha, theta, alpha_bounds (a,b), theta_bound
//   [init]                x0, x1, base (box C_1), known_solution
//   [stop]                max_iter, step_tol, residual_tol
//   [output]              label
//
// A <box> is a comma-separated list of lo:hi intervals, e.g. "0:inf,-inf:0".
// Numbers may be written as fractions ("1/7") or inf / -inf.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scfp/solvers.hpp"

namespace scfp {

using MatrixRows = std::vector<std::vector<double>>;

struct SpaceConfig {
  std::size_t dim = 1;
  double p = 2.0;
  std::optional<double> cq;
  std::optional<double> tau;

  bool operator==(const SpaceConfig&) const = default;
};

struct BoxConfig {
  std::vector<double> lower;
  std::vector<double> upper;

  bool operator==(const BoxConfig&) const = default;
};

struct MapConfig {
  /// identity | scale | box | resolvent | equilibrium
  std::string kind = "identity";
  double scale = 1.0;
  BoxConfig box;
  MatrixRows matrix;
  std::vector<double> shift;
  double param = 1.0;

  bool operator==(const MapConfig&) const = default;
};

struct RunConfig {
  SpaceConfig space1;
  SpaceConfig space2;
  MatrixRows matrix;
  MapConfig t_map;
  MapConfig s_map;
  MatrixRows k_matrix;
  std::vector<double> k_shift;
  Variant variant = Variant::banach;
  ScheduleSpec schedule;
  std::vector<double> x0;
  std::vector<double> x1;
  std::optional<BoxConfig> base;
  std::optional<std::vector<double>> known_solution;
  StoppingRule stop;
  std::string label;

  bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError carrying the 1-based line of the offending entry.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

/// Builds the maps, operator and sets. Throws ConfigError naming the key at fault.
ProblemSpec build_problem(const RunConfig& config);

/// The one-dimensional benchmark problem: E1 = R, E2 = R^2, A x = (x/2, x/3),
/// T x = x/4, S = P_Q with Q = [0, inf) x (-inf, 0], C = [0, inf), solution
/// set {0} (recorded as the known solution). gamma = 1, alpha = 1/7; 24
/// iterations, so the last iterate is x_25. x0 is ignored by the baseline.
RunConfig demo_config(Variant variant, double x0, double x1, const ScheduleSpec& schedule);

BoxSet to_box(const BoxConfig& box);
BoxConfig from_box(const BoxSet& box);

}  // namespace scfp
