#pragma once

// Result tables, table reproduction and the subcommands of the scfp tool.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scfp/config.hpp"
#include "scfp/solvers.hpp"

namespace scfp {

/// Iterate coordinates: fixed-point with 15 decimals, as the published tables print them.
std::string format_iterate(double v);
/// Residuals and step norms: 15 significant digits.
std::string format_residual(double v);

/// Comma-separated table with a fixed header.
struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

/// n, x_n coordinates, residual_S, residual_T, step_norm. Rows 0 (when x0
/// is part of the method) and 1 carry the initial points and empty residuals;
/// the residuals on row n + 1 are those of the step that produced x_{n+1}.
ResultTable trace_table(const Trace& trace);

struct Column {
  std::string label;
  Trace trace;
};

/// n followed by one x_n column per trace (first coordinate for
/// one-dimensional problems, |x_n| otherwise). Missing entries are empty.
ResultTable combined_table(const std::vector<Column>& columns);

/// "n value" lines, one per available n.
std::string plot_data(const Trace& trace);

/// Runs the four Table 1 or Table 2 columns (concurrently). Throws ConfigError
/// for an unknown target.
std::vector<Column> reproduce_columns(std::string_view target);

/// Smallest n with |x_n - x*| <= threshold (|x_n| without a known solution).
std::optional<std::size_t> first_within(const Trace& trace, const std::optional<Point>& solution, double threshold);

struct Overrides {
  std::optional<std::size_t> max_iter;
  /// Replaces stop.residual_tol.
  std::optional<double> tol;
};

void apply_overrides(RunConfig& config, const Overrides& overrides);

// Subcommands. They return the process exit status: 0 success, 2 config
// error, 3 numerical failure; 1 for I/O failures and failed checks.
int cmd_run(const std::filesystem::path& config, const std::filesystem::path& output, const Overrides& overrides,
            std::ostream& log);
int cmd_reproduce(std::string_view target, const std::filesystem::path& output_dir, std::ostream& log);
int cmd_compare(const std::filesystem::path& config_a, const std::filesystem::path& config_b,
                const std::filesystem::path& output, const Overrides& overrides, std::ostream& log);
int cmd_check(std::string_view suite, std::uint64_t seed, std::ostream& log);

}  // namespace scfp
