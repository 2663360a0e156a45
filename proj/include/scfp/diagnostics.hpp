#pragma once

// Seeded invariant suites run by `scfp check`.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scfp {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::size_t samples = 0;
  /// Worst observed margin (negative means violated) or worst error, per check.
  double worst = 0.0;
  std::string detail;
};

std::vector<CheckResult> geometry_suite(std::uint64_t seed);
std::vector<CheckResult> operators_suite(std::uint64_t seed);
std::vector<CheckResult> solver_suite(std::uint64_t seed);

/// "geometry" | "operators" | "solver". Throws ConfigError for other names.
std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed);

}  // namespace scfp
