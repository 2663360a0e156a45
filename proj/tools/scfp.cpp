#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scfp/bench.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Inertial shrinking-projection solvers for split common fixed point problems"};
  app.require_subcommand(1);

  std::string config, config_b, output = "result.csv", target, suite;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_iter;
  std::optional<double> tol;
  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--max-iter", max_iter, "Override stop.max_iter");
    cmd->add_option("--tol", tol, "Override stop.residual_tol");
  };

  auto* run = app.add_subcommand("run", "Run one configuration and write its result table");
  run->add_option("--config", config, "Configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--output", output, "Output table (comma-separated)");
  add_overrides(run);

  auto* reproduce = app.add_subcommand("reproduce", "Regenerate a published result table and its plot data");
  reproduce->add_option("target", target, "table1 or table2")->required()->check(CLI::IsMember({"table1", "table2"}));
  std::string out_dir = ".";
  reproduce->add_option("--output", out_dir, "Output directory");

  auto* compare = app.add_subcommand("compare", "Run two configurations side by side");
  compare->add_option("--config", config, "First configuration")->required()->check(CLI::ExistingFile);
  compare->add_option("config_b", config_b, "Second configuration")->required()->check(CLI::ExistingFile);
  compare->add_option("--output", output, "Output table (comma-separated)");
  add_overrides(compare);

  auto* check = app.add_subcommand("check", "Run a seeded invariant suite");
  check->add_option("suite", suite, "geometry, operators or solver")
      ->required()
      ->check(CLI::IsMember({"geometry", "operators", "solver"}));
  check->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const scfp::Overrides overrides{max_iter, tol};
  if (*run) return scfp::cmd_run(config, output, overrides, std::cerr);
  if (*reproduce) return scfp::cmd_reproduce(target, out_dir, std::cerr);
  if (*compare) return scfp::cmd_compare(config, config_b, output, overrides, std::cerr);
  return scfp::cmd_check(suite, seed, std::cout);
}
