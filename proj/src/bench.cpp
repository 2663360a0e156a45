#include "scfp/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <sstream>

#include "scfp/diagnostics.hpp"
#include "scfp/numeric_text.hpp"

namespace scfp {

namespace {

std::string printf_format(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
}

// x_n for n = 0 .. last, absent where the method has no such iterate.
std::map<std::size_t, const Point*> iterates(const Trace& trace) {
  std::map<std::size_t, const Point*> out;
  if (trace.x0) out[0] = &*trace.x0;
  out[1] = &trace.x1;
  for (const auto& rec : trace.records) out[rec.n + 1] = &rec.x_next;
  return out;
}

std::string column_value(const Point& x) {
  return format_iterate(x.dim() == 1 ? x[0] : norm_p(x));
}

template <class Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    log << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

Trace run_config(const RunConfig& config, std::ostream& log, const std::string& name) {
  const Trace trace = run(build_problem(config));
  for (const auto& w : trace.warnings) log << name << ": warning: " << w << "\n";
  return trace;
}

}  // namespace

std::string format_iterate(double v) {
  if (std::isinf(v)) return format_real(v);
  if (v == std::floor(v) && std::abs(v) < 1e15) return printf_format("%.0f", v);
  return printf_format("%.15f", v);
}

std::string format_residual(double v) { return printf_format("%.14e", v); }

std::string ResultTable::to_csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += fields[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

ResultTable trace_table(const Trace& trace) {
  ResultTable table;
  const std::size_t dim = trace.x1.dim();
  table.header.push_back("n");
  if (dim == 1) {
    table.header.push_back("x_n");
  } else {
    for (std::size_t i = 1; i <= dim; ++i) table.header.push_back("x_n_" + std::to_string(i));
  }
  table.header.insert(table.header.end(), {"residual_S", "residual_T", "step_norm"});

  auto row = [&](std::size_t n, const Point& x) {
    std::vector<std::string> r{std::to_string(n)};
    for (std::size_t i = 0; i < dim; ++i) r.push_back(format_iterate(x[i]));
    return r;
  };
  if (trace.x0) {
    table.rows.push_back(row(0, *trace.x0));
    table.rows.back().insert(table.rows.back().end(), 3, "");
  }
  table.rows.push_back(row(1, trace.x1));
  table.rows.back().insert(table.rows.back().end(), 3, "");
  for (const auto& rec : trace.records) {
    auto r = row(rec.n + 1, rec.x_next);
    r.push_back(format_residual(rec.residual_s));
    r.push_back(format_residual(rec.residual_t));
    r.push_back(format_residual(rec.step_norm));
    table.rows.push_back(std::move(r));
  }
  return table;
}

ResultTable combined_table(const std::vector<Column>& columns) {
  ResultTable table;
  table.header.push_back("n");
  std::vector<std::map<std::size_t, const Point*>> series;
  std::size_t last = 0;
  for (const auto& c : columns) {
    table.header.push_back(c.label);
    series.push_back(iterates(c.trace));
    last = std::max(last, c.trace.last_index());
  }
  for (std::size_t n = 0; n <= last; ++n) {
    std::vector<std::string> r{std::to_string(n)};
    bool any = false;
    for (const auto& s : series) {
      const auto it = s.find(n);
      any = any || it != s.end();
      r.push_back(it == s.end() ? "" : column_value(*it->second));
    }
    if (any) table.rows.push_back(std::move(r));
  }
  return table;
}

std::string plot_data(const Trace& trace) {
  std::string out;
  for (const auto& [n, x] : iterates(trace)) out += std::to_string(n) + " " + column_value(*x) + "\n";
  return out;
}

std::vector<Column> reproduce_columns(std::string_view target) {
  std::vector<std::pair<std::string, RunConfig>> configs;
  if (target == "table1") {
    ScheduleSpec baseline;
    baseline.alpha = SequenceRule::rational(0, 1, 0, 7);
    const ScheduleSpec inertial = schedule_case(1, CaseSchedule::table_calibrated);
    configs = {{"ma_x1_6", demo_config(Variant::baseline_ma, 6.0, 6.0, baseline)},
               {"ma_x1_3", demo_config(Variant::baseline_ma, 3.0, 3.0, baseline)},
               {"alg_x0_x1_6", demo_config(Variant::banach, 6.0, 6.0, inertial)},
               {"alg_x0_x1_3", demo_config(Variant::banach, 3.0, 3.0, inertial)}};
  } else if (target == "table2") {
    for (int id = 1; id <= 4; ++id) {
      configs.emplace_back("case" + std::to_string(id),
                           demo_config(Variant::banach, 8.0, 6.0, schedule_case(id, CaseSchedule::table_calibrated)));
    }
  } else {
    throw ConfigError("unknown reproduction target '" + std::string(target) + "' (expected table1 or table2)");
  }

  std::vector<std::future<Trace>> jobs;
  for (const auto& [label, config] : configs) {
    jobs.push_back(std::async(std::launch::async, [config] { return run(build_problem(config)); }));
  }
  std::vector<Column> columns;
  for (std::size_t i = 0; i < configs.size(); ++i) columns.push_back(Column{configs[i].first, jobs[i].get()});
  return columns;
}

std::optional<std::size_t> first_within(const Trace& trace, const std::optional<Point>& solution, double threshold) {
  for (const auto& [n, x] : iterates(trace)) {
    const double dist = solution ? norm_p(*x - *solution) : norm_p(*x);
    if (dist <= threshold) return n;
  }
  return std::nullopt;
}

void apply_overrides(RunConfig& config, const Overrides& overrides) {
  if (overrides.max_iter) {
    if (*overrides.max_iter < 1) throw ConfigError("--max-iter must be at least 1");
    config.stop.max_iter = *overrides.max_iter;
  }
  if (overrides.tol) {
    if (!(*overrides.tol >= 0.0) || !std::isfinite(*overrides.tol)) {
      throw ConfigError("--tol must be a nonnegative finite number");
    }
    config.stop.residual_tol = *overrides.tol;
  }
}

int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& output, const Overrides& overrides,
            std::ostream& log) {
  return guarded(log, [&] {
    RunConfig config = load_config(config_path);
    apply_overrides(config, overrides);
    const Trace trace = run_config(config, log, config_path.filename().string());
    write_file(output, trace_table(trace).to_csv());
    log << "x_" << trace.last_index() << " reached (" << to_string(trace.reason) << "), table written to "
        << output.string() << "\n";
    return 0;
  });
}

int cmd_reproduce(std::string_view target, const std::filesystem::path& output_dir, std::ostream& log) {
  return guarded(log, [&] {
    const std::vector<Column> columns = reproduce_columns(target);
    const auto table_path = output_dir / (std::string(target) + ".csv");
    write_file(table_path, combined_table(columns).to_csv());
    for (const auto& c : columns) {
      write_file(output_dir / (std::string(target) + "_" + c.label + ".dat"), plot_data(c.trace));
    }
    log << "wrote " << table_path.string() << " and " << columns.size() << " plot-data files\n";
    return 0;
  });
}

int cmd_compare(const std::filesystem::path& config_a, const std::filesystem::path& config_b,
                const std::filesystem::path& output, const Overrides& overrides, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<Column> columns;
    std::string summary = "# first n within threshold:";
    for (const auto& path : {config_a, config_b}) {
      RunConfig config = load_config(path);
      apply_overrides(config, overrides);
      const ProblemSpec problem = build_problem(config);
      Trace trace = run(problem);
      for (const auto& w : trace.warnings) log << path.filename().string() << ": warning: " << w << "\n";
      const double threshold = config.stop.residual_tol > 0.0 ? config.stop.residual_tol : 1e-6;
      const auto hit = first_within(trace, problem.known_solution, threshold);
      std::string label = config.label.empty() ? path.stem().string() : config.label;
      summary += " " + label + "=" + (hit ? std::to_string(*hit) : "none") + " (threshold " + format_real(threshold) +
                 ", last n " + std::to_string(trace.last_index()) + ");";
      columns.push_back(Column{std::move(label), std::move(trace)});
    }
    summary.pop_back();
    write_file(output, combined_table(columns).to_csv() + summary + "\n");
    log << summary.substr(2) << "\n";
    return 0;
  });
}

int cmd_check(std::string_view suite, std::uint64_t seed, std::ostream& log) {
  return guarded(log, [&] {
    bool all = true;
    for (const auto& r : run_suite(suite, seed)) {
      log << (r.pass ? "PASS " : "FAIL ") << r.name << " [" << r.samples << " samples; " << r.detail << "]\n";
      all = all && r.pass;
    }
    log << suite << " suite (seed " << seed << "): " << (all ? "all passed" : "FAILURES") << "\n";
    return all ? 0 : 1;
  });
}

}  // namespace scfp
