#include "scfp/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "scfp/numeric_text.hpp"

namespace scfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Entry {
  std::string value;
  std::size_t line;
};

using Entries = std::map<std::string, Entry>;  // "section.key"

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"space1", {"dim", "p", "cq", "tau"}},
      {"space2", {"dim", "p", "cq", "tau"}},
      {"operator", {"matrix"}},
      {"maps", {"T", "S", "S_matrix", "S_shift", "S_param", "S_box", "K_matrix", "K_shift"}},
      {"schedule", {"variant", "gamma", "alpha", "theta", "alpha_bounds", "theta_bound"}},
      {"init", {"x0", "x1", "base", "known_solution"}},
      {"stop", {"max_iter", "step_tol", "residual_tol"}},
      {"output", {"label"}},
  };
  return keys;
}

// Re-throws any ConfigError from `fn` with the entry's line and key attached.
template <class Fn>
auto at_line(const Entry& e, const std::string& key, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError& err) {
    throw ConfigError(e.line, key + ": " + err.what());
  }
}

std::vector<double> parse_vector(std::string_view text) {
  std::vector<double> out;
  for (const auto& piece : split_trimmed(text, ',')) out.push_back(parse_real(piece));
  return out;
}

MatrixRows parse_matrix(std::string_view text) {
  MatrixRows rows;
  for (const auto& row : split_trimmed(text, ';')) rows.push_back(parse_vector(row));
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw ConfigError("matrix rows have different lengths");
  }
  return rows;
}

BoxConfig parse_box(std::string_view text) {
  BoxConfig box;
  for (const auto& interval : split_trimmed(text, ',')) {
    const auto ends = split_trimmed(interval, ':');
    if (ends.size() != 2) throw ConfigError("interval '" + interval + "' is not of the form lo:hi");
    const double lo = parse_real(ends[0]);
    const double hi = parse_real(ends[1]);
    if (!(lo <= hi)) throw ConfigError("interval '" + interval + "' has lo > hi");
    box.lower.push_back(lo);
    box.upper.push_back(hi);
  }
  return box;
}

std::size_t parse_count(std::string_view text) {
  const double v = parse_real(text);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e12) {
    throw ConfigError("expected a nonnegative integer, got '" + std::string(trim(text)) + "'");
  }
  return static_cast<std::size_t>(v);
}

double parse_positive(std::string_view text) {
  const double v = parse_real(text);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("expected a positive finite number");
  return v;
}

double parse_nonnegative(std::string_view text) {
  const double v = parse_real(text);
  if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("expected a nonnegative finite number");
  return v;
}

std::string join(const std::vector<double>& v, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_real(v[i]);
  }
  return out;
}

std::string render_matrix(const MatrixRows& rows) {
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += "; ";
    out += join(rows[i]);
  }
  return out;
}

std::string render_box(const BoxConfig& box) {
  std::string out;
  for (std::size_t i = 0; i < box.lower.size(); ++i) {
    if (i) out += ", ";
    out += format_real(box.lower[i]) + ":" + format_real(box.upper[i]);
  }
  return out;
}

Eigen::MatrixXd to_matrix(const MatrixRows& rows, std::size_t n_rows, std::size_t n_cols, const std::string& key) {
  if (rows.size() != n_rows || (n_rows > 0 && rows.front().size() != n_cols)) {
    throw ConfigError(key + ": expected a " + std::to_string(n_rows) + "x" + std::to_string(n_cols) + " matrix");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
  for (std::size_t i = 0; i < n_rows; ++i) {
    for (std::size_t j = 0; j < n_cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

Eigen::VectorXd to_vector(const std::vector<double>& v, std::size_t n, const std::string& key) {
  if (v.size() != n) {
    throw ConfigError(key + ": expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

MapConfig parse_map_head(std::string_view text, bool allow_operator_kinds) {
  MapConfig m;
  const std::string_view t = trim(text);
  if (t == "identity") {
    m.kind = "identity";
  } else if (t.starts_with("scale:") && !allow_operator_kinds) {
    m.kind = "scale";
    m.scale = parse_real(t.substr(6));
    if (!(m.scale > 0.0 && m.scale <= 1.0)) throw ConfigError("scaling factor must lie in (0, 1]");
  } else if (t.starts_with("box:")) {
    m.kind = "box";
    m.box = parse_box(t.substr(4));
  } else if (allow_operator_kinds && (t == "resolvent" || t == "equilibrium")) {
    m.kind = std::string(t);
  } else {
    throw ConfigError("unknown map '" + std::string(t) + "'");
  }
  return m;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  Entries entries;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().contains(section)) throw ConfigError(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (section.empty()) throw ConfigError(line_no, "key '" + key + "' appears before any section");
    if (!schema().at(section).contains(key)) throw ConfigError(line_no, "unknown key '" + key + "' in [" + section + "]");
    const std::string full = section + "." + key;
    if (entries.contains(full)) throw ConfigError(line_no, "duplicate key '" + full + "'");
    entries.emplace(full, Entry{std::string(trim(line.substr(eq + 1))), line_no});
  }

  RunConfig c;
  auto get = [&](const std::string& key) -> const Entry* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto require = [&](const std::string& key) -> const Entry& {
    const Entry* e = get(key);
    if (!e) throw ConfigError("missing required key '" + key + "'");
    return *e;
  };

  for (auto [name, space] : {std::pair{"space1", &c.space1}, std::pair{"space2", &c.space2}}) {
    const std::string s(name);
    const Entry& dim = require(s + ".dim");
    space->dim = at_line(dim, s + ".dim", [&] {
      const auto d = parse_count(dim.value);
      if (d == 0) throw ConfigError("dimension must be positive");
      return d;
    });
    if (const Entry* e = get(s + ".p")) {
      space->p = at_line(*e, s + ".p", [&] {
        const double p = parse_real(e->value);
        if (!(p >= 2.0) || !std::isfinite(p)) throw ConfigError("exponent must satisfy 2 <= p < inf");
        return p;
      });
    }
    if (const Entry* e = get(s + ".cq")) space->cq = at_line(*e, s + ".cq", [&] { return parse_positive(e->value); });
    if (const Entry* e = get(s + ".tau")) space->tau = at_line(*e, s + ".tau", [&] { return parse_positive(e->value); });
  }

  const Entry& mat = require("operator.matrix");
  c.matrix = at_line(mat, "operator.matrix", [&] {
    auto m = parse_matrix(mat.value);
    if (m.size() != c.space2.dim || m.front().size() != c.space1.dim) {
      throw ConfigError("expected " + std::to_string(c.space2.dim) + " rows of " + std::to_string(c.space1.dim) +
                        " entries (space2.dim x space1.dim)");
    }
    return m;
  });

  if (const Entry* e = get("schedule.variant")) {
    c.variant = at_line(*e, "schedule.variant", [&] { return parse_variant(e->value); });
  }

  const Entry& t = require("maps.T");
  c.t_map = at_line(t, "maps.T", [&] { return parse_map_head(t.value, false); });
  const Entry& s = require("maps.S");
  c.s_map = at_line(s, "maps.S", [&] { return parse_map_head(s.value, true); });
  const bool s_has_operator = c.s_map.kind == "resolvent" || c.s_map.kind == "equilibrium";
  for (const char* key : {"maps.S_matrix", "maps.S_shift", "maps.S_param"}) {
    if (const Entry* e = get(key); e && !s_has_operator) {
      throw ConfigError(e->line, std::string(key) + " only applies when S is resolvent or equilibrium");
    }
  }
  if (const Entry* e = get("maps.S_box"); e && c.s_map.kind != "equilibrium") {
    throw ConfigError(e->line, "maps.S_box only applies when S is equilibrium");
  }
  if (s_has_operator) {
    const Entry& sm = require("maps.S_matrix");
    c.s_map.matrix = at_line(sm, "maps.S_matrix", [&] { return parse_matrix(sm.value); });
    const Entry& ss = require("maps.S_shift");
    c.s_map.shift = at_line(ss, "maps.S_shift", [&] { return parse_vector(ss.value); });
    if (const Entry* e = get("maps.S_param")) {
      c.s_map.param = at_line(*e, "maps.S_param", [&] { return parse_positive(e->value); });
    }
    if (const Entry* e = get("maps.S_box")) c.s_map.box = at_line(*e, "maps.S_box", [&] { return parse_box(e->value); });
  }
  for (const char* key : {"maps.K_matrix", "maps.K_shift"}) {
    if (const Entry* e = get(key); e && c.variant != Variant::inclusion) {
      throw ConfigError(e->line, std::string(key) + " only applies to the inclusion variant");
    }
  }
  if (const Entry* e = get("maps.K_matrix")) c.k_matrix = at_line(*e, "maps.K_matrix", [&] { return parse_matrix(e->value); });
  if (const Entry* e = get("maps.K_shift")) c.k_shift = at_line(*e, "maps.K_shift", [&] { return parse_vector(e->value); });

  auto rule = [&](const char* key, SequenceRule& target) {
    if (const Entry* e = get(key)) target = at_line(*e, key, [&] { return SequenceRule::parse(e->value); });
  };
  rule("schedule.gamma", c.schedule.gamma);
  rule("schedule.alpha", c.schedule.alpha);
  rule("schedule.theta", c.schedule.theta);
  if (c.schedule.alpha.is_constant()) {
    const double a = c.schedule.alpha(1);
    if (!(a > 0.0 && a < 1.0)) {
      throw ConfigError(get("schedule.alpha") ? get("schedule.alpha")->line : 0,
                        "schedule.alpha: alpha_n = " + format_real(a) + " must lie in (0, 1)");
    }
  }
  if (c.schedule.gamma.is_constant() && !(c.schedule.gamma(1) > 0.0)) {
    throw ConfigError(get("schedule.gamma") ? get("schedule.gamma")->line : 0, "schedule.gamma: gamma must be positive");
  }
  if (const Entry* e = get("schedule.alpha_bounds")) {
    c.schedule.alpha_bounds = at_line(*e, "schedule.alpha_bounds", [&] {
      const auto v = parse_vector(e->value);
      if (v.size() != 2 || !(0.0 < v[0] && v[0] <= v[1] && v[1] < 1.0)) {
        throw ConfigError("expected a, b with 0 < a <= b < 1");
      }
      return std::pair{v[0], v[1]};
    });
  }
  if (const Entry* e = get("schedule.theta_bound")) {
    c.schedule.theta_bound = at_line(*e, "schedule.theta_bound", [&] { return parse_nonnegative(e->value); });
  }

  auto point = [&](const Entry& e, const std::string& key) {
    return at_line(e, key, [&] {
      auto v = parse_vector(e.value);
      if (v.size() != c.space1.dim) {
        throw ConfigError("expected " + std::to_string(c.space1.dim) + " coordinates (space1.dim)");
      }
      for (double x : v) {
        if (!std::isfinite(x)) throw ConfigError("coordinates must be finite");
      }
      return v;
    });
  };
  c.x1 = point(require("init.x1"), "init.x1");
  if (const Entry* e = get("init.x0")) {
    c.x0 = point(*e, "init.x0");
  } else if (c.variant != Variant::baseline_ma) {
    throw ConfigError("missing required key 'init.x0'");
  }
  if (const Entry* e = get("init.base")) {
    c.base = at_line(*e, "init.base", [&] {
      auto b = parse_box(e->value);
      if (b.lower.size() != c.space1.dim) throw ConfigError("base box must have space1.dim intervals");
      return b;
    });
  }
  if (const Entry* e = get("init.known_solution")) c.known_solution = point(*e, "init.known_solution");

  if (const Entry* e = get("stop.max_iter")) {
    c.stop.max_iter = at_line(*e, "stop.max_iter", [&] {
      const auto n = parse_count(e->value);
      if (n < 1) throw ConfigError("max_iter must be at least 1");
      return n;
    });
  }
  if (const Entry* e = get("stop.step_tol")) {
    c.stop.step_tol = at_line(*e, "stop.step_tol", [&] { return parse_nonnegative(e->value); });
  }
  if (const Entry* e = get("stop.residual_tol")) {
    c.stop.residual_tol = at_line(*e, "stop.residual_tol", [&] { return parse_nonnegative(e->value); });
  }
  if (const Entry* e = get("output.label")) c.label = e->value;
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string render_config(const RunConfig& c) {
  std::ostringstream os;
  auto space = [&](const char* name, const SpaceConfig& s) {
    os << "[" << name << "]\n";
    os << "dim = " << s.dim << "\n";
    os << "p = " << format_real(s.p) << "\n";
    if (s.cq) os << "cq = " << format_real(*s.cq) << "\n";
    if (s.tau) os << "tau = " << format_real(*s.tau) << "\n";
    os << "\n";
  };
  space("space1", c.space1);
  space("space2", c.space2);
  os << "[operator]\nmatrix = " << render_matrix(c.matrix) << "\n\n";

  os << "[maps]\n";
  auto head = [&](const MapConfig& m) {
    if (m.kind == "scale") return "scale:" + format_real(m.scale);
    if (m.kind == "box") return "box:" + render_box(m.box);
    return m.kind;
  };
  os << "T = " << head(c.t_map) << "\n";
  os << "S = " << head(c.s_map) << "\n";
  if (c.s_map.kind == "resolvent" || c.s_map.kind == "equilibrium") {
    os << "S_matrix = " << render_matrix(c.s_map.matrix) << "\n";
    os << "S_shift = " << join(c.s_map.shift) << "\n";
    os << "S_param = " << format_real(c.s_map.param) << "\n";
    if (c.s_map.kind == "equilibrium" && !c.s_map.box.lower.empty()) os << "S_box = " << render_box(c.s_map.box) << "\n";
  }
  if (!c.k_matrix.empty()) os << "K_matrix = " << render_matrix(c.k_matrix) << "\n";
  if (!c.k_shift.empty()) os << "K_shift = " << join(c.k_shift) << "\n";
  os << "\n";

  os << "[schedule]\n";
  os << "variant = " << to_string(c.variant) << "\n";
  os << "gamma = " << c.schedule.gamma.to_string() << "\n";
  os << "alpha = " << c.schedule.alpha.to_string() << "\n";
  os << "theta = " << c.schedule.theta.to_string() << "\n";
  if (c.schedule.alpha_bounds) {
    os << "alpha_bounds = " << format_real(c.schedule.alpha_bounds->first) << ", "
       << format_real(c.schedule.alpha_bounds->second) << "\n";
  }
  if (c.schedule.theta_bound) os << "theta_bound = " << format_real(*c.schedule.theta_bound) << "\n";
  os << "\n";

  os << "[init]\n";
  if (!c.x0.empty()) os << "x0 = " << join(c.x0) << "\n";
  os << "x1 = " << join(c.x1) << "\n";
  if (c.base) os << "base = " << render_box(*c.base) << "\n";
  if (c.known_solution) os << "known_solution = " << join(*c.known_solution) << "\n";
  os << "\n";

  os << "[stop]\n";
  os << "max_iter = " << c.stop.max_iter << "\n";
  os << "step_tol = " << format_real(c.stop.step_tol) << "\n";
  os << "residual_tol = " << format_real(c.stop.residual_tol) << "\n";
  if (!c.label.empty()) os << "\n[output]\nlabel = " << c.label << "\n";
  return os.str();
}

RunConfig demo_config(Variant variant, double x0, double x1, const ScheduleSpec& schedule) {
  RunConfig c;
  c.space1.dim = 1;
  c.space2.dim = 2;
  c.matrix = {{0.5}, {1.0 / 3.0}};
  c.t_map.kind = "scale";
  c.t_map.scale = 0.25;
  c.s_map.kind = "box";
  c.s_map.box = BoxConfig{{0.0, -kInf}, {kInf, 0.0}};
  c.variant = variant;
  c.schedule = schedule;
  if (variant != Variant::baseline_ma) c.x0 = {x0};
  c.x1 = {x1};
  c.base = BoxConfig{{0.0}, {kInf}};
  c.known_solution = std::vector<double>{0.0};
  c.stop.max_iter = 24;
  return c;
}

BoxSet to_box(const BoxConfig& box) {
  return BoxSet(Eigen::Map<const Eigen::VectorXd>(box.lower.data(), static_cast<Eigen::Index>(box.lower.size())),
                Eigen::Map<const Eigen::VectorXd>(box.upper.data(), static_cast<Eigen::Index>(box.upper.size())));
}

BoxConfig from_box(const BoxSet& box) {
  return BoxConfig{std::vector<double>(box.lower().begin(), box.lower().end()),
                   std::vector<double>(box.upper().begin(), box.upper().end())};
}

ProblemSpec build_problem(const RunConfig& c) {
  auto keyed = [](const std::string& key, auto&& fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const ConfigError& e) {
      throw ConfigError(key + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(key + ": " + e.what());
    } catch (const NumericalError& e) {
      throw ConfigError(key + ": " + e.what());
    }
  };

  const SpaceSpec e1 = keyed("space1", [&] { return SpaceSpec(c.space1.dim, c.space1.p, c.space1.cq, c.space1.tau); });
  const SpaceSpec e2 = keyed("space2", [&] { return SpaceSpec(c.space2.dim, c.space2.p, c.space2.cq, c.space2.tau); });
  LinearOperator op = keyed("operator.matrix", [&] {
    return LinearOperator(to_matrix(c.matrix, e2.dim(), e1.dim(), "operator.matrix"), e1, e2);
  });

  auto box_or_whole = [](const BoxConfig& b, std::size_t dim) {
    return b.lower.empty() ? BoxSet::whole_space(dim) : to_box(b);
  };

  FixedPointMap t_map = keyed("maps.T", [&] {
    if (c.t_map.kind == "identity") return identity_map(e1);
    if (c.t_map.kind == "scale") return scaling_map(e1, c.t_map.scale);
    if (c.t_map.kind == "box") return projection_map(e1, to_box(c.t_map.box));
    throw ConfigError("T cannot be '" + c.t_map.kind + "'");
  });

  auto s_operator = [&] {
    return MonotoneLinearOp(to_matrix(c.s_map.matrix, e2.dim(), e2.dim(), "S_matrix"),
                            to_vector(c.s_map.shift, e2.dim(), "S_shift"));
  };
  FixedPointMap s_map = keyed("maps.S", [&] {
    if (c.s_map.kind == "identity") return identity_map(e2);
    if (c.s_map.kind == "box") return projection_map(e2, to_box(c.s_map.box));
    if (c.s_map.kind == "resolvent") return resolvent_linear(e2, s_operator(), c.s_map.param);
    if (c.s_map.kind == "equilibrium") {
      return equilibrium_resolvent(e2, s_operator(), box_or_whole(c.s_map.box, e2.dim()), c.s_map.param);
    }
    throw ConfigError("S cannot be '" + c.s_map.kind + "'");
  });

  if (c.variant == Variant::inclusion) {
    if (c.s_map.kind != "resolvent") throw ConfigError("maps.S: the inclusion variant needs S = resolvent");
    keyed("maps.K_matrix", [&] {
      const MonotoneLinearOp k = c.k_matrix.empty() ? MonotoneLinearOp::zero(e1.dim())
                                                    : MonotoneLinearOp(to_matrix(c.k_matrix, e1.dim(), e1.dim(), "K_matrix"),
                                                                       c.k_shift.empty()
                                                                           ? Eigen::VectorXd::Zero(static_cast<Eigen::Index>(e1.dim()))
                                                                           : to_vector(c.k_shift, e1.dim(), "K_shift"));
      auto maps = inclusion_maps(e1, e2, t_map, s_operator(), k, c.s_map.param);
      t_map = std::move(maps.first);
      s_map = std::move(maps.second);
      return 0;
    });
  }
  if (c.variant == Variant::equilibrium && c.s_map.kind != "equilibrium") {
    throw ConfigError("maps.S: the equilibrium variant needs S = equilibrium");
  }

  BoxSet base = keyed("init.base", [&] { return c.base ? to_box(*c.base) : BoxSet::whole_space(e1.dim()); });
  auto point = [&](const std::vector<double>& v, const char* key) {
    return keyed(key, [&] { return Point(e1, to_vector(v, e1.dim(), key)); });
  };
  Point x1 = point(c.x1, "init.x1");
  Point x0 = c.x0.empty() ? x1 : point(c.x0, "init.x0");
  std::optional<Point> known;
  if (c.known_solution) known = point(*c.known_solution, "init.known_solution");

  ProblemSpec problem{std::move(op),   std::move(t_map), std::move(s_map), std::move(base), std::move(x0),
                      std::move(x1),   c.schedule,       c.stop,           c.variant,       std::move(known)};
  keyed("init", [&] {
    initial_state(problem);
    return 0;
  });
  return problem;
}

}  // namespace scfp
