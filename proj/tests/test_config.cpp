#include <doctest.h>

#include <filesystem>
#include <limits>
#include <string>

#include "oracles.hpp"
#include "scfp/config.hpp"
#include "scfp/numeric_text.hpp"

using namespace scfp;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

const std::string kBenchmark = R"(# benchmark
[space1]
dim = 1
p = 2

[space2]
dim = 2
p = 2

[operator]
matrix = 1/2; 1/3

[maps]
T = scale:1/4
S = box:0:inf, -inf:0

[schedule]
variant = banach
gamma = const:1
alpha = const:1/7
theta = const:1/5

[init]
x0 = 6
x1 = 6
base = 0:inf
known_solution = 0

[stop]
max_iter = 24
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

std::size_t error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return 0;
}

std::vector<double> random_vector(oracle::Rng& rng, std::size_t n) {
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.uniform(-5, 5));
  return v;
}

MatrixRows random_matrix(oracle::Rng& rng, std::size_t rows, std::size_t cols) {
  MatrixRows m;
  for (std::size_t r = 0; r < rows; ++r) m.push_back(random_vector(rng, cols));
  return m;
}

BoxConfig random_box(oracle::Rng& rng, std::size_t n) {
  BoxConfig b;
  for (std::size_t i = 0; i < n; ++i) {
    b.lower.push_back(rng.uniform(0, 1) < 0.3 ? -inf : rng.uniform(-6, -1));
    b.upper.push_back(rng.uniform(0, 1) < 0.3 ? inf : rng.uniform(1, 6));
  }
  return b;
}

SequenceRule random_rule(oracle::Rng& rng, double lo, double hi) {
  if (rng.uniform(0, 1) < 0.5) return SequenceRule::constant(rng.uniform(lo, hi));
  return SequenceRule::rational(rng.uniform(0, 1), rng.uniform(0.5, 2), rng.uniform(1, 3), rng.uniform(1, 4));
}

RunConfig random_config(oracle::Rng& rng) {
  RunConfig c;
  c.variant = static_cast<Variant>(rng.integer(0, 4));
  const bool hilbert_only = c.variant != Variant::banach && c.variant != Variant::baseline_ma;
  c.space1.dim = static_cast<std::size_t>(rng.integer(1, 3));
  c.space2.dim = static_cast<std::size_t>(rng.integer(1, 3));
  c.space1.p = c.space2.p = hilbert_only || rng.uniform(0, 1) < 0.5 ? 2.0 : rng.uniform(2, 6);
  if (rng.uniform(0, 1) < 0.5) c.space2.cq = rng.uniform(1, 3);
  if (rng.uniform(0, 1) < 0.5) c.space1.tau = rng.uniform(0.1, 0.5);
  c.matrix = random_matrix(rng, c.space2.dim, c.space1.dim);
  switch (rng.integer(0, 2)) {
    case 0: c.t_map.kind = "identity"; break;
    case 1: c.t_map.kind = "scale"; c.t_map.scale = rng.uniform(0.01, 1); break;
    default: c.t_map.kind = "box"; c.t_map.box = random_box(rng, c.space1.dim);
  }
  if (c.variant == Variant::inclusion) {
    c.s_map.kind = "resolvent";
  } else if (c.variant == Variant::equilibrium) {
    c.s_map.kind = "equilibrium";
    c.s_map.box = random_box(rng, c.space2.dim);
  } else {
    c.s_map.kind = rng.uniform(0, 1) < 0.5 ? "identity" : "box";
    if (c.s_map.kind == "box") c.s_map.box = random_box(rng, c.space2.dim);
  }
  if (c.s_map.kind == "resolvent" || c.s_map.kind == "equilibrium") {
    c.s_map.matrix = random_matrix(rng, c.space2.dim, c.space2.dim);
    c.s_map.shift = random_vector(rng, c.space2.dim);
    c.s_map.param = rng.uniform(0.1, 2);
  }
  if (c.variant == Variant::inclusion) {
    c.k_matrix = random_matrix(rng, c.space1.dim, c.space1.dim);
    c.k_shift = random_vector(rng, c.space1.dim);
  }
  c.schedule.gamma = c.variant == Variant::baseline_ma ? SequenceRule::constant(rng.uniform(0.1, 2))
                                                       : random_rule(rng, 0.1, 2);
  c.schedule.alpha = random_rule(rng, 0.05, 0.95);
  c.schedule.theta = random_rule(rng, -1, 1);
  if (rng.uniform(0, 1) < 0.5) c.schedule.alpha_bounds = std::pair{rng.uniform(0.01, 0.2), rng.uniform(0.3, 0.99)};
  if (rng.uniform(0, 1) < 0.5) c.schedule.theta_bound = rng.uniform(0, 3);
  if (c.variant != Variant::baseline_ma) c.x0 = random_vector(rng, c.space1.dim);
  c.x1 = random_vector(rng, c.space1.dim);
  if (rng.uniform(0, 1) < 0.5) c.base = random_box(rng, c.space1.dim);
  if (rng.uniform(0, 1) < 0.5) c.known_solution = random_vector(rng, c.space1.dim);
  c.stop.max_iter = static_cast<std::size_t>(rng.integer(1, 1000));
  c.stop.step_tol = rng.uniform(0, 1) < 0.5 ? 0.0 : rng.uniform(0, 1e-3);
  c.stop.residual_tol = rng.uniform(0, 1) < 0.5 ? 0.0 : rng.uniform(0, 1e-3);
  if (rng.uniform(0, 1) < 0.5) c.label = "run" + std::to_string(rng.integer(0, 999));
  return c;
}

}  // namespace

TEST_CASE("numbers") {
  CHECK(parse_real("1/7") == 1.0 / 7);
  CHECK(parse_real(" -3e-2 ") == -0.03);
  CHECK(parse_real("-inf") == -inf);
  CHECK_THROWS_AS(parse_real("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_real("2x"), ConfigError);
  CHECK_THROWS_AS(parse_real(""), ConfigError);
  oracle::Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    const double v = rng.uniform(-1e6, 1e6) * std::pow(10.0, rng.integer(-20, 20));
    CHECK(parse_real(format_real(v)) == v);
  }
}

TEST_CASE("the benchmark config parses") {
  const RunConfig c = parse_config(kBenchmark);
  const ScheduleSpec calibrated = schedule_case(1, CaseSchedule::table_calibrated);
  RunConfig expected = demo_config(Variant::banach, 6, 6, calibrated);
  expected.schedule = c.schedule;
  CHECK(c == expected);
  for (std::size_t n = 1; n <= 30; ++n) {
    CHECK(c.schedule.gamma(n) == calibrated.gamma(n));
    CHECK(c.schedule.alpha(n) == calibrated.alpha(n));
    CHECK(c.schedule.theta(n) == calibrated.theta(n));
  }
  CHECK(c.matrix == MatrixRows{{0.5}, {1.0 / 3}});
  CHECK(c.s_map.box.upper[1] == 0.0);
  const ProblemSpec p = build_problem(c);
  CHECK(p.x0[0] == 6.0);
  CHECK(p.known_solution.has_value());
}

TEST_CASE("render and parse round trip") {
  oracle::Rng rng(77);
  for (int k = 0; k < 500; ++k) {
    const RunConfig c = random_config(rng);
    const std::string text = render_config(c);
    const RunConfig back = parse_config(text);
    CHECK(back == c);
    CHECK(render_config(back) == text);
  }
}

TEST_CASE("shipped configs round trip and build") {
  const std::filesystem::path dir = SCFP_CONFIG_DIR;
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".cfg") continue;
    ++seen;
    INFO(entry.path().string());
    const RunConfig c = load_config(entry.path());
    CHECK(parse_config(render_config(c)) == c);
    CHECK_NOTHROW(build_problem(c));
  }
  CHECK(seen >= 5);
}

TEST_CASE("errors carry the line number") {
  CHECK(error_line(replace(kBenchmark, "alpha = const:1/7", "alpha = const:1.5")) == 20);
  CHECK(error_line(replace(kBenchmark, "max_iter = 24", "max_iter = 0")) == 30);
  CHECK(error_line(replace(kBenchmark, "max_iter = 24", "max_iter = 24\nmax_iter = 3")) == 31);
  CHECK(error_line(replace(kBenchmark, "p = 2\n\n[space2]", "p = 2\nwidth = 3\n\n[space2]")) == 5);
  CHECK(error_line(replace(kBenchmark, "[stop]", "[halt]")) == 29);
  CHECK(error_line("dim = 1\n") == 1);
  CHECK(error_line(replace(kBenchmark, "x1 = 6", "x1 = six")) == 25);
  CHECK(error_line(replace(kBenchmark, "matrix = 1/2; 1/3", "matrix = 1/2, 1; 1/3")) == 11);

  try {
    parse_config(replace(kBenchmark, "alpha = const:1/7", "alpha = const:1.5"));
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
  }
}

TEST_CASE("missing and misplaced keys") {
  CHECK_THROWS_AS(parse_config(replace(kBenchmark, "x1 = 6\n", "")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(kBenchmark, "x0 = 6\n", "")), ConfigError);
  CHECK_NOTHROW(parse_config(replace(replace(kBenchmark, "x0 = 6\n", ""), "variant = banach", "variant = baseline_ma")));
  CHECK_THROWS_AS(parse_config(replace(kBenchmark, "T = scale:1/4", "T = scale:1/4\nK_matrix = 1")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(kBenchmark, "T = scale:1/4", "T = scale:1/4\nS_param = 1")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(kBenchmark, "p = 2\n\n[space2]", "p = 1.5\n\n[space2]")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(kBenchmark, "T = scale:1/4", "T = scale:2")), ConfigError);
  CHECK_THROWS_AS(parse_config(replace(kBenchmark, "T = scale:1/4", "T = rotate")), ConfigError);
}

TEST_CASE("problem construction reports the key at fault") {
  RunConfig c = parse_config(kBenchmark);
  c.x0 = {-1};
  CHECK_THROWS_AS(build_problem(c), ConfigError);
  c = parse_config(kBenchmark);
  c.variant = Variant::equilibrium;
  try {
    build_problem(c);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("maps.S") != std::string::npos);
  }
}
