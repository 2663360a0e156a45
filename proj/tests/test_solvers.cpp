#include <doctest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "scfp/config.hpp"
#include "scfp/solvers.hpp"

using namespace scfp;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

ProblemSpec demo(Variant v, double x0, double x1, const ScheduleSpec& schedule, std::size_t max_iter = 24) {
  RunConfig config = demo_config(v, x0, x1, schedule);
  config.stop.max_iter = max_iter;
  return build_problem(config);
}

oracle::DemoParams replay_params(const ScheduleSpec& s) {
  return {[s](std::size_t n) { return s.gamma(n); }, [s](std::size_t n) { return s.alpha(n); },
          [s](std::size_t n) { return s.theta(n); }};
}

}  // namespace

TEST_CASE("schedule cases") {
  const ScheduleSpec c1 = schedule_case(1);
  CHECK(c1.gamma(5) == 1.0);
  CHECK(c1.alpha(5) == doctest::Approx(1.0 / 7).epsilon(1e-15));
  CHECK(c1.theta(5) == 0.5);
  CHECK(schedule_case(4).theta(1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(schedule_case(2).gamma(2) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(schedule_case(3).alpha(3) == doctest::Approx(3.0 / 26).epsilon(1e-15));
  CHECK(schedule_case(1, CaseSchedule::table_calibrated).theta(9) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(schedule_case(4, CaseSchedule::table_calibrated) == schedule_case(4));
  CHECK_THROWS_AS(schedule_case(5), ConfigError);
  CHECK_THROWS_AS(schedule_case(0), ConfigError);
}

TEST_CASE("sequence rules") {
  CHECK(SequenceRule::parse("rat:2,3,2,0")(2) == doctest::Approx(1.75));
  CHECK(SequenceRule::parse("const:1/7")(100) == doctest::Approx(1.0 / 7).epsilon(1e-15));
  CHECK(SequenceRule::parse(SequenceRule::rational(1, 0, 7, 5).to_string()) == SequenceRule::rational(1, 0, 7, 5));
  CHECK_THROWS_AS(SequenceRule::parse("rat:1,2,3"), ConfigError);
  CHECK_THROWS_AS(SequenceRule::parse("linear:1"), ConfigError);
  CHECK_THROWS_AS(SequenceRule::rational(1, 0, 1, -2)(2), ConfigError);
}

TEST_CASE("step-size upper bound") {
  const SpaceSpec e1 = SpaceSpec::hilbert(1), e2 = SpaceSpec::hilbert(2);
  Eigen::MatrixXd m(2, 1);
  m << 0.5, 1.0 / 3;
  const double norm = oracle::grid_operator_norm(m);
  CHECK(gamma_upper_bound(e2, LinearOperator(m, e1, e2)) == doctest::Approx(2 / (norm * norm)).epsilon(1e-10));
  CHECK(gamma_upper_bound(e2, LinearOperator(m, e1, e2)) == doctest::Approx(72.0 / 13).epsilon(1e-12));
  CHECK(gamma_upper_bound(e2, LinearOperator::identity(e2)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(gamma_upper_bound(e2, LinearOperator(Eigen::MatrixXd::Zero(2, 2), e2, e2)) == inf);
}

TEST_CASE("first inertial step on the benchmark") {
  const ProblemSpec problem = demo(Variant::banach, 6, 6, schedule_case(1));
  SolverState state = initial_state(problem);
  const IterateRecord rec = step_banach(problem, state);
  CHECK(rec.n == 1);
  CHECK(rec.w[0] == 6.0);
  CHECK(rec.z[0] == doctest::Approx(16.0 / 3).epsilon(1e-15));
  CHECK(rec.y[0] == doctest::Approx(40.0 / 21).epsilon(1e-15));
  CHECK(rec.x_next[0] == doctest::Approx(76.0 / 21).epsilon(1e-15));
  CHECK(std::abs(rec.x_next[0] - 3.619047619047619) <= 1e-15);
  const double brute = oracle::grid_argmin_1d(
      [](double u) { return u >= 0 && u <= 76.0 / 21 && u <= 17.0 / 3 ? 0.5 * (6 - u) * (6 - u) : 1e300; }, 0, 10);
  CHECK(rec.x_next[0] == doctest::Approx(brute).epsilon(1e-9));
  CHECK(state.n == 2);
}

TEST_CASE("without inertia the first extrapolation is x1") {
  ScheduleSpec s;
  s.gamma = SequenceRule::constant(1);
  s.alpha = SequenceRule::constant(1.0 / 7);
  s.theta = SequenceRule::constant(0);
  const ProblemSpec problem = demo(Variant::banach, 2.5, 2.5, s);
  SolverState state = initial_state(problem);
  CHECK(step(problem, state).w == problem.x1);
}

TEST_CASE("benchmark trajectories agree with a hand-written replay") {
  for (auto flavor : {CaseSchedule::nominal, CaseSchedule::table_calibrated}) {
    for (int id = 1; id <= 4; ++id) {
      for (auto [x0, x1] : {std::pair{8.0, 6.0}, std::pair{6.0, 6.0}, std::pair{3.0, 3.0}}) {
        const ScheduleSpec s = schedule_case(id, flavor);
        const Trace trace = run(demo(Variant::banach, x0, x1, s));
        const std::vector<double> ref = oracle::demo_replay(x0, x1, replay_params(s), 24);
        REQUIRE(trace.last_index() == 25);
        for (std::size_t n = 2; n <= 25; ++n) {
          CHECK(trace.iterate(n)[0] == doctest::Approx(ref[n]).epsilon(1e-12).scale(1e-3));
        }
      }
    }
  }
}

TEST_CASE("published benchmark values") {
  const ScheduleSpec calibrated = schedule_case(1, CaseSchedule::table_calibrated);
  const Trace six = run(demo(Variant::banach, 6, 6, calibrated));
  CHECK(std::abs(six.iterate(2)[0] - 3.619047619047619) <= 1e-12);
  CHECK(std::abs(six.iterate(6)[0] - 0.211743715446802) <= 1e-12);
  CHECK(std::abs(six.iterate(25)[0] - 0.000000098252052) <= 1e-12);
  const Trace three = run(demo(Variant::hilbert, 3, 3, calibrated));
  CHECK(std::abs(three.iterate(2)[0] - 1.809523809523809) <= 1e-12);

  const Trace case4 = run(demo(Variant::banach, 8, 6, schedule_case(4)));
  CHECK(std::abs(case4.iterate(2)[0] - 2.606770833333333) <= 1e-12);

  ScheduleSpec baseline;
  baseline.alpha = SequenceRule::constant(1.0 / 7);
  CHECK(std::abs(run(demo(Variant::baseline_ma, 0, 6, baseline)).iterate(2)[0] - 3.952380952380953) <= 1e-12);
  CHECK(std::abs(run(demo(Variant::baseline_ma, 0, 3, baseline)).iterate(2)[0] - 1.976190476190476) <= 1e-12);
}

TEST_CASE("max_iter = 1 yields one record") {
  const Trace t = run(demo(Variant::banach, 8, 6, schedule_case(2), 1));
  CHECK(t.records.size() == 1);
  CHECK(t.last_index() == 2);
  CHECK(t.reason == Termination::max_iter);
}

TEST_CASE("starting at the solution is stationary") {
  for (Variant v : {Variant::banach, Variant::hilbert, Variant::baseline_ma}) {
    const Trace t = run(demo(v, 0, 0, schedule_case(1)));
    for (const auto& rec : t.records) CHECK(rec.x_next[0] == 0.0);
  }
}

TEST_CASE("zero operator leaves the gradient step idle") {
  const SpaceSpec e = SpaceSpec::hilbert(2);
  ScheduleSpec s;
  s.gamma = SequenceRule::constant(3.0);
  StoppingRule stop;
  stop.max_iter = 6;
  const ProblemSpec problem{LinearOperator(Eigen::MatrixXd::Zero(2, 2), e, e),
                            scaling_map(e, 0.5),
                            identity_map(e),
                            BoxSet::whole_space(2),
                            make_point(e, {1, 2}),
                            make_point(e, {3, -1}),
                            s,
                            stop,
                            Variant::hilbert,
                            std::nullopt};
  for (const auto& rec : run(problem).records) CHECK(rec.z == rec.w);
}

TEST_CASE("Banach steps at p = 2 coincide with Hilbert steps") {
  oracle::Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    const ProblemSpec a = fixtures::random_problem(rng, 2.0, Variant::banach);
    ProblemSpec b = a;
    b.variant = Variant::hilbert;
    const Trace ta = run(a), tb = run(b);
    REQUIRE(ta.records.size() == tb.records.size());
    for (std::size_t i = 0; i < ta.records.size(); ++i) {
      CHECK((ta.records[i].x_next.coords() - tb.records[i].x_next.coords()).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
  }
}

TEST_CASE("the Hilbert steppers reject p != 2") {
  oracle::Rng rng(43);
  const ProblemSpec p4 = fixtures::random_problem(rng, 4.0, Variant::hilbert);
  CHECK_THROWS_AS(run(p4), ConfigError);
}

TEST_CASE("Banach iteration for p = 4 keeps the solution and descends") {
  oracle::Rng rng(47);
  for (int k = 0; k < 6; ++k) {
    const ProblemSpec problem = fixtures::random_problem(rng, 4.0, Variant::banach);
    const Trace t = run(problem);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(problem.x0.dim()));
    double previous = 0.0;
    for (const auto& rec : t.records) {
      REQUIRE(rec.solution_slack.has_value());
      CHECK(*rec.solution_slack >= -1e-9);
      CHECK(oracle::bregman(rec.y.coords(), zero, 4) <= oracle::bregman(rec.z.coords(), zero, 4) + 1e-9);
      CHECK(oracle::bregman(rec.z.coords(), zero, 4) <= oracle::bregman(rec.w.coords(), zero, 4) + 1e-9);
      const double d = oracle::bregman(problem.x0.coords(), rec.x_next.coords(), 4);
      CHECK(d >= previous - 1e-10);
      previous = d;
    }
  }
}

TEST_CASE("shrinking sets are nested") {
  oracle::Rng rng(53);
  ProblemSpec problem = fixtures::random_problem(rng, 2.0, Variant::banach);
  SolverState state = initial_state(problem);
  const auto n = static_cast<Eigen::Index>(problem.x0.dim());
  std::vector<Point> samples;
  for (int i = 0; i < 400; ++i) samples.emplace_back(problem.space1(), rng.vector(n, -4, 4));
  for (int it = 0; it < 10; ++it) {
    const ShrinkingSet before = state.set;
    step(problem, state);
    for (const auto& u : samples) {
      if (state.set.contains(u)) CHECK(before.contains(u));
    }
  }
}

TEST_CASE("inclusion variant with K = 0 is the Hilbert method") {
  const SpaceSpec e1 = SpaceSpec::hilbert(2), e2 = SpaceSpec::hilbert(2);
  Eigen::Matrix2d bm;
  bm << 2, 1, -1, 1;
  const MonotoneLinearOp b(bm, Eigen::Vector2d::Zero());
  const FixedPointMap t = scaling_map(e1, 0.25);
  const auto [tk, jb] = inclusion_maps(e1, e2, t, b, MonotoneLinearOp::zero(2), 0.5);
  ScheduleSpec s;
  s.gamma = SequenceRule::constant(0.8);
  s.alpha = SequenceRule::constant(0.3);
  s.theta = SequenceRule::constant(0.2);
  StoppingRule stop;
  stop.max_iter = 25;
  Eigen::Matrix2d am;
  am << 1, 0.5, -0.3, 1;
  const LinearOperator op(am, e1, e2);
  const ProblemSpec inclusion{op, tk, jb, BoxSet::whole_space(2), make_point(e1, {3, -2}), make_point(e1, {2, 1}),
                              s,  stop, Variant::inclusion, std::nullopt};
  ProblemSpec hilbert = inclusion;
  hilbert.t_map = t;
  hilbert.s_map = resolvent_linear(e2, b, 0.5);
  hilbert.variant = Variant::hilbert;
  const Trace ti = run(inclusion), th = run(hilbert);
  REQUIRE(ti.records.size() == th.records.size());
  for (std::size_t i = 0; i < ti.records.size(); ++i) CHECK(ti.records[i].x_next == th.records[i].x_next);
}

TEST_CASE("inclusion variant reaches the zero of B") {
  const SpaceSpec e = SpaceSpec::hilbert(2);
  Eigen::Matrix2d bm;
  bm << 1, 0.5, -0.5, 1;
  const auto [tk, jb] = inclusion_maps(e, e, identity_map(e), MonotoneLinearOp(bm, Eigen::Vector2d::Zero()),
                                       MonotoneLinearOp::zero(2), 1.0);
  ScheduleSpec s;
  s.gamma = SequenceRule::constant(1.0);
  s.alpha = SequenceRule::constant(0.5);
  s.theta = SequenceRule::constant(0.2);
  StoppingRule stop;
  stop.max_iter = 2000;
  stop.residual_tol = 1e-8;
  const ProblemSpec problem{LinearOperator::identity(e), tk, jb, BoxSet::whole_space(2), make_point(e, {2, -1}),
                            make_point(e, {1, 1}), s, stop, Variant::inclusion, Point::zero(e)};
  const Trace t = run(problem);
  CHECK(t.reason == Termination::residual_tol);
  CHECK(norm_p(t.records.back().x_next) <= 1e-6);

  ProblemSpec at_zero = problem;
  at_zero.x0 = Point::zero(e);
  at_zero.x1 = Point::zero(e);
  at_zero.stop.max_iter = 5;
  for (const auto& rec : run(at_zero).records) CHECK(rec.x_next == Point::zero(e));
}

TEST_CASE("equilibrium variant") {
  const SpaceSpec e = SpaceSpec::hilbert(1);
  ScheduleSpec s;
  s.gamma = SequenceRule::constant(1.0);
  s.alpha = SequenceRule::constant(0.5);
  s.theta = SequenceRule::constant(0.2);
  StoppingRule stop;
  stop.max_iter = 50;
  const MonotoneLinearOp f(Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::VectorXd::Zero(1));
  const ProblemSpec problem{LinearOperator::identity(e),
                            identity_map(e),
                            equilibrium_resolvent(e, f, BoxSet::whole_space(1), 1.0),
                            BoxSet::whole_space(1),
                            make_point(e, {5}),
                            make_point(e, {4}),
                            s,
                            stop,
                            Variant::equilibrium,
                            Point::zero(e)};
  const Trace t = run(problem);
  CHECK(std::abs(t.records.back().x_next[0]) <= 1e-6);

  // F = 0 turns the resolvent into P_Q and the outer projection onto the
  // whole space is the identity: the Hilbert method with S = P_Q.
  const SpaceSpec e2 = SpaceSpec::hilbert(2);
  const BoxSet q(Eigen::Vector2d(0, -inf), Eigen::Vector2d(inf, 0));
  Eigen::MatrixXd am(2, 1);
  am << 0.5, 1.0 / 3;
  stop.max_iter = 24;
  const ProblemSpec eq{LinearOperator(am, e, e2),
                       scaling_map(e, 0.25),
                       equilibrium_resolvent(e2, MonotoneLinearOp::zero(2), q, 1.0),
                       BoxSet::whole_space(1),
                       make_point(e, {8}),
                       make_point(e, {6}),
                       schedule_case(2),
                       stop,
                       Variant::equilibrium,
                       Point::zero(e)};
  ProblemSpec hil = eq;
  hil.s_map = projection_map(e2, q);
  hil.variant = Variant::hilbert;
  const Trace te = run(eq), th = run(hil);
  for (std::size_t i = 0; i < te.records.size(); ++i) {
    CHECK(te.records[i].x_next[0] == doctest::Approx(th.records[i].x_next[0]).epsilon(1e-12).scale(1e-6));
  }

  ProblemSpec still = problem;
  still.x0 = Point::zero(e);
  still.x1 = Point::zero(e);
  for (const auto& rec : run(still).records) CHECK(rec.x_next[0] == 0.0);
}

TEST_CASE("inadmissible parameters are rejected") {
  ScheduleSpec s = schedule_case(1);
  s.gamma = SequenceRule::constant(6.0);
  CHECK_THROWS_AS(run(demo(Variant::banach, 6, 6, s)), ConfigError);
  s = schedule_case(1);
  s.alpha = SequenceRule::constant(1.5);
  CHECK_THROWS_AS(run(demo(Variant::banach, 6, 6, s)), ConfigError);
  s = schedule_case(1);
  s.alpha_bounds = std::pair{0.2, 0.5};
  CHECK_THROWS_AS(run(demo(Variant::banach, 6, 6, s)), ConfigError);
  s = schedule_case(1);
  s.theta_bound = 0.1;
  CHECK_THROWS_AS(run(demo(Variant::banach, 6, 6, s)), ConfigError);
  CHECK_THROWS_AS(run(demo(Variant::banach, -1, 6, schedule_case(1))), ConfigError);

  s = schedule_case(1);
  s.theta = SequenceRule::constant(1.5);
  const Trace t = run(demo(Variant::banach, 8, 6, s));
  CHECK(t.warnings.size() == 1);
}

TEST_CASE("runs are deterministic and honour the stopping rules") {
  const ProblemSpec problem = demo(Variant::banach, 8, 6, schedule_case(4));
  const Trace a = run(problem), b = run(problem);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].x_next == b.records[i].x_next);

  ProblemSpec tol = problem;
  tol.stop.max_iter = 500;
  tol.stop.residual_tol = 1e-9;
  const Trace t = run(tol);
  CHECK(t.reason == Termination::residual_tol);
  CHECK(t.records.back().residual_s <= 1e-9);
  CHECK(t.records.back().residual_t <= 1e-9);
}
