#include "scfp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "scfp/config.hpp"
#include "scfp/operators.hpp"
#include "scfp/projections.hpp"
#include "scfp/solvers.hpp"
#include "scfp/space.hpp"

namespace scfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Eigen::VectorXd vector(std::size_t dim, double lo, double hi) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }
  Eigen::MatrixXd matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (auto& x : m.reshaped()) x = uniform(-1.0, 1.0);
    return m;
  }
  Point point(const SpaceSpec& s, double lo = -3.0, double hi = 3.0) { return Point(s, vector(s.dim(), lo, hi)); }
  DualPoint dual(const SpaceSpec& s, double lo = -3.0, double hi = 3.0) { return DualPoint(s, vector(s.dim(), lo, hi)); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// Passes iff the smallest margin is >= -tol.
CheckResult margin_check(std::string name, std::size_t samples, double worst_margin, double tol) {
  return CheckResult{std::move(name), worst_margin >= -tol, samples, worst_margin,
                     "worst margin " + fmt(worst_margin) + ", tolerance " + fmt(tol)};
}

/// Passes iff the largest error is <= tol.
CheckResult error_check(std::string name, std::size_t samples, double worst_error, double tol) {
  return CheckResult{std::move(name), worst_error <= tol, samples, worst_error,
                     "worst error " + fmt(worst_error) + ", tolerance " + fmt(tol)};
}

CheckResult report_check(std::string name, const PropertyReport& r) {
  return CheckResult{std::move(name), r.pass, r.samples, r.worst_value, "worst margin " + fmt(r.worst_value)};
}

SpaceSpec random_space(Sampler& s, std::initializer_list<double> exponents) {
  const auto dim = static_cast<std::size_t>(s.pick(1, 3));
  const auto idx = static_cast<std::size_t>(s.pick(0, static_cast<int>(exponents.size()) - 1));
  return SpaceSpec(dim, *(exponents.begin() + idx));
}

// Random polyhedron: a box and up to three half-spaces, all containing `center`.
ShrinkingSet random_polyhedron(Sampler& s, const SpaceSpec& space, Point& center) {
  center = s.point(space, -1.0, 1.0);
  Eigen::VectorXd lo = center.coords(), hi = center.coords();
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    lo[i] = s.uniform(0.0, 1.0) < 0.3 ? -kInf : lo[i] - s.uniform(0.1, 2.0);
    hi[i] = s.uniform(0.0, 1.0) < 0.3 ? kInf : hi[i] + s.uniform(0.1, 2.0);
  }
  ShrinkingSet set{BoxSet(lo, hi)};
  const int n_half = s.pick(0, 3);
  for (int k = 0; k < n_half; ++k) {
    const DualPoint a = s.dual(space, -1.0, 1.0);
    set.add(HalfSpace(a, pairing(center, a) + s.uniform(0.0, 1.0)));
  }
  return set;
}

}  // namespace

std::vector<CheckResult> geometry_suite(std::uint64_t seed) {
  constexpr std::size_t n = 1000;
  std::vector<CheckResult> out;
  Sampler s(seed);

  {
    double worst5 = 0.0, worst6 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const SpaceSpec sp = random_space(s, {2.0, 3.0, 4.0});
      const Point x = s.point(sp), y = s.point(sp), z = s.point(sp);
      const DualPoint jx = duality_map(x), jy = duality_map(y), jz = duality_map(z);
      const double lhs5 = bregman_distance(x, y);
      const double rhs5 = bregman_distance(x, z) + bregman_distance(z, y) + pairing(z - y, jx - jz);
      worst5 = std::max(worst5, std::abs(lhs5 - rhs5) / (1.0 + std::abs(lhs5)));
      const double lhs6 = bregman_distance(x, y) + bregman_distance(y, x);
      const double rhs6 = pairing(x - y, jx - jy);
      worst6 = std::max(worst6, std::abs(lhs6 - rhs6) / (1.0 + std::abs(lhs6)));
    }
    out.push_back(error_check("three-point identity", n, worst5, 1e-9));
    out.push_back(error_check("symmetrized distance identity", n, worst6, 1e-9));
  }
  {
    double worst_nonneg = kInf, worst_upper = kInf, worst_lower = kInf;
    for (std::size_t k = 0; k < n; ++k) {
      const SpaceSpec sp = random_space(s, {2.0, 3.0, 4.0, 6.0});
      const Point x = s.point(sp), y = s.point(sp);
      const double d = bregman_distance(x, y);
      worst_nonneg = std::min(worst_nonneg, d);
      const double upper = pairing(x - y, duality_map(x) - duality_map(y));
      worst_upper = std::min(worst_upper, (upper - d) / (1.0 + std::abs(upper)));
      if (const auto tau = sp.convexity_const()) {
        const double lower = *tau * std::pow(norm_p(x - y), sp.p());
        worst_lower = std::min(worst_lower, (d - lower) / (1.0 + std::abs(d)));
      }
    }
    out.push_back(margin_check("distance nonnegative", n, worst_nonneg, 0.0));
    out.push_back(margin_check("distance below symmetrized pairing", n, worst_upper, 1e-12));
    out.push_back(margin_check("distance above tau |x - y|^p", n, worst_lower, 1e-12));
  }
  {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const SpaceSpec sp = random_space(s, {2.0, 3.0, 4.0, 6.0});
      const Point x = s.point(sp);
      const DualPoint jx = duality_map(x);
      const double np = norm_p(x);
      const double scale = 1.0 + std::pow(np, sp.p());
      worst = std::max(worst, std::abs(pairing(x, jx) - std::pow(np, sp.p())) / scale);
      worst = std::max(worst, std::abs(norm_q(jx) - std::pow(np, sp.p() - 1.0)) / (1.0 + std::pow(np, sp.p() - 1.0)));
      worst = std::max(worst, (duality_map_inverse(jx) - x).coords().lpNorm<Eigen::Infinity>() / (1.0 + np));
      const DualPoint phi = s.dual(sp);
      worst = std::max(worst, (duality_map(duality_map_inverse(phi)) - phi).coords().lpNorm<Eigen::Infinity>() /
                                  (1.0 + norm_q(phi)));
    }
    out.push_back(error_check("duality map consistency and round trip", n, worst, 1e-10));
  }
  {
    // |phi - psi|^q <= |phi|^q - q <J^q phi, psi> + C_q |psi|^q on the dual space.
    auto smoothness = [&](std::initializer_list<double> exponents) {
      double worst = kInf;
      for (std::size_t k = 0; k < n; ++k) {
        const SpaceSpec sp = random_space(s, exponents);
        const double q = sp.q();
        const DualPoint phi = s.dual(sp), psi = s.dual(sp);
        const double lhs = std::pow(norm_q(phi - psi), q);
        const double rhs = std::pow(norm_q(phi), q) - q * pairing(duality_map_inverse(phi), psi) +
                           sp.smoothness_const() * std::pow(norm_q(psi), q);
        worst = std::min(worst, (rhs - lhs) / (1.0 + std::abs(lhs)));
      }
      return worst;
    };
    out.push_back(margin_check("q-smoothness inequality, p = 2", n, smoothness({2.0}), 1e-12));
    out.push_back(margin_check("q-smoothness inequality, p in {3, 4, 6}", n, smoothness({3.0, 4.0, 6.0}), 1e-12));
  }
  {
    double worst = kInf;
    for (std::size_t k = 0; k < n; ++k) {
      const SpaceSpec sp = random_space(s, {2.0, 3.0, 4.0});
      const int m = s.pick(2, 4);
      std::vector<double> t(static_cast<std::size_t>(m));
      double total = 0.0;
      for (auto& ti : t) total += (ti = s.uniform(0.05, 1.0));
      DualPoint mix = DualPoint::zero(sp);
      double rhs = 0.0;
      const Point x = s.point(sp);
      for (int i = 0; i < m; ++i) {
        const double ti = t[static_cast<std::size_t>(i)] / total;
        const Point xi = s.point(sp);
        mix = mix + ti * duality_map(xi);
        rhs += ti * bregman_distance(xi, x);
      }
      const double lhs = bregman_distance(duality_map_inverse(mix), x);
      worst = std::min(worst, (rhs - lhs) / (1.0 + rhs));
    }
    out.push_back(margin_check("dual convex combination inequality", n, worst, 1e-12));
  }
  {
    double worst_adj = 0.0, worst_norm = kInf;
    for (std::size_t k = 0; k < n; ++k) {
      const SpaceSpec d = random_space(s, {2.0, 3.0, 4.0});
      const SpaceSpec c = random_space(s, {2.0, 3.0, 4.0});
      const LinearOperator op(s.matrix(static_cast<Eigen::Index>(c.dim()), static_cast<Eigen::Index>(d.dim())) *
                                  s.uniform(0.1, 3.0),
                              d, c);
      const Point x = s.point(d);
      const DualPoint phi = s.dual(c);
      const double a = pairing(op.apply(x), phi), b = pairing(x, op.adjoint_apply(phi));
      worst_adj = std::max(worst_adj, std::abs(a - b) / (1.0 + std::abs(a)));
      const double nx = norm_p(x);
      if (nx > 0.0) worst_norm = std::min(worst_norm, op.norm_upper_bound() - norm_p(op.apply(x)) / nx);
    }
    out.push_back(error_check("adjoint pairing", n, worst_adj, 1e-12));
    out.push_back(margin_check("operator norm bound", n, worst_norm, 1e-12));
  }
  {
    std::size_t mismatches = 0, counted = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const SpaceSpec sp(static_cast<std::size_t>(s.pick(1, 3)), s.pick(0, 1) ? 4.0 : 2.0);
      const Point near = s.point(sp), far = s.point(sp), u = s.point(sp);
      const double gap = bregman_distance(far, u) - bregman_distance(near, u);
      if (std::abs(gap) <= 1e-12) continue;
      ++counted;
      if (halfspace_from_bregman_pair(near, far).contains(u) != (gap >= 0.0)) ++mismatches;
    }
    out.push_back(CheckResult{"half-space matches distance comparison", mismatches == 0, counted,
                              static_cast<double>(mismatches), std::to_string(mismatches) + " mismatches"});
  }
  {
    double worst_var = kInf, worst_three = kInf, worst_feas = kInf;
    constexpr std::size_t instances = 200;
    for (std::size_t k = 0; k < instances; ++k) {
      const SpaceSpec sp(static_cast<std::size_t>(s.pick(1, 3)), s.pick(0, 1) ? 4.0 : 2.0);
      Point center = Point::zero(sp);
      const ShrinkingSet set = random_polyhedron(s, sp, center);
      const Point x0 = s.point(sp, -4.0, 4.0);
      const Point proj = bregman_project(set, x0);
      worst_feas = std::min(worst_feas, set.min_slack(proj));
      const DualPoint g = duality_map(x0) - duality_map(proj);
      for (int t = 0; t < 20; ++t) {
        Point z = center + s.uniform(0.0, 1.0) * (s.point(sp) - center);
        if (!set.contains(z)) z = center;
        const double scale = 1.0 + bregman_distance(x0, z);
        worst_var = std::min(worst_var, -pairing(z - proj, g) / scale);
        worst_three = std::min(worst_three, (bregman_distance(x0, z) - bregman_distance(x0, proj) -
                                             bregman_distance(proj, z)) / scale);
      }
    }
    out.push_back(margin_check("projection feasible", instances, worst_feas, 1e-9));
    out.push_back(margin_check("projection variational inequality", instances, worst_var, 1e-8));
    out.push_back(margin_check("projection three-point inequality", instances, worst_three, 1e-8));
  }
  return out;
}

std::vector<CheckResult> operators_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  Sampler s(seed);
  auto next_seed = [&] { return s.engine()(); };

  const SpaceSpec r4(1, 4.0);
  const BoxSet ten(Eigen::VectorXd::Constant(1, -10.0), Eigen::VectorXd::Constant(1, 10.0));
  out.push_back(report_check("x/4 on [-10, 10] is firmly nonexpansive-like (p = 4)",
                             check_firmly_nonexpansive_like(scaling_map(r4, 0.25), r4, ten, 1000, next_seed())));

  for (double p : {2.0, 4.0}) {
    const SpaceSpec sp(2, p);
    const BoxSet q(Eigen::Vector2d(0.0, -kInf), Eigen::Vector2d(kInf, 0.0));
    const BoxSet dom(Eigen::Vector2d(-10.0, -10.0), Eigen::Vector2d(10.0, 10.0));
    out.push_back(report_check("box projection is firmly nonexpansive-like (p = " + std::to_string(int(p)) + ")",
                               check_firmly_nonexpansive_like(projection_map(sp, q), sp, dom, 1000, next_seed())));
    const FixedPointMap t = scaling_map(sp, 0.25);
    out.push_back(report_check("x/4 is Bregman quasi-nonexpansive (p = " + std::to_string(int(p)) + ")",
                               check_bregman_quasi_nonexpansive(t, Point::zero(sp), sp, dom, 1000, next_seed())));
  }

  {
    // Resolvents of random monotone affine operators.
    PropertyReport worst;
    worst.worst_value = kInf;
    double worst_zero = 0.0;
    for (int k = 0; k < 10; ++k) {
      const auto d = static_cast<Eigen::Index>(s.pick(1, 3));
      const SpaceSpec sp = SpaceSpec::hilbert(static_cast<std::size_t>(d));
      const Eigen::MatrixXd b = s.matrix(d, d);
      const Eigen::MatrixXd skew = s.matrix(d, d);
      const MonotoneLinearOp op(b * b.transpose() + skew - skew.transpose(), s.vector(static_cast<std::size_t>(d), -1, 1));
      const FixedPointMap res = resolvent_linear(sp, op, s.uniform(0.1, 3.0));
      const BoxSet dom(Eigen::VectorXd::Constant(d, -5.0), Eigen::VectorXd::Constant(d, 5.0));
      const PropertyReport r = check_firmly_nonexpansive(res, sp, dom, 100, next_seed());
      worst.pass = worst.pass && r.pass;
      worst.worst_value = std::min(worst.worst_value, r.worst_value);
      worst.samples += r.samples;
      if (const auto& fp = res.known_fixed_point()) {
        worst_zero = std::max(worst_zero, op.evaluate(fp->coords()).lpNorm<Eigen::Infinity>());
      }
    }
    out.push_back(report_check("linear resolvents are firmly nonexpansive", worst));
    out.push_back(error_check("resolvent fixed points are zeros of the operator", 10, worst_zero, 1e-10));
  }
  {
    PropertyReport worst;
    worst.worst_value = kInf;
    double worst_vi = kInf;
    for (int k = 0; k < 10; ++k) {
      const auto d = static_cast<Eigen::Index>(s.pick(1, 2));
      const SpaceSpec sp = SpaceSpec::hilbert(static_cast<std::size_t>(d));
      const Eigen::MatrixXd b = s.matrix(d, d);
      const MonotoneLinearOp op(b * b.transpose(), s.vector(static_cast<std::size_t>(d), -1, 1));
      const BoxSet c(Eigen::VectorXd::Zero(d), Eigen::VectorXd::Constant(d, k % 2 ? 2.0 : kInf));
      const double r = s.uniform(0.2, 2.0);
      const FixedPointMap tr = equilibrium_resolvent(sp, op, c, r);
      const BoxSet dom(Eigen::VectorXd::Constant(d, -5.0), Eigen::VectorXd::Constant(d, 5.0));
      const PropertyReport rep = check_firmly_nonexpansive(tr, sp, dom, 100, next_seed());
      worst.pass = worst.pass && rep.pass;
      worst.worst_value = std::min(worst.worst_value, rep.worst_value);
      worst.samples += rep.samples;
      // Defining inequality F(z, y) + <y - z, z - x> / r >= 0 at box corners and samples.
      for (int t = 0; t < 20; ++t) {
        const Point x(sp, s.vector(static_cast<std::size_t>(d), -5, 5));
        const Eigen::VectorXd z = tr(x).coords();
        const Eigen::VectorXd y = c.clamp(s.vector(static_cast<std::size_t>(d), -1, 4));
        worst_vi = std::min(worst_vi, op.bifunction(z, y) + (y - z).dot(z - x.coords()) / r);
      }
    }
    out.push_back(report_check("equilibrium resolvents are firmly nonexpansive", worst));
    out.push_back(margin_check("equilibrium resolvent solves its inequality", 200, worst_vi, 1e-9));
  }
  {
    const SpaceSpec r1 = SpaceSpec::hilbert(1);
    const MonotoneLinearOp f(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1));
    const FixedPointMap tr = equilibrium_resolvent(r1, f, BoxSet::whole_space(1), 1.0);
    const BoxSet dom(Eigen::VectorXd::Constant(1, -10.0), Eigen::VectorXd::Constant(1, 10.0));
    out.push_back(report_check("scalar equilibrium resolvent (M = 1, r = 1) is firmly nonexpansive",
                               check_firmly_nonexpansive(tr, r1, dom, 1000, next_seed())));
  }
  return out;
}

std::vector<CheckResult> solver_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  Sampler s(seed);

  {
    double worst_slack = kInf, worst_mono = kInf, worst_chain = kInf;
    std::size_t runs = 0;
    std::vector<ScheduleSpec> schedules;
    for (int id = 1; id <= 4; ++id) {
      schedules.push_back(schedule_case(id, CaseSchedule::nominal));
      schedules.push_back(schedule_case(id, CaseSchedule::table_calibrated));
    }
    for (const auto& sched : schedules) {
      for (auto [x0, x1] : {std::pair{6.0, 6.0}, std::pair{3.0, 3.0}, std::pair{8.0, 6.0}}) {
        const ProblemSpec problem = build_problem(demo_config(Variant::banach, x0, x1, sched));
        const Trace trace = run(problem);
        ++runs;
        const Point zero = Point::zero(problem.space1());
        double prev = -kInf;
        for (const auto& rec : trace.records) {
          worst_slack = std::min(worst_slack, rec.solution_slack.value_or(kInf));
          worst_mono = std::min(worst_mono, rec.bregman_from_anchor - prev);
          prev = rec.bregman_from_anchor;
          const double dw = bregman_distance(rec.w, zero), dz = bregman_distance(rec.z, zero),
                       dy = bregman_distance(rec.y, zero);
          worst_chain = std::min({worst_chain, dz - dy, dw - dz});
        }
      }
    }
    for (double x1 : {6.0, 3.0}) {
      ScheduleSpec sched;
      sched.alpha = SequenceRule::rational(0, 1, 0, 7);
      const Trace trace = run(build_problem(demo_config(Variant::baseline_ma, x1, x1, sched)));
      ++runs;
      for (const auto& rec : trace.records) worst_slack = std::min(worst_slack, rec.solution_slack.value_or(kInf));
    }
    out.push_back(margin_check("known solution stays in every C_n", runs, worst_slack, 1e-9));
    out.push_back(margin_check("distance from the anchor is nondecreasing", runs, worst_mono, 1e-10));
    out.push_back(margin_check("descent chain D(y, x*) <= D(z, x*) <= D(w, x*)", runs, worst_chain, 1e-9));
  }
  {
    ScheduleSpec sched = schedule_case(1, CaseSchedule::table_calibrated);
    RunConfig cfg = demo_config(Variant::banach, 6.0, 6.0, sched);
    const Trace trace = run(build_problem(cfg));
    const auto& last = trace.records.back();
    const double worst = std::max({last.residual_s, last.residual_t, last.step_norm});
    out.push_back(error_check("residuals below 1e-6 by n = 25", 1, worst, 1e-6));
  }
  {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const auto d1 = static_cast<std::size_t>(s.pick(1, 3)), d2 = static_cast<std::size_t>(s.pick(1, 3));
      const SpaceSpec e1 = SpaceSpec::hilbert(d1), e2 = SpaceSpec::hilbert(d2);
      const LinearOperator op(s.matrix(static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(d1)), e1, e2);
      Eigen::VectorXd qlo = -s.vector(d2, 0.0, 1.0), qhi = s.vector(d2, 0.0, 1.0);
      const FixedPointMap t = scaling_map(e1, s.uniform(0.1, 0.9));
      const FixedPointMap sm = projection_map(e2, BoxSet(qlo, qhi));
      ScheduleSpec sched;
      sched.gamma = SequenceRule::constant(1.0 / (op.norm_upper_bound() * op.norm_upper_bound()));
      sched.alpha = SequenceRule::constant(s.uniform(0.1, 0.9));
      sched.theta = SequenceRule::constant(s.uniform(-0.5, 0.9));
      const Point x0 = s.point(e1, -5, 5), x1 = s.point(e1, -5, 5);
      ProblemSpec a{op, t, sm, BoxSet::whole_space(d1), x0, x1, sched, StoppingRule{25, 0, 0}, Variant::banach, std::nullopt};
      ProblemSpec b = a;
      b.variant = Variant::hilbert;
      const Trace ta = run(a), tb = run(b);
      for (std::size_t i = 0; i < ta.records.size(); ++i) {
        worst = std::max(worst, (ta.records[i].x_next - tb.records[i].x_next).coords().lpNorm<Eigen::Infinity>());
      }
    }
    out.push_back(error_check("p = 2 Banach and Hilbert steppers agree", 20, worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const auto d1 = static_cast<std::size_t>(s.pick(1, 3)), d2 = static_cast<std::size_t>(s.pick(1, 3));
      const SpaceSpec e1 = SpaceSpec::hilbert(d1), e2 = SpaceSpec::hilbert(d2);
      const LinearOperator op(s.matrix(static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(d1)), e1, e2);
      const Eigen::MatrixXd m = s.matrix(static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(d2));
      const MonotoneLinearOp b(m * m.transpose(), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d2)));
      const double mu = s.uniform(0.2, 2.0);
      const FixedPointMap t = scaling_map(e1, 0.5);
      auto maps = inclusion_maps(e1, e2, t, b, MonotoneLinearOp::zero(d1), mu);
      ScheduleSpec sched;
      sched.gamma = SequenceRule::constant(1.0 / (op.norm_upper_bound() * op.norm_upper_bound()));
      sched.alpha = SequenceRule::constant(0.3);
      sched.theta = SequenceRule::constant(0.4);
      const Point x0 = s.point(e1, -5, 5), x1 = s.point(e1, -5, 5);
      ProblemSpec inc{op, maps.first, maps.second, BoxSet::whole_space(d1), x0, x1, sched, StoppingRule{25, 0, 0},
                      Variant::inclusion, std::nullopt};
      ProblemSpec hil{op, t, resolvent_linear(e2, b, mu), BoxSet::whole_space(d1), x0, x1, sched, StoppingRule{25, 0, 0},
                      Variant::hilbert, std::nullopt};
      const Trace ta = run(inc), tb = run(hil);
      for (std::size_t i = 0; i < ta.records.size(); ++i) {
        worst = std::max(worst, (ta.records[i].x_next - tb.records[i].x_next).coords().lpNorm<Eigen::Infinity>());
      }
    }
    out.push_back(error_check("inclusion variant with K = 0 matches the Hilbert stepper", 10, worst, 0.0));
  }
  {
    const SpaceSpec r1 = SpaceSpec::hilbert(1);
    const LinearOperator op = LinearOperator::identity(r1);
    const MonotoneLinearOp f(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1));
    const BoxSet c(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Constant(1, kInf));
    ScheduleSpec sched;
    sched.gamma = SequenceRule::constant(1.0);
    sched.alpha = SequenceRule::constant(1.0 / 7.0);
    sched.theta = SequenceRule::constant(0.2);
    ProblemSpec problem{op, scaling_map(r1, 0.25), equilibrium_resolvent(r1, f, BoxSet::whole_space(1), 1.0), c,
                        make_point(r1, {6.0}), make_point(r1, {6.0}), sched, StoppingRule{49, 0, 0},
                        Variant::equilibrium, Point::zero(r1)};
    const Trace trace = run(problem);
    out.push_back(error_check("equilibrium variant reaches the equilibrium within 50 iterations", 1,
                              std::abs(trace.records.back().x_next[0]), 1e-6));
  }
  return out;
}

std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed) {
  if (suite == "geometry") return geometry_suite(seed);
  if (suite == "operators") return operators_suite(seed);
  if (suite == "solver") return solver_suite(seed);
  throw ConfigError("unknown suite '" + std::string(suite) + "' (expected geometry, operators or solver)");
}

}  // namespace scfp
