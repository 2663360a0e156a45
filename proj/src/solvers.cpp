#include "scfp/solvers.hpp"

#include <cmath>
#include <limits>

#include "scfp/numeric_text.hpp"

namespace scfp {

namespace {

struct StepParams {
  double gamma;
  double alpha;
  double theta;
};

bool is_hilbert_variant(Variant v) { return v != Variant::banach; }

double step_bound(const ProblemSpec& problem) {
  if (problem.variant == Variant::baseline_ma) {
    // 0 < gamma < 1 / (|A|^2 k^2), with smoothness constant k = 1 in Hilbert space.
    const double a = problem.op.norm_upper_bound();
    return a == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / (a * a);
  }
  return gamma_upper_bound(problem.space2(), problem.op);
}

StepParams schedule_at(const ProblemSpec& problem, std::size_t n, std::vector<std::string>& warnings) {
  const auto& s = problem.schedule;
  const StepParams v{s.gamma(n), s.alpha(n), s.theta(n)};
  const std::string at = " at n = " + std::to_string(n);

  const double bound = step_bound(problem);
  if (!std::isfinite(v.gamma) || !(v.gamma > 0.0) || !(v.gamma < bound)) {
    throw ConfigError("gamma_n = " + format_real(v.gamma) + at + " is outside the admissible interval (0, " +
                      format_real(bound) + ")");
  }
  if (!std::isfinite(v.alpha) || !(v.alpha > 0.0 && v.alpha < 1.0)) {
    throw ConfigError("alpha_n = " + format_real(v.alpha) + at + " must lie in (0, 1)");
  }
  if (s.alpha_bounds && (v.alpha < s.alpha_bounds->first || v.alpha > s.alpha_bounds->second)) {
    throw ConfigError("alpha_n = " + format_real(v.alpha) + at + " leaves the configured interval [" +
                      format_real(s.alpha_bounds->first) + ", " + format_real(s.alpha_bounds->second) + "]");
  }
  if (problem.variant != Variant::baseline_ma) {
    if (!std::isfinite(v.theta)) throw ConfigError("theta_n is not finite" + at);
    if (s.theta_bound && std::abs(v.theta) > *s.theta_bound) {
      throw ConfigError("|theta_n| = " + format_real(std::abs(v.theta)) + at + " exceeds the configured bound " +
                        format_real(*s.theta_bound));
    }
    if (std::abs(v.theta) > 1.0 && warnings.empty()) {
      warnings.push_back("|theta_n| > 1" + at + "; convergence is not covered for large inertial weights");
    }
  }
  return v;
}

// {u : |near - u| <= |far - u|} written as <far - near, u> <= (|far|^2 - |near|^2) / 2.
HalfSpace euclidean_bisector(const Point& near, const Point& far) {
  const Eigen::VectorXd a = far.coords() - near.coords();
  const double resolution = kPairResolution * (far.coords().norm() + near.coords().norm());
  if (std::isfinite(resolution) && a.norm() <= resolution) {
    return HalfSpace(DualPoint::zero(near.space()), 0.0);
  }
  return HalfSpace(DualPoint(near.space(), a), (far.coords().squaredNorm() - near.coords().squaredNorm()) / 2.0);
}

std::optional<double> solution_slack(const ProblemSpec& problem, const SolverState& state) {
  if (!problem.known_solution) return std::nullopt;
  return state.set.min_slack(*problem.known_solution);
}

IterateRecord finish(const ProblemSpec& problem, SolverState& state, Point w, Point z, Point y, double residual_s,
                     double residual_t, std::size_t n) {
  Point x_next = bregman_project(state.set, state.anchor);
  const double step_norm = norm_p(x_next - state.x_curr);
  const double dist = bregman_distance(state.anchor, x_next);
  IterateRecord rec{n, std::move(w), std::move(z), std::move(y), x_next, residual_s, residual_t, step_norm, dist,
                    solution_slack(problem, state)};
  state.x_prev = std::move(state.x_curr);
  state.x_curr = std::move(x_next);
  state.n = n + 1;
  return rec;
}

// Shared by the Hilbert, inclusion and equilibrium variants; the latter wraps z_n in P_C.
IterateRecord hilbert_iteration(const ProblemSpec& problem, SolverState& state, bool project_z) {
  const std::size_t n = state.n;
  const StepParams prm = schedule_at(problem, n, state.warnings);
  const Eigen::MatrixXd& a = problem.op.matrix();
  const SpaceSpec& e1 = problem.space1();
  const SpaceSpec& e2 = problem.space2();

  Point w(e1, state.x_curr.coords() + prm.theta * (state.x_curr.coords() - state.x_prev.coords()));
  const Point aw(e2, a * w.coords());
  const Eigen::VectorXd defect = aw.coords() - problem.s_map(aw).coords();
  Eigen::VectorXd z_raw = w.coords() - prm.gamma * (a.transpose() * defect);
  if (project_z) z_raw = problem.base_set.clamp(z_raw);
  Point z(e1, std::move(z_raw));
  const Point tz = problem.t_map(z);
  Point y(e1, prm.alpha * z.coords() + (1.0 - prm.alpha) * tz.coords());

  state.set.add(euclidean_bisector(y, z));
  state.set.add(euclidean_bisector(z, w));
  const double res_s = defect.norm();
  const double res_t = (tz.coords() - z.coords()).norm();
  return finish(problem, state, std::move(w), std::move(z), std::move(y), res_s, res_t, n);
}

void require_hilbert(const ProblemSpec& problem, const char* who) {
  if (!problem.space1().is_hilbert() || !problem.space2().is_hilbert()) {
    throw ConfigError(std::string(who) + " requires p = 2 in both spaces");
  }
}

}  // namespace

SequenceRule SequenceRule::constant(double value) {
  if (!std::isfinite(value)) throw ConfigError("constant sequence value must be finite");
  return SequenceRule(true, 0.0, value, 0.0, 1.0);
}

SequenceRule SequenceRule::rational(double a, double b, double c, double d) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
    throw ConfigError("rational sequence coefficients must be finite");
  }
  if (c == 0.0 && d == 0.0) throw ConfigError("rational sequence has a zero denominator");
  return SequenceRule(false, a, b, c, d);
}

SequenceRule SequenceRule::parse(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.starts_with("const:")) return constant(parse_real(t.substr(6)));
  if (t.starts_with("rat:")) {
    const auto parts = split_trimmed(t.substr(4), ',');
    if (parts.size() != 4) throw ConfigError("rat: needs four coefficients a,b,c,d, got '" + std::string(t) + "'");
    return rational(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]), parse_real(parts[3]));
  }
  throw ConfigError("sequence rule must be 'const:v' or 'rat:a,b,c,d', got '" + std::string(t) + "'");
}

double SequenceRule::operator()(std::size_t n) const {
  if (constant_) return b_;
  const double x = static_cast<double>(n);
  const double den = c_ * x + d_;
  if (den == 0.0) throw ConfigError("rational sequence denominator vanishes at n = " + std::to_string(n));
  return (a_ * x + b_) / den;
}

std::string SequenceRule::to_string() const {
  if (constant_) return "const:" + format_real(b_);
  return "rat:" + format_real(a_) + "," + format_real(b_) + "," + format_real(c_) + "," + format_real(d_);
}

ScheduleSpec schedule_case(int id, CaseSchedule flavor) {
  const auto gamma_var = SequenceRule::rational(2, 3, 2, 0);
  const auto alpha_const = SequenceRule::rational(0, 1, 0, 7);
  const auto alpha_var = SequenceRule::rational(1, 0, 7, 5);
  const auto theta_const = flavor == CaseSchedule::nominal ? SequenceRule::rational(0, 1, 0, 2)
                                                           : SequenceRule::rational(0, 1, 0, 5);
  ScheduleSpec s;
  switch (id) {
    case 1:
      s.gamma = SequenceRule::constant(1.0);
      s.alpha = alpha_const;
      s.theta = theta_const;
      break;
    case 2:
      s.gamma = gamma_var;
      s.alpha = alpha_const;
      s.theta = theta_const;
      break;
    case 3:
      s.gamma = gamma_var;
      s.alpha = alpha_var;
      s.theta = theta_const;
      break;
    case 4:
      s.gamma = gamma_var;
      s.alpha = alpha_var;
      s.theta = SequenceRule::rational(2, 1, 10, 2);
      break;
    default:
      throw ConfigError("unknown step-size case " + std::to_string(id) + " (expected 1-4)");
  }
  return s;
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::banach: return "banach";
    case Variant::hilbert: return "hilbert";
    case Variant::inclusion: return "inclusion";
    case Variant::equilibrium: return "equilibrium";
    case Variant::baseline_ma: return "baseline_ma";
  }
  return "unknown";
}

Variant parse_variant(std::string_view text) {
  const auto t = trim(text);
  if (t == "banach") return Variant::banach;
  if (t == "hilbert") return Variant::hilbert;
  if (t == "inclusion") return Variant::inclusion;
  if (t == "equilibrium") return Variant::equilibrium;
  if (t == "baseline_ma") return Variant::baseline_ma;
  throw ConfigError("unknown variant '" + std::string(t) +
                    "' (expected banach, hilbert, inclusion, equilibrium or baseline_ma)");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::max_iter: return "max_iter";
    case Termination::step_tol: return "step_tol";
    case Termination::residual_tol: return "residual_tol";
  }
  return "unknown";
}

const Point& Trace::iterate(std::size_t n) const {
  if (n == 0 && x0) return *x0;
  if (n == 1) return x1;
  if (n < 2 || n - 2 >= records.size()) throw std::out_of_range("no iterate x_" + std::to_string(n) + " in trace");
  return records[n - 2].x_next;
}

std::pair<FixedPointMap, FixedPointMap> inclusion_maps(const SpaceSpec& space1, const SpaceSpec& space2,
                                                        const FixedPointMap& t_map, const MonotoneLinearOp& b_op,
                                                        const MonotoneLinearOp& k_op, double mu) {
  return {compose(t_map, resolvent_linear(space1, k_op, mu)), resolvent_linear(space2, b_op, mu)};
}

double gamma_upper_bound(const SpaceSpec& space2, const LinearOperator& op) {
  const double a = op.norm_upper_bound();
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  const double q = space2.q();
  return std::pow(q / (space2.smoothness_const() * std::pow(a, q)), 1.0 / (q - 1.0));
}

SolverState initial_state(const ProblemSpec& problem) {
  const auto& e1 = problem.space1();
  if (!problem.x0.space().compatible_with(e1) || !problem.x1.space().compatible_with(e1)) {
    throw ConfigError("initial points must live in " + e1.describe());
  }
  if (problem.base_set.dim() != e1.dim()) throw ConfigError("base set dimension differs from the first space");
  if (problem.stop.max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (problem.stop.step_tol < 0.0 || problem.stop.residual_tol < 0.0) {
    throw ConfigError("stopping tolerances must be nonnegative");
  }
  const bool baseline = problem.variant == Variant::baseline_ma;
  if (!problem.base_set.contains(problem.x1.coords())) throw ConfigError("x1 must lie in the base set C_1");
  if (!baseline && !problem.base_set.contains(problem.x0.coords())) {
    throw ConfigError("x0 must lie in the base set C_1");
  }
  if (is_hilbert_variant(problem.variant)) require_hilbert(problem, to_string(problem.variant).c_str());
  if (baseline && !problem.schedule.gamma.is_constant()) {
    throw ConfigError("baseline_ma uses a constant step gamma");
  }
  if (problem.schedule.alpha_bounds) {
    const auto [lo, hi] = *problem.schedule.alpha_bounds;
    if (!(0.0 < lo && lo <= hi && hi < 1.0)) throw ConfigError("alpha bounds [a, b] must satisfy 0 < a <= b < 1");
  }
  if (problem.schedule.theta_bound && !(*problem.schedule.theta_bound >= 0.0)) {
    throw ConfigError("theta bound must be nonnegative");
  }
  if (problem.known_solution && !problem.known_solution->space().compatible_with(e1)) {
    throw ConfigError("known solution must live in " + e1.describe());
  }
  const Point& anchor = baseline ? problem.x1 : problem.x0;
  return SolverState{anchor, baseline ? problem.x1 : problem.x0, problem.x1, ShrinkingSet(problem.base_set), 1, {}};
}

IterateRecord step_banach(const ProblemSpec& problem, SolverState& state) {
  const std::size_t n = state.n;
  const StepParams prm = schedule_at(problem, n, state.warnings);
  const Point& x = state.x_curr;

  Point w = duality_map_inverse(duality_map(x) + prm.theta * duality_map(x - state.x_prev));
  const Point aw = problem.op.apply(w);
  const Point defect = aw - problem.s_map(aw);
  Point z = duality_map_inverse(duality_map(w) - prm.gamma * problem.op.adjoint_apply(duality_map(defect)));
  const Point tz = problem.t_map(z);
  Point y = duality_map_inverse(prm.alpha * duality_map(z) + (1.0 - prm.alpha) * duality_map(tz));

  state.set.add(halfspace_from_bregman_pair(y, z));
  state.set.add(halfspace_from_bregman_pair(z, w));
  const double res_s = norm_p(defect);
  const double res_t = norm_p(tz - z);
  return finish(problem, state, std::move(w), std::move(z), std::move(y), res_s, res_t, n);
}

IterateRecord step_hilbert(const ProblemSpec& problem, SolverState& state) {
  require_hilbert(problem, "step_hilbert");
  return hilbert_iteration(problem, state, false);
}

IterateRecord step_inclusion(const ProblemSpec& problem, SolverState& state) {
  require_hilbert(problem, "step_inclusion");
  if (problem.s_map.kind() != MapKind::resolvent_linear) {
    throw ConfigError("the inclusion variant needs a linear resolvent in the S role");
  }
  return hilbert_iteration(problem, state, false);
}

IterateRecord step_equilibrium(const ProblemSpec& problem, SolverState& state) {
  require_hilbert(problem, "step_equilibrium");
  if (problem.s_map.kind() != MapKind::equilibrium_resolvent && problem.s_map.kind() != MapKind::metric_projection) {
    throw ConfigError("the equilibrium variant needs an equilibrium resolvent in the S role");
  }
  return hilbert_iteration(problem, state, true);
}

IterateRecord step_baseline_ma(const ProblemSpec& problem, SolverState& state) {
  require_hilbert(problem, "step_baseline_ma");
  const std::size_t n = state.n;
  const StepParams prm = schedule_at(problem, n, state.warnings);
  const Eigen::MatrixXd& a = problem.op.matrix();
  const SpaceSpec& e1 = problem.space1();
  const SpaceSpec& e2 = problem.space2();
  const Point& x = state.x_curr;

  const Point ax(e2, a * x.coords());
  const Eigen::VectorXd defect = ax.coords() - problem.s_map(ax).coords();
  Point z(e1, x.coords() - prm.gamma * (a.transpose() * defect));
  const Point tz = problem.t_map(z);
  Point y(e1, prm.alpha * z.coords() + (1.0 - prm.alpha) * tz.coords());

  state.set.add(euclidean_bisector(y, x));
  state.set.add(euclidean_bisector(z, x));
  const double res_s = defect.norm();
  const double res_t = (tz.coords() - z.coords()).norm();
  return finish(problem, state, x, std::move(z), std::move(y), res_s, res_t, n);
}

IterateRecord step(const ProblemSpec& problem, SolverState& state) {
  switch (problem.variant) {
    case Variant::banach: return step_banach(problem, state);
    case Variant::hilbert: return step_hilbert(problem, state);
    case Variant::inclusion: return step_inclusion(problem, state);
    case Variant::equilibrium: return step_equilibrium(problem, state);
    case Variant::baseline_ma: return step_baseline_ma(problem, state);
  }
  throw ConfigError("unknown variant");
}

Trace run(const ProblemSpec& problem) {
  SolverState state = initial_state(problem);
  Trace trace{problem.variant == Variant::baseline_ma ? std::nullopt : std::optional<Point>(problem.x0),
              problem.x1,
              {},
              Termination::max_iter,
              {}};
  trace.records.reserve(problem.stop.max_iter);
  for (std::size_t k = 0; k < problem.stop.max_iter; ++k) {
    const std::size_t n = state.n;
    try {
      trace.records.push_back(step(problem, state));
    } catch (const NonFiniteError& e) {
      throw NumericalError("non-finite value in iteration n = " + std::to_string(n) + ": " + e.what());
    } catch (const InfeasibleSetError& e) {
      throw InfeasibleSetError("iteration n = " + std::to_string(n) + ": " + e.what());
    }
    const auto& rec = trace.records.back();
    if (problem.stop.residual_tol > 0.0 && rec.residual_s <= problem.stop.residual_tol &&
        rec.residual_t <= problem.stop.residual_tol) {
      trace.reason = Termination::residual_tol;
      break;
    }
    if (problem.stop.step_tol > 0.0 && rec.step_norm <= problem.stop.step_tol) {
      trace.reason = Termination::step_tol;
      break;
    }
  }
  trace.warnings = std::move(state.warnings);
  return trace;
}

}  // namespace scfp
