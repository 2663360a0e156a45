#pragma once

// Inertial shrinking-projection solvers for split common fixed point
// problems, their Hilbert-space specializations and applications, and the
// non-inertial baseline they are compared against.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scfp/operators.hpp"
#include "scfp/projections.hpp"
#include "scfp/space.hpp"

namespace scfp {

/// Parameter sequence indexed by the iteration counter n >= 1: either a
/// constant or the rational function (a n + b) / (c n + d).
class SequenceRule {
 public:
  static SequenceRule constant(double value);
  static SequenceRule rational(double a, double b, double c, double d);

  /// "const:v" or "rat:a,b,c,d". Throws ConfigError.
  static SequenceRule parse(std::string_view text);

  double operator()(std::size_t n) const;
  bool is_constant() const noexcept { return constant_; }

  /// Inverse of parse; numbers are written in shortest round-trip form.
  std::string to_string() const;

  bool operator==(const SequenceRule&) const = default;

 private:
  SequenceRule(bool constant, double a, double b, double c, double d)
      : constant_(constant), a_(a), b_(b), c_(c), d_(d) {}

  bool constant_;
  double a_, b_, c_, d_;  // constant rules keep the value in b_
};

struct ScheduleSpec {
  SequenceRule gamma = SequenceRule::constant(1.0);
  SequenceRule alpha = SequenceRule::constant(0.5);
  SequenceRule theta = SequenceRule::constant(0.0);
  /// [a, b] inside (0, 1) that alpha_n must stay in; (0, 1) when unset.
  std::optional<std::pair<double, double>> alpha_bounds;
  /// |theta_n| <= d when set.
  std::optional<double> theta_bound;

  bool operator==(const ScheduleSpec&) const = default;
};

/// Which inertial weight the Cases 1-3 schedules carry. `nominal` uses the
/// stated theta_n = 1/2. The published result tables for those cases (and
/// for the constant-parameter inertial example) are reproduced by
/// theta_n = 1/5 instead; `table_calibrated` selects that value. Case 4 is
/// the same under both.
enum class CaseSchedule { nominal, table_calibrated };

/// Step-size Cases 1-4:
///   1: gamma = 1,              alpha = 1/7,        theta = 1/2
///   2: gamma = (2n+3)/(2n),    alpha = 1/7,        theta = 1/2
///   3: gamma = (2n+3)/(2n),    alpha = n/(7n+5),   theta = 1/2
///   4: gamma = (2n+3)/(2n),    alpha = n/(7n+5),   theta = (2n+1)/(10n+2)
ScheduleSpec schedule_case(int id, CaseSchedule flavor = CaseSchedule::nominal);

enum class Variant { banach, hilbert, inclusion, equilibrium, baseline_ma };

std::string to_string(Variant v);
Variant parse_variant(std::string_view text);

struct StoppingRule {
  std::size_t max_iter = 25;
  /// Stop once |x_{n+1} - x_n| <= step_tol. Zero disables the test. The
  /// iterates are projections of a fixed anchor, so a zero step can happen
  /// away from the solution while the anchor still lies in C_{n+1};
  /// residual_tol is the safer criterion.
  double step_tol = 0.0;
  /// Stop once both |(I - S) A w_n| and |T z_n - z_n| are <= residual_tol. Zero disables the test.
  double residual_tol = 0.0;

  bool operator==(const StoppingRule&) const = default;
};

/// Everything a run needs. `op` carries both spaces (domain E1, codomain E2).
///
/// For `inclusion`, `t_map` is T o J_mu^K and `s_map` is J_mu^B (see
/// `inclusion_maps`). For `equilibrium`, `s_map` is the equilibrium resolvent
/// on E2 and `base_set` doubles as the set C of the outer projection.
/// `baseline_ma` ignores x0 and theta and anchors its projections at x1.
struct ProblemSpec {
  LinearOperator op;
  FixedPointMap t_map;
  FixedPointMap s_map;
  BoxSet base_set;
  Point x0;
  Point x1;
  ScheduleSpec schedule;
  StoppingRule stop;
  Variant variant = Variant::banach;
  /// A point of the solution set, when known; enables the feasibility record.
  std::optional<Point> known_solution;

  const SpaceSpec& space1() const noexcept { return op.domain(); }
  const SpaceSpec& space2() const noexcept { return op.codomain(); }
};

/// (T o J_mu^K, J_mu^B) for the variational-inclusion variant.
std::pair<FixedPointMap, FixedPointMap> inclusion_maps(const SpaceSpec& space1, const SpaceSpec& space2,
                                                        const FixedPointMap& t_map, const MonotoneLinearOp& b_op,
                                                        const MonotoneLinearOp& k_op, double mu);

struct IterateRecord {
  std::size_t n;
  Point w;
  Point z;
  Point y;
  Point x_next;
  double residual_s;   // |(I - S) A w_n|
  double residual_t;   // |T z_n - z_n|
  double step_norm;    // |x_{n+1} - x_n|
  double bregman_from_anchor;  // D_p(anchor, x_{n+1}); the anchor is x0 (x1 for the baseline)
  /// Smallest slack of the known solution over C_{n+1}, when one is supplied.
  std::optional<double> solution_slack;
};

enum class Termination { max_iter, step_tol, residual_tol };
std::string to_string(Termination t);

struct Trace {
  std::optional<Point> x0;  // absent for the baseline
  Point x1;
  std::vector<IterateRecord> records;
  Termination reason = Termination::max_iter;
  std::vector<std::string> warnings;

  /// x_n for n = 2, 3, ...
  const Point& iterate(std::size_t n) const;
  std::size_t last_index() const noexcept { return records.empty() ? 1 : records.back().n + 1; }
};

/// Mutable state of one run: x_{n-1}, x_n, C_n and the projection anchor.
struct SolverState {
  Point anchor;
  Point x_prev;
  Point x_curr;
  ShrinkingSet set;
  std::size_t n = 1;
  std::vector<std::string> warnings;
};

/// Validates the problem and builds the state for n = 1 (x_{n-1} = x0, x_n = x1).
SolverState initial_state(const ProblemSpec& problem);

/// Upper end of the admissible step interval, (q / (C_q |A|^q))^(1/(q-1)),
/// with q and C_q from `space2` and |A| from the operator's norm bound.
/// +inf for the zero operator.
double gamma_upper_bound(const SpaceSpec& space2, const LinearOperator& op);

// One iteration each; advance `state` to n + 1 and return the record.
IterateRecord step_banach(const ProblemSpec& problem, SolverState& state);
IterateRecord step_hilbert(const ProblemSpec& problem, SolverState& state);
IterateRecord step_inclusion(const ProblemSpec& problem, SolverState& state);
IterateRecord step_equilibrium(const ProblemSpec& problem, SolverState& state);
IterateRecord step_baseline_ma(const ProblemSpec& problem, SolverState& state);

/// Dispatches on problem.variant.
IterateRecord step(const ProblemSpec& problem, SolverState& state);

/// Iterates until the stopping rule fires. Deterministic. Throws ConfigError
/// for inadmissible parameters and NumericalError (naming the iteration) for
/// non-finite iterates or collapsed constraint sets.
Trace run(const ProblemSpec& problem);

}  // namespace scfp
