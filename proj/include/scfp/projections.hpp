#pragma once

// Metric projection onto boxes, half-spaces cut out by Bregman comparisons,
// and Bregman projection onto the polyhedral sets accumulated by the
// shrinking-projection solvers.

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "scfp/space.hpp"

namespace scfp {

/// Axis-aligned box; bounds may be infinite.
class BoxSet {
 public:
  BoxSet(Eigen::VectorXd lower, Eigen::VectorXd upper);

  static BoxSet whole_space(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(lower_.size()); }
  const Eigen::VectorXd& lower() const noexcept { return lower_; }
  const Eigen::VectorXd& upper() const noexcept { return upper_; }
  bool is_whole_space() const noexcept;
  bool is_bounded() const noexcept { return lower_.allFinite() && upper_.allFinite(); }

  bool contains(const Eigen::VectorXd& u, double slack = 0.0) const;
  /// Componentwise clamp.
  Eigen::VectorXd clamp(const Eigen::VectorXd& v) const;

  bool operator==(const BoxSet&) const = default;

 private:
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

/// Euclidean projection onto the box (componentwise clamp).
Point metric_project_box(const BoxSet& box, const Point& v);

/// {u : <normal, u> <= offset}.
class HalfSpace {
 public:
  /// Throws InfeasibleSetError for a zero normal with negative offset.
  HalfSpace(DualPoint normal, double offset);

  const DualPoint& normal() const noexcept { return normal_; }
  double offset() const noexcept { return offset_; }
  bool is_trivial() const noexcept { return normal_.coords().isZero(0.0); }

  /// offset - <normal, u>; nonnegative exactly on the half-space.
  double slack(const Point& u) const { return offset_ - pairing(u, normal_); }
  bool contains(const Point& u, double tol = 0.0) const { return slack(u) >= -tol; }

 private:
  DualPoint normal_;
  double offset_;
};

/// The half-space {u : D_p(near, u) <= D_p(far, u)}, i.e.
///   <J^p far - J^p near, u> <= (|far|^p - |near|^p) / q.
/// Points whose images under J^p agree to within kPairResolution (relative)
/// give the trivial half-space (0, 0): the computed normal would be rounding
/// noise and the cut could exclude any point near the pair.
HalfSpace halfspace_from_bregman_pair(const Point& near, const Point& far);

/// Relative separation below which a pair of points defines no cut.
inline constexpr double kPairResolution = 1e-10;

/// base ∩ (∩ halfspaces). Append-only.
class ShrinkingSet {
 public:
  explicit ShrinkingSet(BoxSet base) : base_(std::move(base)) {}

  const BoxSet& base() const noexcept { return base_; }
  const std::vector<HalfSpace>& halfspaces() const noexcept { return halfspaces_; }

  void add(HalfSpace h) { halfspaces_.push_back(std::move(h)); }

  /// Smallest slack over the base bounds and every half-space.
  double min_slack(const Point& u) const;
  bool contains(const Point& u, double tol = 0.0) const { return min_slack(u) >= -tol; }

 private:
  BoxSet base_;
  std::vector<HalfSpace> halfspaces_;
};

/// 1e-12 in dimension 1 or for p = 2, 1e-10 otherwise.
double default_projection_tol(const SpaceSpec& space);

/// Bregman projection argmin_{u in C} D_p(x0, u).
///
/// Dimension 1 is solved in closed form (interval intersection, then clamp).
/// For p = 2 the Euclidean projection is computed by the dual active-set
/// method of Goldfarb and Idnani (finite, exact up to rounding), with cyclic
/// Dykstra as the fallback should it fail to terminate. For other p a primal
/// active-set method with Newton steps on each face starts from the
/// Euclidean projection; cyclic coordinate ascent on the dual of the KKT
/// system J^p u = J^p x0 - sum_i lambda_i a_i, lambda >= 0 is the fallback.
/// The result is checked for feasibility before it is returned. Throws InfeasibleSetError when the
/// set is (or numerically appears) empty.
Point bregman_project(const ShrinkingSet& set, const Point& x0, std::optional<double> tol = std::nullopt);

// The individual routes, exposed so they can be cross-checked.
Point project_interval(const ShrinkingSet& set, const Point& x0);
Point project_dykstra(const ShrinkingSet& set, const Point& x0, double tol);
Point project_active_set(const ShrinkingSet& set, const Point& x0, double tol);
Point project_primal_active_set(const ShrinkingSet& set, const Point& x0, double tol);
Point project_dual_ascent(const ShrinkingSet& set, const Point& x0, double tol);

}  // namespace scfp
