#pragma once

// Maps consumed by the solvers (the T and S roles), their constructors, and
// sampling-based property checkers.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "scfp/projections.hpp"
#include "scfp/space.hpp"

namespace scfp {

enum class MapKind { identity, scaling, metric_projection, resolvent_linear, equilibrium_resolvent, composed, custom };

std::string to_string(MapKind kind);

/// Deterministic single-valued map of a space into itself.
class FixedPointMap {
 public:
  using Fn = std::function<Point(const Point&)>;

  FixedPointMap(MapKind kind, std::string name, Fn fn, std::optional<Point> known_fixed_point = std::nullopt);

  Point apply(const Point& x) const { return fn_(x); }
  Point operator()(const Point& x) const { return fn_(x); }

  MapKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::optional<Point>& known_fixed_point() const noexcept { return known_fixed_point_; }

 private:
  MapKind kind_;
  std::string name_;
  Fn fn_;
  std::optional<Point> known_fixed_point_;
};

/// Affine operator u -> M u + c with M + M^T positive semidefinite.
/// Also serves as the bifunction F(x, y) = <M x + c, y - x>.
class MonotoneLinearOp {
 public:
  /// Throws ConfigError if M is not square, c has the wrong length, or the
  /// smallest eigenvalue of M + M^T is below -1e-10.
  MonotoneLinearOp(Eigen::MatrixXd matrix, Eigen::VectorXd shift);

  static MonotoneLinearOp zero(std::size_t dim);

  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  const Eigen::VectorXd& shift() const noexcept { return shift_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(shift_.size()); }
  /// Spectral norm of M.
  double norm() const noexcept { return norm_; }

  Eigen::VectorXd evaluate(const Eigen::VectorXd& u) const { return matrix_ * u + shift_; }
  /// F(x, y) = <M x + c, y - x>.
  double bifunction(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return evaluate(x).dot(y - x); }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd shift_;
  double norm_;
};

FixedPointMap identity_map(const SpaceSpec& space);

/// x -> c x, 0 < c <= 1. Fixed point 0.
FixedPointMap scaling_map(const SpaceSpec& space, double c);

/// Metric projection onto a box; its fixed-point set is the box.
FixedPointMap projection_map(const SpaceSpec& space, const BoxSet& box);

/// Resolvent (I + mu B)^{-1} of the affine monotone operator B u = M u + c:
/// apply(x) solves (I + mu M) u = x - mu c. Fixed points are the zeros of B.
FixedPointMap resolvent_linear(const SpaceSpec& space, const MonotoneLinearOp& op, double mu);

/// Resolvent of the equilibrium problem for F(x, y) = <M x + c, y - x> on the
/// box C: apply(x) is the unique z in C with
///   <r (M z + c) + z - x, y - z> >= 0 for all y in C.
/// The regularized operator is 1-strongly monotone and (1 + r|M|)-Lipschitz,
/// so projected iteration z <- P_C(z - eta G(z)) with eta = 1 / (1 + r|M|)^2
/// contracts for every r > 0. Iterates until the a-posteriori error bound is
/// below 1e-13 (relative to 1 + |x|); throws NumericalError otherwise.
FixedPointMap equilibrium_resolvent(const SpaceSpec& space, const MonotoneLinearOp& bifunction, const BoxSet& box,
                                    double r);

/// outer after inner.
FixedPointMap compose(const FixedPointMap& outer, const FixedPointMap& inner);

struct PropertyReport {
  bool pass = true;
  /// Smallest observed margin of the inequality (negative means violated).
  double worst_value = 0.0;
  std::size_t samples = 0;
};

/// Samples pairs (x, y) uniformly from the (bounded) domain box and evaluates
///   <Tx - Ty, J^p(x - Tx) - J^p(y - Ty)>.
/// Passes iff the minimum is >= -1e-10. Sampling can only falsify.
PropertyReport check_firmly_nonexpansive_like(const FixedPointMap& map, const SpaceSpec& space, const BoxSet& domain,
                                              std::size_t n_samples = 1000, std::uint64_t seed = 0);

/// Checks D_p(Tx, x*) <= D_p(x, x*) + 1e-10 on samples x from the domain;
/// worst_value is the smallest D_p(x, x*) - D_p(Tx, x*). Throws ConfigError
/// if x* is not a fixed point of the map.
PropertyReport check_bregman_quasi_nonexpansive(const FixedPointMap& map, const Point& x_star, const SpaceSpec& space,
                                                const BoxSet& domain, std::size_t n_samples = 1000,
                                                std::uint64_t seed = 0);

/// Hilbert firm nonexpansiveness |Tx - Ty|^2 <= <Tx - Ty, x - y>;
/// worst_value is the smallest <Tx - Ty, x - y> - |Tx - Ty|^2.
PropertyReport check_firmly_nonexpansive(const FixedPointMap& map, const SpaceSpec& space, const BoxSet& domain,
                                         std::size_t n_samples = 1000, std::uint64_t seed = 0);

}  // namespace scfp
