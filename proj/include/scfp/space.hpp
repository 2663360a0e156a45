#pragma once

// Geometry of the finite-dimensional spaces l_p^d: norms, duality maps,
// Bregman distances and bounded linear operators between two such spaces.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "scfp/error.hpp"

namespace scfp {

/// Real coordinate space R^dim with the p-norm, 2 <= p < inf.
///
/// The dual exponent q = p / (p - 1) is always derived from p. The
/// smoothness constant C_q belongs to the dual space l_q^d and enters the
/// admissible step-size interval of the solvers; when not supplied it is
/// computed by `lq_smoothness_constant`, which gives exactly 1 for p = 2.
/// The convexity constant tau (lower bound tau * |x - y|^p <= D_p(x, y)) is
/// only used by diagnostics; it defaults to 1/2 for p = 2 and is left unset
/// otherwise.
class SpaceSpec {
 public:
  SpaceSpec(std::size_t dim, double p, std::optional<double> smoothness_const = std::nullopt,
            std::optional<double> convexity_const = std::nullopt);

  static SpaceSpec hilbert(std::size_t dim) { return SpaceSpec(dim, 2.0); }

  std::size_t dim() const noexcept { return dim_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double smoothness_const() const noexcept { return smoothness_const_; }
  std::optional<double> convexity_const() const noexcept { return convexity_const_; }
  bool is_hilbert() const noexcept { return p_ == 2.0; }

  /// Same dimension and exponent. The constants do not change the geometry.
  bool compatible_with(const SpaceSpec& other) const noexcept {
    return dim_ == other.dim_ && p_ == other.p_;
  }

  bool operator==(const SpaceSpec&) const = default;

  std::string describe() const;

 private:
  std::size_t dim_;
  double p_;
  double q_;
  double smoothness_const_;
  std::optional<double> convexity_const_;
};

/// Smallest C with |1 - t|^q <= 1 - q t + C |t|^q for all real t, i.e. the
/// q-uniform smoothness constant of l_q^d (the inequality separates over
/// coordinates, so the scalar constant is also the d-dimensional one). The
/// value is found by a dense search over t followed by golden-section
/// refinement and is rounded up by a relative margin of 1e-9.
double lq_smoothness_constant(double q);

namespace detail {
struct PrimalTag {};
struct DualTag {};
}  // namespace detail

/// Coordinate vector bound to a space. `Point` lives in the space itself,
/// `DualPoint` in its dual; the two only meet through `pairing`.
template <class Tag>
class BasicPoint {
 public:
  BasicPoint(SpaceSpec space, Eigen::VectorXd coords) : space_(std::move(space)), coords_(std::move(coords)) {
    if (static_cast<std::size_t>(coords_.size()) != space_.dim()) {
      throw DimensionError("point has " + std::to_string(coords_.size()) + " coordinates, space has dimension " +
                           std::to_string(space_.dim()));
    }
    if (!coords_.allFinite()) throw NonFiniteError("point has a non-finite coordinate");
  }

  static BasicPoint zero(const SpaceSpec& space) {
    return BasicPoint(space, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.dim())));
  }

  const SpaceSpec& space() const noexcept { return space_; }
  const Eigen::VectorXd& coords() const noexcept { return coords_; }
  std::size_t dim() const noexcept { return space_.dim(); }
  double operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }

  friend BasicPoint operator+(const BasicPoint& a, const BasicPoint& b) {
    check_same(a, b);
    return BasicPoint(a.space_, a.coords_ + b.coords_);
  }
  friend BasicPoint operator-(const BasicPoint& a, const BasicPoint& b) {
    check_same(a, b);
    return BasicPoint(a.space_, a.coords_ - b.coords_);
  }
  friend BasicPoint operator-(const BasicPoint& a) { return BasicPoint(a.space_, -a.coords_); }
  friend BasicPoint operator*(double s, const BasicPoint& a) { return BasicPoint(a.space_, s * a.coords_); }
  friend BasicPoint operator*(const BasicPoint& a, double s) { return s * a; }

  friend bool operator==(const BasicPoint& a, const BasicPoint& b) {
    return a.space_.compatible_with(b.space_) && a.coords_ == b.coords_;
  }

  static void check_same(const BasicPoint& a, const BasicPoint& b) {
    if (!a.space_.compatible_with(b.space_)) {
      throw DimensionError("points belong to different spaces: " + a.space_.describe() + " vs " +
                           b.space_.describe());
    }
  }

 private:
  SpaceSpec space_;
  Eigen::VectorXd coords_;
};

using Point = BasicPoint<detail::PrimalTag>;
using DualPoint = BasicPoint<detail::DualTag>;

inline Point make_point(const SpaceSpec& space, std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return Point(space, std::move(v));
}

inline DualPoint make_dual_point(const SpaceSpec& space, std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return DualPoint(space, std::move(v));
}

/// (sum_i |x_i|^p)^(1/p).
double norm_p(const Point& x);
/// |x|_p^p, computed without the root so that p = 2 is exact.
double norm_p_pow(const Point& x);
/// Norm of a functional: the q-norm of its coordinates.
double norm_q(const DualPoint& phi);

/// <x, phi>.
double pairing(const Point& x, const DualPoint& phi);

/// J^p: x_i -> |x_i|^(p-1) sign(x_i). The identity when p = 2.
DualPoint duality_map(const Point& x);

/// J^q of the dual space, the inverse of J^p: phi_i -> |phi_i|^(q-1) sign(phi_i).
Point duality_map_inverse(const DualPoint& phi);

/// Bregman distance of f(x) = |x|^p / p:
///   D_p(x, y) = |x|^p / q - <J^p x, y> + |y|^p / p.
/// The sum separates over coordinates; each term is a nonnegative scalar
/// divergence and is accumulated as such. For p = 2 this is |x - y|^2 / 2.
double bregman_distance(const Point& x, const Point& y);

/// Certified upper bound on the operator norm of `matrix` viewed as a map
/// l_{p1}^{cols} -> l_{p2}^{rows}. Exact (largest singular value) when both
/// exponents are 2; otherwise the smaller of the Riesz-Thorin bound
/// |A|_1^(1/p) |A|_inf^(1-1/p) (equal exponents only) and the Euclidean
/// comparison bound sigma_max * cols^(1/2 - 1/p1).
double operator_norm_bound(const Eigen::MatrixXd& matrix, const SpaceSpec& domain, const SpaceSpec& codomain);

/// Bounded linear map between two l_p spaces, with its adjoint acting
/// between the duals (the transpose matrix).
class LinearOperator {
 public:
  LinearOperator(Eigen::MatrixXd matrix, SpaceSpec domain, SpaceSpec codomain);

  static LinearOperator identity(const SpaceSpec& space) {
    const auto d = static_cast<Eigen::Index>(space.dim());
    return LinearOperator(Eigen::MatrixXd::Identity(d, d), space, space);
  }

  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  const SpaceSpec& domain() const noexcept { return domain_; }
  const SpaceSpec& codomain() const noexcept { return codomain_; }
  double norm_upper_bound() const noexcept { return norm_bound_; }

  Point apply(const Point& x) const;
  DualPoint adjoint_apply(const DualPoint& phi) const;

 private:
  Eigen::MatrixXd matrix_;
  SpaceSpec domain_;
  SpaceSpec codomain_;
  double norm_bound_;
};

inline DualPoint adjoint_apply(const LinearOperator& op, const DualPoint& phi) { return op.adjoint_apply(phi); }
inline double operator_norm_bound(const LinearOperator& op) { return op.norm_upper_bound(); }

}  // namespace scfp
