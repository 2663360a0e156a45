#include "scfp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

namespace scfp {

namespace {

void require_space(const SpaceSpec& expected, const Point& x, const std::string& who) {
  if (!x.space().compatible_with(expected)) {
    throw DimensionError(who + " acts on " + expected.describe() + ", got a point of " + x.space().describe());
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Eigen::VectorXd sample_box(const BoxSet& box, std::mt19937_64& rng) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(box.dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::uniform_real_distribution<double> dist(box.lower()[i], box.upper()[i]);
    v[i] = dist(rng);
  }
  return v;
}

void require_bounded(const BoxSet& domain, const SpaceSpec& space) {
  if (!domain.is_bounded()) throw ConfigError("property check needs a bounded sampling box");
  if (domain.dim() != space.dim()) throw DimensionError("sampling box dimension differs from the space dimension");
}

}  // namespace

std::string to_string(MapKind kind) {
  switch (kind) {
    case MapKind::identity: return "identity";
    case MapKind::scaling: return "scaling";
    case MapKind::metric_projection: return "metric_projection";
    case MapKind::resolvent_linear: return "resolvent_linear";
    case MapKind::equilibrium_resolvent: return "equilibrium_resolvent";
    case MapKind::composed: return "composed";
    case MapKind::custom: return "custom";
  }
  return "unknown";
}

FixedPointMap::FixedPointMap(MapKind kind, std::string name, Fn fn, std::optional<Point> known_fixed_point)
    : kind_(kind), name_(std::move(name)), fn_(std::move(fn)), known_fixed_point_(std::move(known_fixed_point)) {
  if (known_fixed_point_) {
    const Point image = fn_(*known_fixed_point_);
    const double err = (image.coords() - known_fixed_point_->coords()).norm();
    if (err > 1e-12 * (1.0 + known_fixed_point_->coords().norm())) {
      throw ConfigError("declared fixed point of " + name_ + " moves by " + fmt(err));
    }
  }
}

MonotoneLinearOp::MonotoneLinearOp(Eigen::MatrixXd matrix, Eigen::VectorXd shift)
    : matrix_(std::move(matrix)), shift_(std::move(shift)), norm_(0.0) {
  if (matrix_.rows() != matrix_.cols()) throw ConfigError("monotone operator matrix must be square");
  if (matrix_.rows() != shift_.size()) throw ConfigError("monotone operator shift has the wrong length");
  if (matrix_.rows() == 0) throw ConfigError("monotone operator must have positive dimension");
  if (!matrix_.allFinite() || !shift_.allFinite()) throw ConfigError("monotone operator has non-finite entries");
  const Eigen::MatrixXd sym = matrix_ + matrix_.transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -1e-10) {
    throw ConfigError("operator is not monotone: M + M^T has eigenvalue " + fmt(min_eig));
  }
  norm_ = matrix_.isZero(0.0) ? 0.0 : Eigen::JacobiSVD<Eigen::MatrixXd>(matrix_).singularValues()(0);
}

MonotoneLinearOp MonotoneLinearOp::zero(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return MonotoneLinearOp(Eigen::MatrixXd::Zero(d, d), Eigen::VectorXd::Zero(d));
}

FixedPointMap identity_map(const SpaceSpec& space) {
  return FixedPointMap(
      MapKind::identity, "identity",
      [space](const Point& x) {
        require_space(space, x, "identity");
        return x;
      },
      Point::zero(space));
}

FixedPointMap scaling_map(const SpaceSpec& space, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw ConfigError("scaling factor must lie in (0, 1], got " + fmt(c));
  return FixedPointMap(
      MapKind::scaling, "scale:" + fmt(c),
      [space, c](const Point& x) {
        require_space(space, x, "scaling map");
        return c * x;
      },
      Point::zero(space));
}

FixedPointMap projection_map(const SpaceSpec& space, const BoxSet& box) {
  if (box.dim() != space.dim()) throw DimensionError("projection box dimension differs from the space dimension");
  Point anchor(space, box.clamp(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.dim()))));
  return FixedPointMap(
      MapKind::metric_projection, "box projection",
      [space, box](const Point& x) {
        require_space(space, x, "box projection");
        return metric_project_box(box, x);
      },
      std::move(anchor));
}

FixedPointMap resolvent_linear(const SpaceSpec& space, const MonotoneLinearOp& op, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("resolvent parameter mu must be positive");
  if (op.dim() != space.dim()) throw DimensionError("resolvent operator dimension differs from the space dimension");
  if (!space.is_hilbert()) throw ConfigError("linear resolvents are defined on Hilbert (p = 2) spaces");
  const auto d = static_cast<Eigen::Index>(space.dim());
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(d, d) + mu * op.matrix();
  auto lu = std::make_shared<const Eigen::FullPivLU<Eigen::MatrixXd>>(system);
  if (!lu->isInvertible()) throw NumericalError("I + mu M is singular; the operator cannot be monotone");
  const Eigen::VectorXd shifted = mu * op.shift();

  std::optional<Point> zero_of_op;
  const Eigen::FullPivLU<Eigen::MatrixXd> m_lu(op.matrix());
  if (op.shift().isZero(0.0)) {
    zero_of_op = Point::zero(space);
  } else if (m_lu.isInvertible()) {
    Eigen::VectorXd z = m_lu.solve(-op.shift());
    // Keep the declared fixed point only if it survives the round trip to 1e-12.
    const Eigen::VectorXd image = lu->solve(z - shifted);
    if ((image - z).norm() <= 1e-12 * (1.0 + z.norm())) zero_of_op = Point(space, std::move(z));
  }

  return FixedPointMap(
      MapKind::resolvent_linear, "resolvent(mu=" + fmt(mu) + ")",
      [space, lu, shifted](const Point& x) {
        require_space(space, x, "resolvent");
        Eigen::VectorXd u = lu->solve(x.coords() - shifted);
        if (!u.allFinite()) throw NumericalError("resolvent solve produced a non-finite value");
        return Point(space, std::move(u));
      },
      std::move(zero_of_op));
}

FixedPointMap equilibrium_resolvent(const SpaceSpec& space, const MonotoneLinearOp& bifunction, const BoxSet& box,
                                    double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("equilibrium resolvent parameter r must be positive");
  if (bifunction.dim() != space.dim() || box.dim() != space.dim()) {
    throw DimensionError("equilibrium resolvent data do not match the space dimension");
  }
  if (!space.is_hilbert()) throw ConfigError("equilibrium resolvents are defined on Hilbert (p = 2) spaces");

  const auto d = static_cast<Eigen::Index>(space.dim());
  const Eigen::MatrixXd& m = bifunction.matrix();
  const Eigen::VectorXd rc = r * bifunction.shift();
  const double lipschitz = 1.0 + r * bifunction.norm();
  const double eta = 1.0 / (lipschitz * lipschitz);
  const double kappa = std::sqrt(std::max(0.0, 1.0 - eta));
  const bool unconstrained = box.is_whole_space();
  auto lu = std::make_shared<const Eigen::FullPivLU<Eigen::MatrixXd>>(Eigen::MatrixXd::Identity(d, d) + r * m);

  auto solve = [space, m, rc, r, eta, kappa, box, unconstrained, lu](const Point& x) {
    require_space(space, x, "equilibrium resolvent");
    if (unconstrained) return Point(space, lu->solve(x.coords() - rc));
    const double target = 1e-13 * (1.0 + x.coords().norm());
    Eigen::VectorXd z = box.clamp(x.coords());
    constexpr int kMaxIter = 5000000;
    for (int k = 0; k < kMaxIter; ++k) {
      const Eigen::VectorXd g = r * (m * z) + rc + z - x.coords();
      Eigen::VectorXd next = box.clamp(z - eta * g);
      const double step = (next - z).norm();
      z = std::move(next);
      if (step == 0.0 || kappa / (1.0 - kappa) * step <= target) return Point(space, z);
    }
    throw NumericalError("equilibrium resolvent inner iteration did not converge (contraction factor " + fmt(kappa) +
                         ")");
  };

  std::optional<Point> fixed;
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(d);
  if (bifunction.shift().isZero(0.0) && box.contains(origin)) fixed = Point(space, origin);

  return FixedPointMap(MapKind::equilibrium_resolvent, "equilibrium resolvent(r=" + fmt(r) + ")", std::move(solve),
                       std::move(fixed));
}

FixedPointMap compose(const FixedPointMap& outer, const FixedPointMap& inner) {
  std::optional<Point> fixed;
  if (outer.known_fixed_point() && inner.known_fixed_point() &&
      outer.known_fixed_point()->coords() == inner.known_fixed_point()->coords()) {
    fixed = outer.known_fixed_point();
  }
  return FixedPointMap(
      MapKind::composed, outer.name() + " o " + inner.name(),
      [outer, inner](const Point& x) { return outer.apply(inner.apply(x)); }, std::move(fixed));
}

PropertyReport check_firmly_nonexpansive_like(const FixedPointMap& map, const SpaceSpec& space, const BoxSet& domain,
                                              std::size_t n_samples, std::uint64_t seed) {
  require_bounded(domain, space);
  if (n_samples == 0) throw ConfigError("need at least one sample");
  std::mt19937_64 rng(seed);
  PropertyReport report;
  report.worst_value = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Point x(space, sample_box(domain, rng));
    const Point y(space, sample_box(domain, rng));
    const Point tx = map(x);
    const Point ty = map(y);
    const double v = pairing(tx - ty, duality_map(x - tx) - duality_map(y - ty));
    report.worst_value = std::min(report.worst_value, v);
  }
  report.samples = n_samples;
  report.pass = report.worst_value >= -1e-10;
  return report;
}

PropertyReport check_bregman_quasi_nonexpansive(const FixedPointMap& map, const Point& x_star, const SpaceSpec& space,
                                                const BoxSet& domain, std::size_t n_samples, std::uint64_t seed) {
  require_bounded(domain, space);
  if (n_samples == 0) throw ConfigError("need at least one sample");
  const double moved = (map(x_star).coords() - x_star.coords()).norm();
  if (moved > 1e-12 * (1.0 + x_star.coords().norm())) {
    throw ConfigError("reference point is not a fixed point of " + map.name() + " (moved by " + fmt(moved) + ")");
  }
  std::mt19937_64 rng(seed);
  PropertyReport report;
  report.worst_value = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Point x(space, sample_box(domain, rng));
    const double v = bregman_distance(x, x_star) - bregman_distance(map(x), x_star);
    report.worst_value = std::min(report.worst_value, v);
  }
  report.samples = n_samples;
  report.pass = report.worst_value >= -1e-10;
  return report;
}

PropertyReport check_firmly_nonexpansive(const FixedPointMap& map, const SpaceSpec& space, const BoxSet& domain,
                                         std::size_t n_samples, std::uint64_t seed) {
  require_bounded(domain, space);
  if (n_samples == 0) throw ConfigError("need at least one sample");
  std::mt19937_64 rng(seed);
  PropertyReport report;
  report.worst_value = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Eigen::VectorXd x = sample_box(domain, rng);
    const Eigen::VectorXd y = sample_box(domain, rng);
    const Eigen::VectorXd diff = map(Point(space, x)).coords() - map(Point(space, y)).coords();
    report.worst_value = std::min(report.worst_value, diff.dot(x - y) - diff.squaredNorm());
  }
  report.samples = n_samples;
  report.pass = report.worst_value >= -1e-10;
  return report;
}

}  // namespace scfp
