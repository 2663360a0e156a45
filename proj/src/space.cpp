#include "scfp/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace scfp {

namespace {

double smoothness_ratio(double q, double t) {
  return (std::pow(std::abs(1.0 - t), q) - 1.0 + q * t) / std::pow(std::abs(t), q);
}

double signed_power(double v, double e) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(v), e), v);
}

// Scalar Bregman divergence of |.|^p / p.
double scalar_bregman(double a, double b, double p, double q) {
  const double d = std::pow(std::abs(a), p) / q - signed_power(a, p - 1.0) * b + std::pow(std::abs(b), p) / p;
  return std::max(d, 0.0);
}

}  // namespace

namespace {

double compute_smoothness_constant(double q) {
  // Parametrize t = tan(s) so the whole real line is covered; the ratio
  // tends to 1 as |t| -> inf and to 0 as t -> 0.
  constexpr int kGrid = 20000;
  const double half_pi = std::numbers::pi / 2.0;
  double best = 1.0;
  double best_s = 0.0;
  const double h = 2.0 * half_pi / kGrid;
  for (int i = 1; i < kGrid; ++i) {
    const double s = -half_pi + i * h;
    if (std::abs(s) < 1e-12) continue;
    const double r = smoothness_ratio(q, std::tan(s));
    if (r > best) {
      best = r;
      best_s = s;
    }
  }
  if (best_s != 0.0) {
    double lo = std::max(best_s - h, -half_pi + 1e-15);
    double hi = std::min(best_s + h, half_pi - 1e-15);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double a = hi - g * (hi - lo);
      const double b = lo + g * (hi - lo);
      if (smoothness_ratio(q, std::tan(a)) > smoothness_ratio(q, std::tan(b))) {
        hi = b;
      } else {
        lo = a;
      }
    }
    best = std::max(best, smoothness_ratio(q, std::tan(0.5 * (lo + hi))));
  }
  return best * (1.0 + 1e-9);
}

}  // namespace

double lq_smoothness_constant(double q) {
  if (!(q > 1.0 && q <= 2.0)) throw ConfigError("dual exponent q must lie in (1, 2], got " + std::to_string(q));
  if (q == 2.0) return 1.0;
  static std::mutex mutex;
  static std::map<double, double> cache;
  const std::lock_guard lock(mutex);
  const auto [it, inserted] = cache.try_emplace(q, 0.0);
  if (inserted) it->second = compute_smoothness_constant(q);
  return it->second;
}

SpaceSpec::SpaceSpec(std::size_t dim, double p, std::optional<double> smoothness_const,
                     std::optional<double> convexity_const)
    : dim_(dim), p_(p), q_(p / (p - 1.0)), smoothness_const_(0.0), convexity_const_(convexity_const) {
  if (dim == 0) throw ConfigError("space dimension must be positive");
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw ConfigError("exponent p must satisfy 2 <= p < inf, got " + std::to_string(p));
  }
  if (smoothness_const) {
    if (!(*smoothness_const > 0.0) || !std::isfinite(*smoothness_const)) {
      throw ConfigError("smoothness constant C_q must be positive");
    }
    smoothness_const_ = *smoothness_const;
  } else {
    smoothness_const_ = lq_smoothness_constant(q_);
  }
  if (convexity_const_) {
    if (!(*convexity_const_ > 0.0) || !std::isfinite(*convexity_const_)) {
      throw ConfigError("convexity constant tau must be positive");
    }
  } else if (p == 2.0) {
    convexity_const_ = 0.5;
  }
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  os << "l_" << p_ << "^" << dim_;
  return os.str();
}

double norm_p(const Point& x) {
  const double p = x.space().p();
  if (p == 2.0) return x.coords().norm();
  const double scale = x.coords().cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : x.coords()) sum += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(sum, 1.0 / p);
}

double norm_p_pow(const Point& x) {
  const double p = x.space().p();
  if (p == 2.0) return x.coords().squaredNorm();
  double sum = 0.0;
  for (double v : x.coords()) sum += std::pow(std::abs(v), p);
  return sum;
}

double norm_q(const DualPoint& phi) {
  const double q = phi.space().q();
  if (q == 2.0) return phi.coords().norm();
  const double scale = phi.coords().cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : phi.coords()) sum += std::pow(std::abs(v) / scale, q);
  return scale * std::pow(sum, 1.0 / q);
}

double pairing(const Point& x, const DualPoint& phi) {
  if (!x.space().compatible_with(phi.space())) {
    throw DimensionError("pairing between " + x.space().describe() + " and dual of " + phi.space().describe());
  }
  return x.coords().dot(phi.coords());
}

DualPoint duality_map(const Point& x) {
  const double p = x.space().p();
  if (p == 2.0) return DualPoint(x.space(), x.coords());
  return DualPoint(x.space(), x.coords().unaryExpr([p](double v) { return signed_power(v, p - 1.0); }));
}

Point duality_map_inverse(const DualPoint& phi) {
  const double q = phi.space().q();
  if (q == 2.0) return Point(phi.space(), phi.coords());
  return Point(phi.space(), phi.coords().unaryExpr([q](double v) { return signed_power(v, q - 1.0); }));
}

double bregman_distance(const Point& x, const Point& y) {
  Point::check_same(x, y);
  if (x.space().is_hilbert()) return 0.5 * (x.coords() - y.coords()).squaredNorm();
  const double p = x.space().p();
  const double q = x.space().q();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.coords().size(); ++i) sum += scalar_bregman(x.coords()[i], y.coords()[i], p, q);
  return sum;
}

double operator_norm_bound(const Eigen::MatrixXd& matrix, const SpaceSpec& domain, const SpaceSpec& codomain) {
  if (matrix.size() == 0 || matrix.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix);
  const double sigma = svd.singularValues()(0);
  if (domain.p() == 2.0 && codomain.p() == 2.0) return sigma;

  // |Ax|_{p2} <= |Ax|_2 (p2 >= 2) <= sigma |x|_2 <= sigma n^(1/2 - 1/p1) |x|_{p1}.
  const double n = static_cast<double>(matrix.cols());
  double bound = sigma * std::pow(n, std::max(0.0, 0.5 - 1.0 / domain.p()));
  if (domain.p() == codomain.p()) {
    const double col_sum = matrix.cwiseAbs().colwise().sum().maxCoeff();
    const double row_sum = matrix.cwiseAbs().rowwise().sum().maxCoeff();
    const double p = domain.p();
    bound = std::min(bound, std::pow(col_sum, 1.0 / p) * std::pow(row_sum, 1.0 - 1.0 / p));
  }
  return bound;
}

LinearOperator::LinearOperator(Eigen::MatrixXd matrix, SpaceSpec domain, SpaceSpec codomain)
    : matrix_(std::move(matrix)), domain_(std::move(domain)), codomain_(std::move(codomain)), norm_bound_(0.0) {
  if (static_cast<std::size_t>(matrix_.cols()) != domain_.dim() ||
      static_cast<std::size_t>(matrix_.rows()) != codomain_.dim()) {
    throw DimensionError("operator matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + " but maps " + domain_.describe() + " -> " +
                         codomain_.describe());
  }
  if (!matrix_.allFinite()) throw ConfigError("operator matrix has a non-finite entry");
  norm_bound_ = operator_norm_bound(matrix_, domain_, codomain_);
}

Point LinearOperator::apply(const Point& x) const {
  if (!x.space().compatible_with(domain_)) {
    throw DimensionError("operator domain is " + domain_.describe() + ", got a point of " + x.space().describe());
  }
  return Point(codomain_, matrix_ * x.coords());
}

DualPoint LinearOperator::adjoint_apply(const DualPoint& phi) const {
  if (!phi.space().compatible_with(codomain_)) {
    throw DimensionError("adjoint expects the dual of " + codomain_.describe() + ", got the dual of " +
                         phi.space().describe());
  }
  return DualPoint(domain_, matrix_.transpose() * phi.coords());
}

}  // namespace scfp
