#pragma once

// Reference computations written independently of the library, from the
// definitions rather than from the library's formulas.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double sgn_pow(double t, double e) { return t == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(t), e), t); }

/// f(y) - f(x) - <grad f(x), y - x> with f = |.|_p^p / p, summed in long double.
inline double bregman(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double p) {
  long double fx = 0, fy = 0, lin = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    fx += std::pow(std::abs(static_cast<long double>(x[i])), static_cast<long double>(p)) / p;
    fy += std::pow(std::abs(static_cast<long double>(y[i])), static_cast<long double>(p)) / p;
    lin += static_cast<long double>(sgn_pow(x[i], p - 1.0)) * (static_cast<long double>(y[i]) - x[i]);
  }
  return static_cast<double>(fy - fx - lin);
}

inline Eigen::VectorXd duality(const Eigen::VectorXd& x, double p) {
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = sgn_pow(x[i], p - 1.0);
  return out;
}

inline double pnorm(const Eigen::VectorXd& x, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), p);
  return std::pow(s, 1.0 / p);
}

/// Polyhedron {u : G u <= h}.
struct Polyhedron {
  Eigen::MatrixXd G;
  Eigen::VectorXd h;

  bool contains(const Eigen::VectorXd& u, double tol) const {
    return G.rows() == 0 || ((G * u - h).array() <= tol).all();
  }
};

/// Euclidean projection by enumerating candidate active sets: for every
/// subset of at most dim independent rows, project onto the affine set where
/// they hold with equality; the nearest feasible candidate is the answer.
inline Eigen::VectorXd euclidean_projection(const Polyhedron& poly, const Eigen::VectorXd& x0) {
  const auto m = static_cast<int>(poly.G.rows());
  const auto d = static_cast<int>(x0.size());
  Eigen::VectorXd best;
  double best_dist = std::numeric_limits<double>::infinity();
  std::vector<int> idx;
  std::function<void(int)> visit = [&](int start) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    Eigen::VectorXd u = x0;
    if (k > 0) {
      Eigen::MatrixXd Gs(k, d);
      Eigen::VectorXd hs(k);
      for (Eigen::Index r = 0; r < k; ++r) {
        Gs.row(r) = poly.G.row(idx[static_cast<std::size_t>(r)]);
        hs[r] = poly.h[idx[static_cast<std::size_t>(r)]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(Gs * Gs.transpose());
      if (lu.rank() < k) return;
      u = x0 - Gs.transpose() * lu.solve(Gs * x0 - hs);
    }
    if (poly.contains(u, 1e-11)) {
      const double dist = (u - x0).norm();
      if (dist < best_dist) {
        best_dist = dist;
        best = u;
      }
    }
    if (k == d) return;
    for (int r = start; r < m; ++r) {
      idx.push_back(r);
      visit(r + 1);
      idx.pop_back();
    }
  };
  visit(0);
  return best;
}

/// Minimizer of f over [lo, hi] by a uniform grid followed by repeated
/// zooming around the best grid point.
inline double grid_argmin_1d(const std::function<double(double)>& f, double lo, double hi) {
  double best = lo;
  for (int round = 0; round < 8; ++round) {
    const int steps = 2000;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
      const double t = lo + (hi - lo) * i / steps;
      const double v = f(t);
      if (v < best_val) {
        best_val = v;
        best = t;
      }
    }
    const double h = (hi - lo) / steps;
    lo = best - 2 * h;
    hi = best + 2 * h;
  }
  return best;
}

/// Bregman projection of x0 onto a planar polyhedron, by enumeration: the
/// minimizer is x0 itself, the minimizer along one constraint line, or a
/// vertex. Along a line the directional derivative <d, J(u) - J(x0)> is
/// increasing, so the line minimum is found by bisection.
inline Eigen::Vector2d bregman_projection_2d(const Polyhedron& poly, const Eigen::Vector2d& x0, double p) {
  std::vector<Eigen::Vector2d> candidates{x0};
  const auto m = poly.G.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Vector2d a = poly.G.row(i).transpose();
    const Eigen::Vector2d base = a * (poly.h[i] / a.squaredNorm());
    const Eigen::Vector2d dir(-a[1], a[0]);
    auto slope = [&](double t) { return dir.dot(duality(base + t * dir, p) - duality(x0, p)); };
    double lo = -1.0, hi = 1.0;
    while (slope(lo) > 0) lo *= 2;
    while (slope(hi) < 0) hi *= 2;
    for (int it = 0; it < 200; ++it) {
      const double mid = (lo + hi) / 2;
      (slope(mid) < 0 ? lo : hi) = mid;
    }
    candidates.push_back(base + (lo + hi) / 2 * dir);
    for (Eigen::Index j = i + 1; j < m; ++j) {
      Eigen::Matrix2d g;
      g << poly.G.row(i), poly.G.row(j);
      if (std::abs(g.determinant()) < 1e-12) continue;
      candidates.push_back(g.inverse() * Eigen::Vector2d(poly.h[i], poly.h[j]));
    }
  }
  Eigen::Vector2d best = x0;
  double best_val = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    if (!poly.contains(c, 1e-11)) continue;
    const double v = bregman(x0, c, p);
    if (v < best_val) {
      best_val = v;
      best = c;
    }
  }
  return best;
}

/// max |A x|_2 / |x|_2 over a fine grid of directions in the plane (or the
/// two directions of the line).
inline double grid_operator_norm(const Eigen::MatrixXd& A) {
  if (A.cols() == 1) return A.col(0).norm();
  double best = 0.0;
  const int steps = 200000;
  for (int i = 0; i < steps; ++i) {
    const double t = std::numbers::pi * i / steps;
    best = std::max(best, (A * Eigen::Vector2d(std::cos(t), std::sin(t))).norm());
  }
  return best;
}

/// Hand-written replay of the inertial algorithm on the one-dimensional
/// benchmark (A x = (x/2, x/3), S = P_Q, Q = [0, inf) x (-inf, 0], T x = x/4,
/// C_1 = [0, inf), p = 2). Returns x_0 .. x_{iterations + 1}.
struct DemoParams {
  std::function<double(std::size_t)> gamma, alpha, theta;
};

inline std::vector<double> demo_replay(double x0, double x1, const DemoParams& prm, std::size_t iterations) {
  std::vector<double> xs{x0, x1};
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  auto cut = [&](double near, double far) {
    // |near - u| <= |far - u|
    if (far > near) hi = std::min(hi, (near + far) / 2);
    if (far < near) lo = std::max(lo, (near + far) / 2);
  };
  for (std::size_t n = 1; n <= iterations; ++n) {
    const double w = xs[n] + prm.theta(n) * (xs[n] - xs[n - 1]);
    const double a1 = w / 2, a2 = w / 3;
    const double r1 = a1 - std::max(a1, 0.0), r2 = a2 - std::min(a2, 0.0);
    const double z = w - prm.gamma(n) * (r1 / 2 + r2 / 3);
    const double y = prm.alpha(n) * z + (1 - prm.alpha(n)) * z / 4;
    cut(y, z);
    cut(z, w);
    xs.push_back(std::clamp(x0, lo, hi));
  }
  return xs;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Eigen::VectorXd vector(Eigen::Index n, double lo, double hi) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }
  Eigen::MatrixXd matrix(Eigen::Index r, Eigen::Index c, double lo, double hi) {
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace oracle
