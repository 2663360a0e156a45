#include "scfp/projections.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

namespace scfp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Constraint {
  Eigen::VectorXd a;
  double b;
  double a_norm;  // Euclidean, for scale-free violation tests
};

// Base box faces and nontrivial half-spaces as one list of <a, u> <= b.
std::vector<Constraint> collect_constraints(const ShrinkingSet& set) {
  std::vector<Constraint> out;
  const auto d = static_cast<Eigen::Index>(set.base().dim());
  for (Eigen::Index i = 0; i < d; ++i) {
    if (std::isfinite(set.base().upper()[i])) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
      e[i] = 1.0;
      out.push_back({e, set.base().upper()[i], 1.0});
    }
    if (std::isfinite(set.base().lower()[i])) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
      e[i] = -1.0;
      out.push_back({e, -set.base().lower()[i], 1.0});
    }
  }
  for (const auto& h : set.halfspaces()) {
    if (h.is_trivial()) continue;
    out.push_back({h.normal().coords(), h.offset(), h.normal().coords().norm()});
  }
  return out;
}

// Largest violation of <a, u> <= b, measured as distance to the boundary.
double max_violation(const std::vector<Constraint>& cs, const Eigen::VectorXd& u) {
  double worst = 0.0;
  for (const auto& c : cs) worst = std::max(worst, (c.a.dot(u) - c.b) / c.a_norm);
  return worst;
}

Eigen::VectorXd dual_inverse(const Eigen::VectorXd& phi, double q) {
  if (q == 2.0) return phi;
  return phi.unaryExpr([q](double v) { return v == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(v), q - 1.0), v); });
}

void check_dims(const ShrinkingSet& set, const Point& x0) {
  if (set.base().dim() != x0.dim()) {
    throw DimensionError("projection set has dimension " + std::to_string(set.base().dim()) + ", point has " +
                         std::to_string(x0.dim()));
  }
}

Eigen::VectorXd euclidean_active_set(const std::vector<Constraint>& cs, const Eigen::VectorXd& x0, double tol) {
  // Unit normals n_j = -a_j / |a_j|, slack s_j(x) = <n_j, x> - b'_j = (b_j - <a_j, x>) / |a_j|.
  std::vector<Eigen::VectorXd> n;
  std::vector<double> rhs;
  for (const auto& c : cs) {
    n.push_back(-c.a / c.a_norm);
    rhs.push_back(-c.b / c.a_norm);
  }
  auto slack = [&](std::size_t j, const Eigen::VectorXd& x) { return n[j].dot(x) - rhs[j]; };

  const Eigen::Index d = x0.size();
  Eigen::VectorXd x = x0;
  std::vector<std::size_t> active;
  std::vector<double> u;
  const double feas_tol = tol * (1.0 + x0.norm());
  const std::size_t max_steps = 100 * (cs.size() + 10);

  for (std::size_t steps = 0; steps < max_steps;) {
    std::size_t p = cs.size();
    double worst = -feas_tol;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const double sj = slack(j, x);
      if (sj < worst) {
        worst = sj;
        p = j;
      }
    }
    if (p == cs.size()) return x;

    double u_p = 0.0;
    for (; steps < max_steps; ++steps) {
      Eigen::MatrixXd nmat(d, static_cast<Eigen::Index>(active.size()));
      for (std::size_t k = 0; k < active.size(); ++k) nmat.col(static_cast<Eigen::Index>(k)) = n[active[k]];
      Eigen::VectorXd r = active.empty() ? Eigen::VectorXd() : Eigen::VectorXd(nmat.colPivHouseholderQr().solve(n[p]));
      const Eigen::VectorXd z = active.empty() ? n[p] : Eigen::VectorXd(n[p] - nmat * r);

      double t1 = kInf;
      std::size_t drop = active.size();
      for (std::size_t k = 0; k < active.size(); ++k) {
        if (r[static_cast<Eigen::Index>(k)] > 0.0) {
          const double ratio = u[k] / r[static_cast<Eigen::Index>(k)];
          if (ratio < t1) {
            t1 = ratio;
            drop = k;
          }
        }
      }
      const double zz = z.squaredNorm();
      const double t2 = zz > 1e-28 ? -slack(p, x) / zz : kInf;
      if (t1 == kInf && t2 == kInf) {
        throw InfeasibleSetError("active-set projection: the constraint set is empty");
      }
      const double t = std::min(t1, t2);
      if (t2 < kInf) x += t * z;
      for (std::size_t k = 0; k < active.size(); ++k) u[k] -= t * r[static_cast<Eigen::Index>(k)];
      u_p += t;
      if (t2 <= t1) {
        active.push_back(p);
        u.push_back(u_p);
        ++steps;
        break;
      }
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(drop));
      u.erase(u.begin() + static_cast<std::ptrdiff_t>(drop));
    }
  }
  throw InfeasibleSetError("active-set projection did not terminate; the constraint set may be degenerate");
}

// Minimizes F(u) = |u|_p^p / p - <phi0, u> (that is D_p(x0, u) up to a
// constant) over {<a_j, u> <= b_j} by a primal active-set method: Newton
// steps on the current face, ratio tests against the other constraints, and
// removal of constraints with negative multipliers. `start` must be feasible.
Eigen::VectorXd bregman_active_set(const std::vector<Constraint>& cs, const Eigen::VectorXd& phi0, double p,
                                   Eigen::VectorXd u, double tol) {
  const Eigen::Index d = u.size();
  auto objective = [&](const Eigen::VectorXd& v) { return v.array().abs().pow(p).sum() / p - phi0.dot(v); };
  auto gradient = [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(dual_inverse(v, p) - phi0); };
  auto slack = [&](std::size_t j, const Eigen::VectorXd& v) { return (cs[j].b - cs[j].a.dot(v)) / cs[j].a_norm; };
  const double grad_tol = 1e-14 * (1.0 + phi0.norm());
  const double feas_tol = tol * (1.0 + u.norm());

  std::vector<std::size_t> working;
  auto normals = [&] {
    Eigen::MatrixXd nm(d, static_cast<Eigen::Index>(working.size()));
    for (std::size_t k = 0; k < working.size(); ++k) nm.col(static_cast<Eigen::Index>(k)) = cs[working[k]].a / cs[working[k]].a_norm;
    return nm;
  };
  // Adds j when its normal is independent of the working set.
  auto try_add = [&](std::size_t j) {
    if (static_cast<Eigen::Index>(working.size()) >= d) return false;
    working.push_back(j);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(normals());
    qr.setThreshold(1e-10);
    if (qr.rank() == static_cast<Eigen::Index>(working.size())) return true;
    working.pop_back();
    return false;
  };
  for (std::size_t j = 0; j < cs.size(); ++j) {
    if (slack(j, u) <= feas_tol) try_add(j);
  }

  const std::size_t max_rounds = 20 * (cs.size() + 10);
  for (std::size_t round = 0; round < max_rounds; ++round) {
    const Eigen::MatrixXd nm = normals();
    Eigen::MatrixXd z;
    if (working.empty()) {
      z = Eigen::MatrixXd::Identity(d, d);
    } else {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(nm);
      const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
      z = q.rightCols(d - static_cast<Eigen::Index>(working.size()));
    }

    bool blocked = false;
    bool stationary = z.cols() == 0;
    double mu = 1e-10;
    for (int it = 0; it < 500 && !stationary; ++it) {
      const Eigen::VectorXd g = gradient(u);
      const Eigen::VectorXd rg = z.transpose() * g;
      if (rg.norm() <= grad_tol) {
        stationary = true;
        break;
      }
      const Eigen::VectorXd curv = (p - 1.0) * u.array().abs().pow(p - 2.0);
      Eigen::MatrixXd h = z.transpose() * curv.asDiagonal() * z;
      h.diagonal().array() += mu * (1.0 + h.diagonal().maxCoeff());
      const Eigen::VectorXd dir = -z * h.ldlt().solve(rg);

      double step_max = kInf;
      std::size_t blocker = cs.size();
      for (std::size_t j = 0; j < cs.size(); ++j) {
        if (std::find(working.begin(), working.end(), j) != working.end()) continue;
        const double rate = cs[j].a.dot(dir);
        if (rate <= 0.0) continue;
        const double reach = std::max(0.0, cs[j].b - cs[j].a.dot(u)) / rate;
        if (reach < step_max) {
          step_max = reach;
          blocker = j;
        }
      }
      const double f0 = objective(u);
      const double slope = g.dot(dir);
      const double alpha0 = std::min(1.0, step_max);
      double alpha = alpha0;
      // Below the rounding level of F the decrease test is meaningless; fall back to the reduced gradient.
      auto acceptable = [&](double a) {
        const Eigen::VectorXd trial = u + a * dir;
        if (std::abs(a * slope) > 1e-12 * (1.0 + std::abs(f0))) return objective(trial) <= f0 + 1e-4 * a * slope;
        return (z.transpose() * gradient(trial)).norm() < rg.norm();
      };
      while (alpha > 0.0 && !acceptable(alpha)) alpha *= 0.5;
      if (alpha < alpha0 * 0.99) {
        mu = std::min(mu * 16.0, 1e10);  // the quadratic model overshot; damp harder
      } else {
        mu = std::max(mu * 0.25, 1e-14);
      }
      if (alpha == 0.0) continue;
      u += alpha * dir;
      if (blocker < cs.size() && alpha == step_max && try_add(blocker)) {
        blocked = true;
        break;
      }
    }
    if (blocked) continue;
    if (!stationary) throw InfeasibleSetError("active-set Bregman projection: Newton steps stalled on a face");


    // Multipliers of grad F + sum lambda_k n_k = 0 on the working set.
    if (working.empty()) return u;
    const Eigen::VectorXd lambda = nm.colPivHouseholderQr().solve(-gradient(u));
    Eigen::Index worst = 0;
    const double most_negative = lambda.minCoeff(&worst);
    if (most_negative >= -grad_tol) return u;
    working.erase(working.begin() + worst);
  }
  throw InfeasibleSetError("active-set Bregman projection did not terminate");
}

}  // namespace

BoxSet::BoxSet(Eigen::VectorXd lower, Eigen::VectorXd upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) throw DimensionError("box bounds have different lengths");
  if (lower_.size() == 0) throw ConfigError("box must have positive dimension");
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (std::isnan(lower_[i]) || std::isnan(upper_[i])) throw ConfigError("box bound is NaN");
    if (!(lower_[i] <= upper_[i])) {
      throw ConfigError("box coordinate " + std::to_string(i) + " has lower bound above upper bound");
    }
    if (lower_[i] == kInf || upper_[i] == -kInf) throw ConfigError("box coordinate " + std::to_string(i) + " is empty");
  }
}

BoxSet BoxSet::whole_space(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return BoxSet(Eigen::VectorXd::Constant(d, -kInf), Eigen::VectorXd::Constant(d, kInf));
}

bool BoxSet::is_whole_space() const noexcept {
  return (lower_.array() == -kInf).all() && (upper_.array() == kInf).all();
}

bool BoxSet::contains(const Eigen::VectorXd& u, double slack) const {
  if (u.size() != lower_.size()) throw DimensionError("box membership test with wrong dimension");
  return ((u.array() >= lower_.array() - slack) && (u.array() <= upper_.array() + slack)).all();
}

Eigen::VectorXd BoxSet::clamp(const Eigen::VectorXd& v) const {
  if (v.size() != lower_.size()) throw DimensionError("box clamp with wrong dimension");
  return v.cwiseMax(lower_).cwiseMin(upper_);
}

Point metric_project_box(const BoxSet& box, const Point& v) { return Point(v.space(), box.clamp(v.coords())); }

HalfSpace::HalfSpace(DualPoint normal, double offset) : normal_(std::move(normal)), offset_(offset) {
  if (!std::isfinite(offset_)) throw NonFiniteError("half-space offset is not finite");
  if (is_trivial() && offset_ < 0.0) throw InfeasibleSetError("half-space with zero normal and negative offset is empty");
}

HalfSpace halfspace_from_bregman_pair(const Point& near, const Point& far) {
  Point::check_same(near, far);
  const DualPoint jf = duality_map(far), jn = duality_map(near);
  DualPoint normal = jf - jn;
  const double resolution = kPairResolution * (jf.coords().norm() + jn.coords().norm());
  if (std::isfinite(resolution) && normal.coords().norm() <= resolution) {
    return HalfSpace(DualPoint::zero(near.space()), 0.0);
  }
  const double offset = (norm_p_pow(far) - norm_p_pow(near)) / near.space().q();
  return HalfSpace(std::move(normal), offset);
}

double ShrinkingSet::min_slack(const Point& u) const {
  if (u.dim() != base_.dim()) throw DimensionError("membership test with wrong dimension");
  double worst = kInf;
  for (Eigen::Index i = 0; i < u.coords().size(); ++i) {
    worst = std::min(worst, u.coords()[i] - base_.lower()[i]);
    worst = std::min(worst, base_.upper()[i] - u.coords()[i]);
  }
  for (const auto& h : halfspaces_) worst = std::min(worst, h.slack(u));
  return worst;
}

double default_projection_tol(const SpaceSpec& space) {
  return (space.dim() == 1 || space.is_hilbert()) ? 1e-12 : 1e-10;
}

Point project_interval(const ShrinkingSet& set, const Point& x0) {
  check_dims(set, x0);
  if (x0.dim() != 1) throw DimensionError("closed-form interval projection needs dimension 1");
  double lo = set.base().lower()[0];
  double hi = set.base().upper()[0];
  for (const auto& h : set.halfspaces()) {
    const double a = h.normal()[0];
    if (a > 0.0) {
      hi = std::min(hi, h.offset() / a);
    } else if (a < 0.0) {
      lo = std::max(lo, h.offset() / a);
    }
  }
  if (lo > hi) {
    throw InfeasibleSetError("constraint interval is empty: [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  // D_p(x0, .) is convex on the line with its minimum at x0, so the clamp is optimal for every p.
  return Point(x0.space(), Eigen::VectorXd::Constant(1, std::clamp(x0[0], lo, hi)));
}

Point project_dykstra(const ShrinkingSet& set, const Point& x0, double tol) {
  check_dims(set, x0);
  if (!x0.space().is_hilbert()) throw ConfigError("Dykstra projection is the Euclidean (p = 2) route");
  std::vector<const HalfSpace*> hs;
  for (const auto& h : set.halfspaces()) {
    if (!h.is_trivial()) hs.push_back(&h);
  }
  const bool use_box = !set.base().is_whole_space();
  const std::size_t n_sets = hs.size() + (use_box ? 1 : 0);
  if (n_sets == 0) return x0;

  const Eigen::Index d = x0.coords().size();
  std::vector<Eigen::VectorXd> incr(n_sets, Eigen::VectorXd::Zero(d));
  std::vector<double> a_sq(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) a_sq[i] = hs[i]->normal().coords().squaredNorm();

  Eigen::VectorXd x = x0.coords();
  const double scale = 1.0 + x0.coords().norm();
  constexpr std::size_t kMaxCycles = 20000;
  for (std::size_t cycle = 0; cycle < kMaxCycles; ++cycle) {
    double change = 0.0;
    for (std::size_t k = 0; k < n_sets; ++k) {
      const Eigen::VectorXd v = x + incr[k];
      Eigen::VectorXd y;
      if (use_box && k == n_sets - 1) {
        y = set.base().clamp(v);
      } else {
        const auto& a = hs[k]->normal().coords();
        const double excess = a.dot(v) - hs[k]->offset();
        y = excess > 0.0 ? Eigen::VectorXd(v - (excess / a_sq[k]) * a) : v;
      }
      const Eigen::VectorXd new_incr = v - y;
      change += (new_incr - incr[k]).squaredNorm();
      incr[k] = new_incr;
      x = y;
    }
    if (std::sqrt(change) <= tol * scale) return Point(x0.space(), x);
  }
  throw InfeasibleSetError("Dykstra projection did not settle within " + std::to_string(kMaxCycles) + " cycles");
}

Point project_active_set(const ShrinkingSet& set, const Point& x0, double tol) {
  check_dims(set, x0);
  if (!x0.space().is_hilbert()) throw ConfigError("active-set projection is the Euclidean (p = 2) route");
  return Point(x0.space(), euclidean_active_set(collect_constraints(set), x0.coords(), tol));
}

Point project_primal_active_set(const ShrinkingSet& set, const Point& x0, double tol) {
  check_dims(set, x0);
  const auto cs = collect_constraints(set);
  if (cs.empty()) return x0;
  Eigen::VectorXd start = euclidean_active_set(cs, x0.coords(), 1e-14);
  return Point(x0.space(), bregman_active_set(cs, duality_map(x0).coords(), x0.space().p(), std::move(start), tol));
}

Point project_dual_ascent(const ShrinkingSet& set, const Point& x0, double tol) {
  check_dims(set, x0);
  const auto cs = collect_constraints(set);
  if (cs.empty()) return x0;
  const double q = x0.space().q();
  const Eigen::VectorXd phi0 = duality_map(x0).coords();
  const double scale = 1.0 + x0.coords().norm();
  const auto d = static_cast<Eigen::Index>(x0.dim());

  std::vector<double> lambda(cs.size(), 0.0);
  auto dual_point = [&](const std::vector<double>& lam) {
    Eigen::VectorXd phi = phi0;
    for (std::size_t i = 0; i < cs.size(); ++i) phi -= lam[i] * cs[i].a;
    return phi;
  };
  // KKT for u = J^q(phi0 - sum lambda_i a_i): feasible, and tight wherever
  // lambda_i > 0, up to tol plus the rounding that J^q amplifies where the
  // dual point is formed by cancellation.
  auto kkt = [&](const std::vector<double>& lam, const Eigen::VectorXd& u) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    Eigen::VectorXd mag = phi0.cwiseAbs();
    for (std::size_t i = 0; i < cs.size(); ++i) mag += std::abs(lam[i]) * cs[i].a.cwiseAbs();
    const Eigen::VectorXd phi = dual_point(lam);
    Eigen::VectorXd noise(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      const double dphi = 16.0 * eps * mag[j];
      noise[j] = dphi * (q - 1.0) * std::pow(std::max(std::abs(phi[j]), dphi), q - 2.0);
    }
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (lam[i] < 0.0) return false;
      const double allowed = tol * scale + cs[i].a.cwiseAbs().dot(noise) / cs[i].a_norm;
      const double s = (cs[i].b - cs[i].a.dot(u)) / cs[i].a_norm;
      if (s < -allowed || (lam[i] > 0.0 && s > allowed)) return false;
    }
    return true;
  };
  // Damped Newton on the dual restricted to the constraints with positive
  // multipliers, treating them as equalities.
  auto polish = [&](std::vector<double> lam) -> std::optional<std::vector<double>> {
    std::vector<std::size_t> work;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (lam[i] > 0.0) work.push_back(i);
    }
    const auto k = static_cast<Eigen::Index>(work.size());
    if (k == 0 || k > d) return std::nullopt;
    Eigen::MatrixXd a(k, d);
    Eigen::VectorXd b(k), l(k), a_norm(k);
    for (Eigen::Index r = 0; r < k; ++r) {
      const auto i = work[static_cast<std::size_t>(r)];
      a.row(r) = cs[i].a.transpose();
      b[r] = cs[i].b;
      a_norm[r] = cs[i].a_norm;
      l[r] = lam[i];
    }
    auto value = [&](const Eigen::VectorXd& v) {
      const Eigen::VectorXd phi = phi0 - a.transpose() * v;
      return -phi.array().abs().pow(q).sum() / q - b.dot(v);
    };
    auto gradient = [&](const Eigen::VectorXd& v) {
      return Eigen::VectorXd(a * dual_inverse(phi0 - a.transpose() * v, q) - b);
    };
    for (int it = 0; it < 100; ++it) {
      const Eigen::VectorXd phi = phi0 - a.transpose() * l;
      const Eigen::VectorXd grad = gradient(l);
      if (grad.cwiseQuotient(a_norm).cwiseAbs().maxCoeff() <= 0.1 * tol * scale) break;
      const double floor = 1e-12 * (1.0 + phi.cwiseAbs().maxCoeff());
      const Eigen::VectorXd curv = (q - 1.0) * phi.cwiseAbs().cwiseMax(floor).array().pow(q - 2.0);
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(a * curv.asDiagonal() * a.transpose());
      if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return std::nullopt;
      const Eigen::VectorXd dir = ldlt.solve(grad);
      if (!dir.allFinite()) return std::nullopt;
      const double g0 = value(l), slope = grad.dot(dir);
      // Below the rounding level of the dual value, fall back to the gradient norm.
      auto acceptable = [&](double t) {
        if (std::abs(t * slope) > 1e-12 * (1.0 + std::abs(g0))) return value(l + t * dir) >= g0 + 1e-4 * t * slope;
        return gradient(l + t * dir).norm() < grad.norm();
      };
      double step = 1.0;
      while (step > 1e-12 && !acceptable(step)) step *= 0.5;
      if (step <= 1e-12) break;
      l += step * dir;
    }
    for (Eigen::Index r = 0; r < k; ++r) lam[work[static_cast<std::size_t>(r)]] = l[r];
    return lam;
  };

  Eigen::VectorXd phi = phi0;
  constexpr std::size_t kMaxSweeps = 20000;
  boost::math::tools::eps_tolerance<double> root_tol(50);

  for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const auto& c = cs[i];
      const Eigen::VectorXd rest = phi + lambda[i] * c.a;
      // Decreasing in t: the constraint value at the primal point for multiplier t.
      auto residual = [&](double t) { return c.a.dot(dual_inverse(rest - t * c.a, q)) - c.b; };
      double t = 0.0;
      const double r0 = residual(0.0);
      if (r0 > 0.0) {
        double lo = 0.0;
        double hi = std::max(lambda[i], 1.0);
        double r_hi = residual(hi);
        int doublings = 0;
        while (r_hi > 0.0) {
          lo = hi;
          hi *= 2.0;
          r_hi = residual(hi);
          if (++doublings > 2000 || !std::isfinite(hi)) {
            throw InfeasibleSetError("dual multiplier diverged; the constraint set is empty");
          }
        }
        const double r_lo = residual(lo);
        if (r_hi == 0.0) {
          t = hi;
        } else if (r_lo <= 0.0) {
          t = lo;
        } else {
          std::uintmax_t iters = 200;
          const auto bracket = boost::math::tools::toms748_solve(residual, lo, hi, r_lo, r_hi, root_tol, iters);
          t = 0.5 * (bracket.first + bracket.second);
        }
      }
      lambda[i] = t;
      phi = rest - t * c.a;
    }
    if (sweep % 16 == 0) phi = dual_point(lambda);
    const Eigen::VectorXd u = dual_inverse(phi, q);
    if (kkt(lambda, u)) return Point(x0.space(), u);
    if (sweep % 16 == 0) {
      if (const auto polished = polish(lambda)) {
        const Eigen::VectorXd v = dual_inverse(dual_point(*polished), q);
        if (kkt(*polished, v)) return Point(x0.space(), v);
      }
    }
  }
  throw InfeasibleSetError("dual ascent projection did not converge; the constraint set may be empty");
}

Point bregman_project(const ShrinkingSet& set, const Point& x0, std::optional<double> tol) {
  check_dims(set, x0);
  const double t = tol.value_or(default_projection_tol(x0.space()));
  if (!(t > 0.0)) throw ConfigError("projection tolerance must be positive");
  if (x0.dim() == 1) return project_interval(set, x0);
  if (set.contains(x0)) return x0;
  Point u = x0;
  if (x0.space().is_hilbert()) {
    try {
      u = project_active_set(set, x0, t);
    } catch (const InfeasibleSetError&) {
      u = project_dykstra(set, x0, t);
    }
  } else {
    try {
      u = project_primal_active_set(set, x0, t);
    } catch (const InfeasibleSetError&) {
      u = project_dual_ascent(set, x0, t);
    }
  }
  const double scale = 1.0 + x0.coords().norm();
  if (max_violation(collect_constraints(set), u.coords()) > 1e-7 * scale) {
    throw InfeasibleSetError("projection returned an infeasible point; the constraint set has numerically collapsed");
  }
  return u;
}

}  // namespace scfp
