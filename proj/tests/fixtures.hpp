#pragma once

// Seeded problem generators shared by the unit tests and the acceptance run.

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "scfp/solvers.hpp"

namespace fixtures {

/// A nonempty polyhedron in two forms: the library's shrinking set and the
/// oracle's inequality system, plus a point strictly inside it.
struct Polyhedron {
  scfp::ShrinkingSet set;
  oracle::Polyhedron poly;
  Eigen::VectorXd centre;
};

/// Box around a random centre (some sides unbounded) cut by `cuts` half-spaces
/// that keep the centre strictly inside.
inline Polyhedron random_polyhedron(oracle::Rng& rng, const scfp::SpaceSpec& space, int cuts) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const auto d = static_cast<Eigen::Index>(space.dim());
  const Eigen::VectorXd centre = rng.vector(d, -1, 1);
  Eigen::VectorXd lo(d), hi(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    lo[i] = rng.uniform(0, 1) < 0.3 ? -inf : centre[i] - rng.uniform(0.1, 2);
    hi[i] = rng.uniform(0, 1) < 0.3 ? inf : centre[i] + rng.uniform(0.1, 2);
  }
  scfp::ShrinkingSet set(scfp::BoxSet(lo, hi));
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (std::isfinite(lo[i])) {
      rows.push_back(-Eigen::VectorXd::Unit(d, i));
      rhs.push_back(-lo[i]);
    }
    if (std::isfinite(hi[i])) {
      rows.push_back(Eigen::VectorXd::Unit(d, i));
      rhs.push_back(hi[i]);
    }
  }
  for (int k = 0; k < cuts; ++k) {
    const Eigen::VectorXd a = rng.vector(d, -1, 1);
    const double b = a.dot(centre) + rng.uniform(0.01, 0.5);
    set.add(scfp::HalfSpace(scfp::DualPoint(space, a), b));
    rows.push_back(a);
    rhs.push_back(b);
  }
  const auto m = static_cast<Eigen::Index>(rows.size());
  oracle::Polyhedron poly{Eigen::MatrixXd(m, d), Eigen::VectorXd(m)};
  for (Eigen::Index r = 0; r < m; ++r) {
    poly.G.row(r) = rows[static_cast<std::size_t>(r)];
    poly.h[r] = rhs[static_cast<std::size_t>(r)];
  }
  return {std::move(set), std::move(poly), centre};
}

/// Random split problem with 0 in the solution set: T x = c x on E1, S the
/// projection onto a box around 0 in E2, constant admissible parameters,
/// 25 iterations.
inline scfp::ProblemSpec random_problem(oracle::Rng& rng, double p, scfp::Variant variant) {
  using namespace scfp;
  const auto d1 = static_cast<std::size_t>(rng.integer(1, 3)), d2 = static_cast<std::size_t>(rng.integer(1, 3));
  const SpaceSpec e1(d1, p), e2(d2, p);
  const auto n1 = static_cast<Eigen::Index>(d1), n2 = static_cast<Eigen::Index>(d2);
  LinearOperator op(rng.matrix(n2, n1, -1, 1), e1, e2);
  const BoxSet q(-rng.vector(n2, 0.1, 1), rng.vector(n2, 0.1, 1));
  ScheduleSpec schedule;
  schedule.gamma = SequenceRule::constant(rng.uniform(0.1, 0.9) * gamma_upper_bound(e2, op));
  schedule.alpha = SequenceRule::constant(rng.uniform(0.05, 0.95));
  schedule.theta = SequenceRule::constant(rng.uniform(0, 0.5));
  StoppingRule stop;
  stop.max_iter = 25;
  const Point x0(e1, rng.vector(n1, -3, 3)), x1(e1, rng.vector(n1, -3, 3));
  return ProblemSpec{op,
                     scaling_map(e1, rng.uniform(0.1, 0.9)),
                     projection_map(e2, q),
                     BoxSet::whole_space(d1),
                     x0,
                     x1,
                     schedule,
                     stop,
                     variant,
                     Point::zero(e1)};
}

/// Affine monotone operator L L^T + (K - K^T) with a random shift.
inline scfp::MonotoneLinearOp random_monotone(oracle::Rng& rng, Eigen::Index d) {
  const Eigen::MatrixXd l = rng.matrix(d, d, -1, 1);
  const Eigen::MatrixXd k = rng.matrix(d, d, -1, 1);
  return scfp::MonotoneLinearOp(l * l.transpose() + (k - k.transpose()), rng.vector(d, -1, 1));
}

}  // namespace fixtures
