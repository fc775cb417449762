#include "pls/krylov.hpp"

#include "pls/numerics.hpp"

#include <cmath>

namespace pls::krylov {

KrylovBasis krylov_basis(const Matrix& a, const Vector& b, int order) {
  if (b.norm() == 0.0) {
    throw ZeroVector("krylov_basis: b is zero");
  }
  if (order < 1) {
    throw Error("krylov_basis: order must be >= 1");
  }
  const Eigen::Index dim = b.size();
  KrylovBasis basis;
  basis.order = order;
  basis.raw_vectors.resize(dim, order);
  basis.raw_vectors.col(0) = b;
  for (int j = 1; j < order; ++j) {
    basis.raw_vectors.col(j) = a * basis.raw_vectors.col(j - 1);
  }

  // Modified Gram-Schmidt with one reorthogonalization pass; vectors whose
  // residual falls below 1e-10 of their original norm are dropped.
  Matrix q(dim, order);
  int kept = 0;
  for (int j = 0; j < order; ++j) {
    Vector v = basis.raw_vectors.col(j);
    const double orig = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < kept; ++k) {
        v -= q.col(k) * q.col(k).dot(v);
      }
    }
    if (v.norm() < 1e-10 * orig) {
      continue;
    }
    q.col(kept++) = v / v.norm();
  }
  basis.ortho = q.leftCols(kept);
  return basis;
}

Vector restricted_ls(const Matrix& a, const Vector& b, int l) {
  const KrylovBasis basis = krylov_basis(a, b, l);
  const Matrix& q = basis.ortho;
  const Matrix g = q.transpose() * a * q;
  const Vector rhs = q.transpose() * b;
  return q * numerics::solve_spd(0.5 * (g + g.transpose()), rhs);
}

std::vector<Vector> cg_path(const Matrix& a, const Vector& b, int l) {
  std::vector<Vector> path;
  Vector x = Vector::Zero(b.size());
  Vector r = b;
  Vector p = b;
  double rr = r.squaredNorm();
  for (int k = 0; k < l; ++k) {
    const Vector ap = a * p;
    const double curvature = p.dot(ap);
    if (curvature <= 1e-14 * p.squaredNorm()) {
      break;
    }
    const double alpha = rr / curvature;
    x += alpha * p;
    r -= alpha * ap;
    const double rr_next = r.squaredNorm();
    path.push_back(x);
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  if (path.empty()) {
    throw Breakdown("cg_path: immediate curvature breakdown");
  }
  return path;
}

Vector pls_via_restricted_ls(const model::Dataset& d, int l) {
  const auto [sxx, sxy] = model::covariance_pair(d);
  return restricted_ls(sxx, sxy, l);
}

model::CoefficientPath pls_via_cg(const model::Dataset& d, int l) {
  const auto [sxx, sxy] = model::covariance_pair(d);
  model::CoefficientPath path;
  path.betas = cg_path(sxx, sxy, l);
  return path;
}

}  // namespace pls::krylov
