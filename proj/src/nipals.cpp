#include "pls/nipals.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <vector>

namespace pls::nipals {

namespace {

Matrix inverse_ptw(const Matrix& ptw) {
  Eigen::FullPivLU<Matrix> lu(ptw);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw Singular("rotation: P^T W numerically singular");
  }
  return lu.inverse();
}

}  // namespace

PlsFit nipals_fit(const model::Dataset& d, int l_max) {
  const Eigen::Index n = d.n();
  const Eigen::Index dim = d.d();
  if (l_max < 1 || l_max > dim) {
    throw Error("nipals_fit: l_max must be in [1, D]");
  }

  Matrix x = d.x;
  const double sxy0 = (d.x.transpose() * d.y).norm();
  if (sxy0 == 0.0) {
    throw DegenerateDirection("nipals_fit: X^T y is zero");
  }

  std::vector<Vector> ws, ts, ps;
  std::vector<double> qs;
  bool truncated = false;
  for (int l = 0; l < l_max; ++l) {
    const Vector c = x.transpose() * d.y;
    if (c.norm() < 1e-12 * sxy0) {
      truncated = true;
      break;
    }
    const Vector w = c / c.norm();
    const Vector t = x * w;
    const double tn2 = t.squaredNorm();
    if (tn2 < 1e-300) {
      truncated = true;
      break;
    }
    const Vector p = x.transpose() * t / tn2;
    const double q = d.y.dot(t) / tn2;
    x -= t * p.transpose();
    ws.push_back(w);
    ts.push_back(t);
    ps.push_back(p);
    qs.push_back(q);
  }
  const int l_done = static_cast<int>(ws.size());
  if (l_done == 0) {
    throw DegenerateDirection("nipals_fit: no components extractable");
  }

  PlsFit fit;
  fit.w_mat.resize(dim, l_done);
  fit.t_mat.resize(n, l_done);
  fit.p_mat.resize(dim, l_done);
  fit.q_row.resize(l_done);
  fit.d_norms.resize(l_done);
  for (int l = 0; l < l_done; ++l) {
    fit.w_mat.col(l) = ws[static_cast<size_t>(l)];
    fit.t_mat.col(l) = ts[static_cast<size_t>(l)];
    fit.p_mat.col(l) = ps[static_cast<size_t>(l)];
    fit.q_row(l) = qs[static_cast<size_t>(l)];
    fit.d_norms(l) = fit.t_mat.col(l).norm();
  }
  fit.x_deflated = x;
  fit.l_done = l_done;
  fit.truncated = truncated;
  fit.r_mat = rotation(fit.w_mat, fit.p_mat);

  // beta^(L) = R_L D_L^{-2} T_L^T y = R_L (q_1..q_L); P_L^T W_L nests, so each
  // prefix is solved independently.
  const Matrix ptw = fit.p_mat.transpose() * fit.w_mat;
  for (int l = 1; l <= l_done; ++l) {
    const Matrix inv = inverse_ptw(ptw.topLeftCorner(l, l));
    fit.coefficient_path.betas.push_back(fit.w_mat.leftCols(l) * (inv * fit.q_row.head(l)));
  }
  return fit;
}

Matrix rotation(const Matrix& w_mat, const Matrix& p_mat) {
  return w_mat * inverse_ptw(p_mat.transpose() * w_mat);
}

double deflation_reconstruction_check(const PlsFit& fit, const model::Dataset& d) {
  const double res_x =
      (d.x - fit.t_mat * fit.p_mat.transpose() - fit.x_deflated).cwiseAbs().maxCoeff();
  Vector y_defl = d.y;
  for (int l = 0; l < fit.l_done; ++l) {
    const Vector t = fit.t_mat.col(l);
    y_defl -= t * (t.dot(y_defl) / t.squaredNorm());
  }
  const double res_y =
      (d.y - fit.t_mat * fit.q_row - y_defl).cwiseAbs().maxCoeff();
  return std::max(res_x, res_y);
}

}  // namespace pls::nipals
