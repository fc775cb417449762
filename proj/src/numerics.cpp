#include "pls/numerics.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace pls::numerics {

SymEig sym_eig(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw NonSymmetric("sym_eig: matrix is not square");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw NonSymmetric("sym_eig: matrix not symmetric within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("sym_eig: eigensolver did not converge");
  }
  // Eigen returns ascending order; the contract is descending.
  const Eigen::Index n = a.rows();
  SymEig out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigenvectors.col(j) = solver.eigenvectors().col(n - 1 - j);
  }
  return out;
}

Matrix qr_orthonormal(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw RankDeficient("qr_orthonormal: matrix is not square");
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double diag = r(j, j);
    if (std::abs(diag) < 1e-12 * scale) {
      throw RankDeficient("qr_orthonormal: numerically singular input");
    }
    if (diag < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
  return q;
}

Vector solve_spd(const Matrix& a, const Vector& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Singular("solve_spd: dimension mismatch");
  }
  const double bnorm = b.norm();
  Eigen::LDLT<Matrix> ldlt(a);
  const bool factor_ok =
      ldlt.info() == Eigen::Success && ldlt.isPositive() &&
      ldlt.vectorD().minCoeff() > 1e-12 * std::max(1e-300, ldlt.vectorD().maxCoeff());
  if (factor_ok) {
    Vector x = ldlt.solve(b);
    if ((a * x - b).norm() <= 1e-8 * std::max(bnorm, 1e-300)) {
      return x;
    }
  }
  // Near-singular: minimum-norm least-squares solution.
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-13);
  Vector x = svd.solve(b);
  const double residual = (a * x - b).norm();
  if (residual > 1e-6 * std::max(bnorm, 1e-300)) {
    throw Singular("solve_spd: SVD fallback residual too large");
  }
  return x;
}

}  // namespace pls::numerics
