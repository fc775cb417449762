#ifndef PLS_NUMERICS_HPP
#define PLS_NUMERICS_HPP

#include "pls/common.hpp"

namespace pls::numerics {

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending
/// with matching orthonormal eigenvector columns.
struct SymEig {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Decomposes a symmetric matrix. Throws NonSymmetric if the input deviates
/// from symmetry by more than 1e-10 relative.
SymEig sym_eig(const Matrix& a);

/// Orthonormal factor of the QR decomposition of a square full-rank matrix,
/// sign-fixed so that R has a positive diagonal. With Gaussian input this
/// yields a Haar-distributed rotation.
Matrix qr_orthonormal(const Matrix& a);

/// Solves a x = b for symmetric positive-definite a via LDLT, falling back to
/// an SVD least-squares solve when the factorization detects near-singularity.
/// Throws Singular only when even the fallback residual is large.
Vector solve_spd(const Matrix& a, const Vector& b);

}  // namespace pls::numerics

#endif  // PLS_NUMERICS_HPP
