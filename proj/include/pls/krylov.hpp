#ifndef PLS_KRYLOV_HPP
#define PLS_KRYLOV_HPP

#include "pls/model.hpp"

namespace pls::krylov {

/// Krylov basis of span{b, Ab, ..., A^{order-1} b}. `ortho` holds the
/// orthonormalized columns; its column count is the effective dimension,
/// which drops below `order` once the subspace numerically converges.
struct KrylovBasis {
  int order = 0;
  Matrix raw_vectors;  // D x order
  Matrix ortho;        // D x effective_dim
};

KrylovBasis krylov_basis(const Matrix& a, const Vector& b, int order);

/// A-norm projection of the solution of A x = b onto the order-l Krylov
/// subspace: B (B^T A B)^{-1} B^T b with B orthonormal. For A = Sxx and
/// b = Sxy this is the PLS coefficient vector with l components.
Vector restricted_ls(const Matrix& a, const Vector& b, int l);

/// Conjugate gradient on A x = b from a zero start; returns the iterate
/// after each of the first l steps. The path truncates early on curvature
/// breakdown (numerical rank exhaustion).
std::vector<Vector> cg_path(const Matrix& a, const Vector& b, int l);

Vector pls_via_restricted_ls(const model::Dataset& d, int l);

model::CoefficientPath pls_via_cg(const model::Dataset& d, int l);

}  // namespace pls::krylov

#endif  // PLS_KRYLOV_HPP
