#ifndef PLS_NIPALS_HPP
#define PLS_NIPALS_HPP

#include "pls/model.hpp"

namespace pls::nipals {

/// Result of a NIPALS fit with l_done extracted components. Columns of the
/// matrices pair up per component: weights w_l, scores t_l, x-loadings p_l,
/// y-loadings q_l, and the rotation R with T = X R. coefficient_path[L] is
/// the PLS coefficient vector with L components.
struct PlsFit {
  Matrix w_mat;  // D x L
  Matrix t_mat;  // N x L
  Matrix p_mat;  // D x L
  Vector q_row;  // L
  Matrix r_mat;  // D x L
  Vector d_norms;  // L, |t_l|
  model::CoefficientPath coefficient_path;
  Matrix x_deflated;  // X_L after l_done deflations
  int l_done = 0;
  bool truncated = false;  // degenerate direction hit before l_max
};

/// Runs exactly l_max NIPALS iterations (the component count equals the loop
/// count), truncating early with truncated=true when the weight direction
/// degenerates, i.e. |X_{l-1}^T y| < 1e-12 |X^T y|.
PlsFit nipals_fit(const model::Dataset& d, int l_max);

/// R = W (P^T W)^{-1}, the rotation expressing scores in terms of the
/// original data. Throws Singular when P^T W is numerically singular.
Matrix rotation(const Matrix& w_mat, const Matrix& p_mat);

/// Max-norm residual of the decomposition X = T P^T + X_L, y = T q^T + y_L,
/// with y_L rebuilt from the product of score projectors.
double deflation_reconstruction_check(const PlsFit& fit, const model::Dataset& d);

}  // namespace pls::nipals

#endif  // PLS_NIPALS_HPP
