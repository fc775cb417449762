#ifndef PLS_MODEL_HPP
#define PLS_MODEL_HPP

#include "pls/common.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pls::model {

/// Regression data in the no-intercept model. `centered` records that the
/// columns of x and the response were mean-adjusted; operations trust the
/// flag and covariance_pair verifies it when set.
struct Dataset {
  Matrix x;
  Vector y;
  bool centered = false;
  std::optional<Vector> column_scales;

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index d() const { return x.cols(); }
};

/// Coefficient vectors indexed by component count, betas[k] for L = k + 1.
struct CoefficientPath {
  std::vector<Vector> betas;

  int l_max() const { return static_cast<int>(betas.size()); }
  const Vector& at(int l) const { return betas.at(static_cast<size_t>(l) - 1); }
};

enum class Method { kPls, kOls, kPcr };

struct FitReport {
  Method method;
  CoefficientPath coefficients;
  Vector r2_per_l;
  Vector residual_norms;
};

struct CovariancePair {
  Matrix sxx;
  Vector sxy;
};

/// Gram products Sxx = X^T X (symmetrized by averaging) and Sxy = X^T y.
/// No 1/N scaling; all downstream ratios are invariant to it.
CovariancePair covariance_pair(const Dataset& d);

/// In-sample coefficient of determination, 1 - |y - Xb|^2 / |y|^2.
double r2_score(const Dataset& d, const Vector& beta);

}  // namespace pls::model

#endif  // PLS_MODEL_HPP
