#ifndef PLS_ESTIMATORS_HPP
#define PLS_ESTIMATORS_HPP

#include "pls/model.hpp"

#include <vector>

namespace pls::estimators {

/// Eigenstructure of Sxx together with the expansion coefficients xi of the
/// OLS estimator in the eigenvector basis.
struct Spectrum {
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // orthonormal columns, paired with eigenvalues
  Vector xi;
};

/// Components skipped by PCR because their eigenvalue was numerically zero.
struct PcrResult {
  model::CoefficientPath path;
  std::vector<int> skipped_components;  // zero-based eigenvalue indices
};

Vector ols_fit(const model::Dataset& d);

/// Principal components regression path: beta^(k) regresses y on the top-k
/// principal component scores, mapped back to the original coordinates.
PcrResult pcr_fit(const model::Dataset& d, int l);

Spectrum spectrum_of(const model::Dataset& d, const Vector& beta_ols);

}  // namespace pls::estimators

#endif  // PLS_ESTIMATORS_HPP
