#include "pls/estimators.hpp"

#include "pls/numerics.hpp"

namespace pls::estimators {

Vector ols_fit(const model::Dataset& d) {
  const auto [sxx, sxy] = model::covariance_pair(d);
  const numerics::SymEig eig = numerics::sym_eig(sxx);
  const double lam_max = eig.eigenvalues(0);
  if (eig.eigenvalues(eig.eigenvalues.size() - 1) <= 1e-10 * lam_max) {
    throw Singular("ols_fit: Sxx numerically singular");
  }
  return numerics::solve_spd(sxx, sxy);
}

PcrResult pcr_fit(const model::Dataset& d, int l) {
  if (l < 1 || l > d.d()) {
    throw Error("pcr_fit: l must be in [1, D]");
  }
  const auto [sxx, sxy] = model::covariance_pair(d);
  const numerics::SymEig eig = numerics::sym_eig(sxx);
  const double lam1 = eig.eigenvalues(0);

  PcrResult out;
  Vector beta = Vector::Zero(d.d());
  for (int k = 0; k < l; ++k) {
    const double lam = eig.eigenvalues(k);
    if (lam <= 1e-12 * lam1) {
      out.skipped_components.push_back(k);
    } else {
      const Vector u = eig.eigenvectors.col(k);
      beta += u * (u.dot(sxy) / lam);
    }
    out.path.betas.push_back(beta);
  }
  return out;
}

Spectrum spectrum_of(const model::Dataset& d, const Vector& beta_ols) {
  const auto [sxx, sxy] = model::covariance_pair(d);
  const numerics::SymEig eig = numerics::sym_eig(sxx);
  Spectrum s;
  s.eigenvalues = eig.eigenvalues;
  s.eigenvectors = eig.eigenvectors;
  s.xi = eig.eigenvectors.transpose() * beta_ols;
  return s;
}

}  // namespace pls::estimators
