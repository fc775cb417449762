#ifndef PLS_BOUNDS_HPP
#define PLS_BOUNDS_HPP

#include "pls/model.hpp"

#include <vector>

namespace pls::bounds {

/// Raw moments mu'_l = (1/D) sum_d lambda_d^l of an eigenvalue sample, plus
/// the shape statistics entering the closed-form bounds. Kurtosis is the
/// Pearson (non-excess) form kappa = m4 / sigma^4, the convention under which
/// kappa >= 1 + gamma^2 holds as stated.
struct MomentSet {
  Vector raw_moments;  // mu'_1 .. mu'_{2 l_max}
  int d_count = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  double cv = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;
  double lambda_max = 0.0;
  bool degenerate = false;  // sigma == 0; cv/skewness/kurtosis set to 0
};

struct HankelBound {
  double c_l = 0.0;
  Vector a_star;  // R*(t) = -1 + sum_j a_star[j-1] t^j, original lambda scale
  double condition = 0.0;
  bool clamped = false;
};

struct BoundSeries {
  std::vector<double> c_l_values;
  std::vector<Vector> optimal_coeffs;
  std::vector<double> hankel_condition;
  std::vector<bool> clamped;
  std::vector<bool> carried_forward;  // Hankel solve failed; previous C_L reused
};

/// Spectrum-side view of the PLS-OLS error: eigenvalues, expansion
/// coefficients of the OLS estimator, and the fitted optimal residual
/// polynomials Q*_L (full ascending coefficients, q[0] = -1 exactly).
struct ErrorSpectrum {
  Vector lambdas;
  Vector xis;
  std::vector<Vector> q_star_coeffs;  // index L-1
  std::vector<double> fit_condition;  // condition of the weighted normal system
};

enum class BoundMode { kWeightedSum, kH2TimesNorm, kH1TimesNorm };

double sigma_norm_sq(const Vector& v, const Matrix& sxx);

/// NED_L: |b_pls - b_ols|^2_Sxx / |b_ols|^2_Sxx.
double ned(const Vector& beta_pls, const Vector& beta_ols, const Matrix& sxx);

MomentSet moments(const Vector& lambdas, int l_max);

/// C_L = D (1 - c_L^T H_L^{-1} c_L). The Hankel system is solved on
/// eigenvalues normalized by lambda_max (C_L is scale invariant) and the
/// optimal coefficients are rescaled back.
HankelBound hankel_bound(const MomentSet& ms, int l);

BoundSeries bound_series(const MomentSet& ms, int l_max);

/// Corollary closed forms, implemented exactly as printed. C1 matches the
/// Hankel route; the printed C2 does not (see closed_form_discrepancy).
struct ClosedFormBounds {
  double c1 = 0.0;
  double c2 = 0.0;
  bool degenerate = false;
};
ClosedFormBounds closed_form_c1_c2(const MomentSet& ms);

/// Builds the error spectrum and fits Q*_L for L = 1..l_max by weighted
/// least squares with weights lambda_d xi_d^2.
ErrorSpectrum error_spectrum(const Vector& lambdas, const Vector& xis, int l_max);

/// sum_d Q*_L(lambda_d)^2 lambda_d xi_d^2; equals |b_pls^(L) - b_ols|^2_Sxx.
double error_via_polynomial(const ErrorSpectrum& es, int l);

/// Evaluates the generic polynomial upper bounds for a supplied Q with
/// Q(0) = -1 (full ascending coefficients).
double generic_poly_bound(const Vector& q_coeffs, const ErrorSpectrum& es, BoundMode mode);

double mahalanobis_check(const Vector& beta, const Vector& beta_ols,
                         const model::Dataset& d, double sigma_sq);

double evaluate_poly(const Vector& coeffs, double t);

}  // namespace pls::bounds

#endif  // PLS_BOUNDS_HPP
