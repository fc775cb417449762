#include "pls/bounds.hpp"

#include "pls/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pls::bounds {

namespace {

double spd_condition(const Matrix& h) {
  const numerics::SymEig eig = numerics::sym_eig(h);
  const double top = std::abs(eig.eigenvalues(0));
  const double bottom = std::abs(eig.eigenvalues(eig.eigenvalues.size() - 1));
  if (bottom == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return top / bottom;
}

}  // namespace

double evaluate_poly(const Vector& coeffs, double t) {
  double acc = 0.0;
  for (Eigen::Index j = coeffs.size() - 1; j >= 0; --j) {
    acc = acc * t + coeffs(j);
  }
  return acc;
}

double sigma_norm_sq(const Vector& v, const Matrix& sxx) {
  return v.dot(sxx * v);
}

double ned(const Vector& beta_pls, const Vector& beta_ols, const Matrix& sxx) {
  const double denom = sigma_norm_sq(beta_ols, sxx);
  if (denom <= 1e-14) {
    throw DegenerateOls("ned: |beta_ols|_Sxx is numerically zero");
  }
  return sigma_norm_sq(beta_pls - beta_ols, sxx) / denom;
}

MomentSet moments(const Vector& lambdas, int l_max) {
  const int d = static_cast<int>(lambdas.size());
  if (d < 1 || l_max < 1) {
    throw Error("moments: need D >= 1 and l_max >= 1");
  }
  MomentSet ms;
  ms.d_count = d;
  ms.raw_moments.resize(2 * l_max);
  Vector powers = Vector::Ones(d);
  for (int l = 0; l < 2 * l_max; ++l) {
    powers = powers.cwiseProduct(lambdas);
    ms.raw_moments(l) = powers.mean();
  }
  ms.mean = lambdas.mean();
  const Vector centered = lambdas.array() - ms.mean;
  const double m2 = centered.array().square().mean();
  ms.std_dev = std::sqrt(m2);
  ms.lambda_max = lambdas.cwiseAbs().maxCoeff();
  if (ms.std_dev == 0.0) {
    ms.degenerate = true;
  } else {
    ms.cv = ms.std_dev / ms.mean;
    ms.skewness = centered.array().cube().mean() / (m2 * ms.std_dev);
    ms.kurtosis = centered.array().square().square().mean() / (m2 * m2);
  }
  return ms;
}

HankelBound hankel_bound(const MomentSet& ms, int l) {
  if (l < 1 || 2 * l > ms.raw_moments.size()) {
    throw Error("hankel_bound: moments up to 2l required");
  }
  const double d = static_cast<double>(ms.d_count);
  if (ms.degenerate || ms.lambda_max == 0.0) {
    HankelBound out;
    out.a_star = Vector::Zero(l);
    if (ms.lambda_max > 0.0) {
      // all eigenvalues equal: R*(t) = t/lambda - 1 already gives C_L = 0
      out.a_star(0) = 1.0 / ms.lambda_max;
      out.condition = 1.0;
    }
    return out;
  }

  // Normalized moments nu_l = mu'_l / lambda_max^l keep the Hankel system
  // well scaled; C_L is invariant and a* rescales back.
  Vector nu(2 * l);
  double scale = 1.0;
  for (int j = 0; j < 2 * l; ++j) {
    scale *= ms.lambda_max;
    nu(j) = ms.raw_moments(j) / scale;
  }
  Matrix h(l, l);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      h(i, j) = nu(i + j + 1);
    }
  }
  const Vector c = nu.head(l);

  HankelBound out;
  out.condition = spd_condition(h);
  Vector a;
  try {
    a = numerics::solve_spd(h, c);
  } catch (const Singular&) {
    throw IllConditioned("hankel_bound: Hankel system unsolvable even via SVD fallback");
  }
  double value = d * (1.0 - c.dot(a));
  if (value < 0.0 || value > d) {
    out.clamped = value < -1e-8 || value > d + 1e-8;
    value = std::clamp(value, 0.0, d);
  }
  out.c_l = value;
  out.a_star.resize(l);
  scale = 1.0;
  for (int j = 0; j < l; ++j) {
    scale *= ms.lambda_max;
    out.a_star(j) = a(j) / scale;
  }
  return out;
}

BoundSeries bound_series(const MomentSet& ms, int l_max) {
  BoundSeries series;
  double previous = static_cast<double>(ms.d_count);
  Vector previous_coeffs;
  for (int l = 1; l <= l_max; ++l) {
    try {
      const HankelBound hb = hankel_bound(ms, l);
      // C_L is non-increasing; a solved value above the previous one is pure
      // conditioning noise and the previous bound still dominates NED_L.
      previous = std::min(previous, hb.c_l);
      previous_coeffs = hb.a_star;
      series.c_l_values.push_back(previous);
      series.optimal_coeffs.push_back(hb.a_star);
      series.hankel_condition.push_back(hb.condition);
      series.clamped.push_back(hb.clamped);
      series.carried_forward.push_back(false);
    } catch (const IllConditioned&) {
      series.c_l_values.push_back(previous);
      series.optimal_coeffs.push_back(previous_coeffs);
      series.hankel_condition.push_back(std::numeric_limits<double>::infinity());
      series.clamped.push_back(false);
      series.carried_forward.push_back(true);
    }
  }
  return series;
}

ClosedFormBounds closed_form_c1_c2(const MomentSet& ms) {
  ClosedFormBounds out;
  if (ms.degenerate) {
    out.degenerate = true;
    return out;
  }
  const double d = static_cast<double>(ms.d_count);
  const double cv = ms.cv;
  const double g = ms.skewness;
  const double k = ms.kurtosis;
  out.c1 = d * cv * cv / (1.0 + cv * cv);
  const double cv2 = cv * cv;
  const double cv3 = cv2 * cv;
  const double cv4 = cv2 * cv2;
  out.c2 = d * cv4 * (k - g * g - 1.0) /
           ((k - g * g) * cv4 + (k - 3.0 - 2.0 * g) * cv3 - 2.0 * g * cv + 1.0);
  return out;
}

ErrorSpectrum error_spectrum(const Vector& lambdas, const Vector& xis, int l_max) {
  if (lambdas.size() != xis.size() || lambdas.size() < 1) {
    throw Error("error_spectrum: dimension mismatch");
  }
  ErrorSpectrum es;
  es.lambdas = lambdas;
  es.xis = xis;
  const Eigen::Index d = lambdas.size();
  const double lam_max = lambdas.cwiseAbs().maxCoeff();
  const Vector s = lambdas / lam_max;
  const Vector w = lambdas.cwiseProduct(xis.cwiseAbs2());

  for (int l = 1; l <= l_max; ++l) {
    // Weighted normal equations for Q(t) = -1 + sum_j a_j t^j on the
    // normalized eigenvalues: G a = r with G_jk = sum_d w_d s_d^{j+k}.
    Matrix g(l, l);
    Vector r(l);
    for (int i = 1; i <= l; ++i) {
      double ri = 0.0;
      for (Eigen::Index dd = 0; dd < d; ++dd) {
        ri += w(dd) * std::pow(s(dd), i);
      }
      r(i - 1) = ri;
      for (int j = i; j <= l; ++j) {
        double gij = 0.0;
        for (Eigen::Index dd = 0; dd < d; ++dd) {
          gij += w(dd) * std::pow(s(dd), i + j);
        }
        g(i - 1, j - 1) = gij;
        g(j - 1, i - 1) = gij;
      }
    }
    Vector a;
    try {
      a = numerics::solve_spd(g, r);
    } catch (const Singular&) {
      throw IllConditioned("error_spectrum: weighted normal system unsolvable");
    }
    Vector coeffs(l + 1);
    coeffs(0) = -1.0;
    double scale = 1.0;
    for (int j = 1; j <= l; ++j) {
      scale *= lam_max;
      coeffs(j) = a(j - 1) / scale;
    }
    es.q_star_coeffs.push_back(coeffs);
    es.fit_condition.push_back(spd_condition(g));
  }
  return es;
}

double error_via_polynomial(const ErrorSpectrum& es, int l) {
  const Vector& coeffs = es.q_star_coeffs.at(static_cast<size_t>(l) - 1);
  double total = 0.0;
  for (Eigen::Index d = 0; d < es.lambdas.size(); ++d) {
    const double q = evaluate_poly(coeffs, es.lambdas(d));
    total += q * q * es.lambdas(d) * es.xis(d) * es.xis(d);
  }
  return total;
}

double generic_poly_bound(const Vector& q_coeffs, const ErrorSpectrum& es, BoundMode mode) {
  if (q_coeffs.size() < 1 || std::abs(q_coeffs(0) + 1.0) > 1e-12) {
    throw ConstraintViolated("generic_poly_bound: Q(0) must equal -1");
  }
  double weighted = 0.0;
  double sum_sq = 0.0;
  double max_sq = 0.0;
  double ols_norm_sq = 0.0;
  for (Eigen::Index d = 0; d < es.lambdas.size(); ++d) {
    const double q = evaluate_poly(q_coeffs, es.lambdas(d));
    const double w = es.lambdas(d) * es.xis(d) * es.xis(d);
    weighted += q * q * w;
    sum_sq += q * q;
    max_sq = std::max(max_sq, q * q);
    ols_norm_sq += w;
  }
  switch (mode) {
    case BoundMode::kWeightedSum:
      return weighted;
    case BoundMode::kH2TimesNorm:
      return sum_sq * ols_norm_sq;
    case BoundMode::kH1TimesNorm:
      return max_sq * ols_norm_sq;
  }
  throw Error("generic_poly_bound: unknown mode");
}

double mahalanobis_check(const Vector& beta, const Vector& beta_ols,
                         const model::Dataset& d, double sigma_sq) {
  if (sigma_sq <= 0.0) {
    throw Error("mahalanobis_check: sigma_sq must be positive");
  }
  const auto [sxx, sxy] = model::covariance_pair(d);
  return sigma_norm_sq(beta - beta_ols, sxx) / sigma_sq;
}

}  // namespace pls::bounds
