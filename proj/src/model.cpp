#include "pls/model.hpp"

#include <cmath>

namespace pls::model {

CovariancePair covariance_pair(const Dataset& d) {
  if (d.centered) {
    const double col_mean = d.x.colwise().mean().cwiseAbs().maxCoeff();
    const double y_mean = std::abs(d.y.mean());
    if (col_mean > 1e-10 || y_mean > 1e-10) {
      throw NotCentered("covariance_pair: dataset flagged centered but means exceed 1e-10");
    }
  }
  CovariancePair out;
  Matrix g = d.x.transpose() * d.x;
  out.sxx = 0.5 * (g + g.transpose());
  out.sxy = d.x.transpose() * d.y;
  return out;
}

double r2_score(const Dataset& d, const Vector& beta) {
  const double tss = d.y.squaredNorm();
  if (tss == 0.0) {
    throw DegenerateResponse("r2_score: response has zero norm");
  }
  const double rss = (d.y - d.x * beta).squaredNorm();
  return 1.0 - rss / tss;
}

}  // namespace pls::model
