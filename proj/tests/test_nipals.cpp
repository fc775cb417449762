#include "pls/nipals.hpp"

#include "pls/estimators.hpp"
#include "pls/krylov.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace pls;
using namespace pls::nipals;

namespace {

model::Dataset running_example() {
  Matrix x(2, 2);
  x << 1.0, 0.0, 0.0, 2.0;
  Vector y(2);
  y << 1.0, 2.0;
  return model::Dataset{x, y, false, std::nullopt};
}

void check_structural_identities(const PlsFit& fit, const model::Dataset& d) {
  const int l = fit.l_done;
  // score orthogonality: T^T T diagonal matching d_norms^2
  const Matrix gram = fit.t_mat.transpose() * fit.t_mat;
  for (int i = 0; i < l; ++i) {
    CHECK(gram(i, i) == doctest::Approx(fit.d_norms(i) * fit.d_norms(i)));
    for (int j = 0; j < l; ++j) {
      if (i != j) {
        CHECK(std::abs(gram(i, j)) <= 1e-8 * fit.d_norms(i) * fit.d_norms(j));
      }
    }
  }
  // X_L W_L = 0
  CHECK((fit.x_deflated * fit.w_mat).cwiseAbs().maxCoeff() <=
        1e-8 * d.x.cwiseAbs().maxCoeff());
  // P_L = X^T T_L D^{-2}
  const Matrix p_expected =
      d.x.transpose() * fit.t_mat * fit.d_norms.cwiseAbs2().cwiseInverse().asDiagonal();
  CHECK((fit.p_mat - p_expected).norm() <= 1e-8 * std::max(1.0, p_expected.norm()));
  // T_L = X R_L
  CHECK((d.x * fit.r_mat - fit.t_mat).norm() <= 1e-8 * fit.t_mat.norm());
}

}  // namespace

TEST_CASE("nipals on orthonormal columns with y = first column") {
  const Matrix x = Matrix::Identity(3, 3);
  Vector y(3);
  y << 1.0, 0.0, 0.0;
  const model::Dataset d{x, y, false, std::nullopt};
  const PlsFit fit = nipals_fit(d, 1);
  CHECK(std::abs(fit.w_mat(0, 0)) == doctest::Approx(1.0));
  CHECK((fit.coefficient_path.at(1) - y).norm() <= 1e-12);
  CHECK((fit.r_mat.col(0) - y).norm() <= 1e-12);
}

TEST_CASE("nipals running example coefficient path") {
  const model::Dataset d = running_example();
  const PlsFit fit = nipals_fit(d, 2);
  Vector beta1(2);
  beta1 << 17.0 / 65.0, 68.0 / 65.0;
  CHECK((fit.coefficient_path.at(1) - beta1).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((fit.coefficient_path.at(2) - Vector::Ones(2)).cwiseAbs().maxCoeff() <= 1e-10);
  check_structural_identities(fit, d);
}

TEST_CASE("nipals extracts exactly l_max components") {
  rng::SplitMix64 gen(17);
  const model::Dataset d = testing::random_problem(50, 8, gen);
  for (int l : {1, 3, 8}) {
    const PlsFit fit = nipals_fit(d, l);
    CHECK(fit.l_done == l);
    CHECK(!fit.truncated);
    CHECK(static_cast<int>(fit.coefficient_path.betas.size()) == l);
  }
}

TEST_CASE("nipals structural identities on random problems") {
  rng::SplitMix64 gen(23);
  for (int trial = 0; trial < 5; ++trial) {
    const model::Dataset d = testing::random_problem(60, 10, gen);
    const PlsFit fit = nipals_fit(d, 6);
    check_structural_identities(fit, d);
  }
}

TEST_CASE("nipals Frobenius monotonicity of deflation") {
  rng::SplitMix64 gen(29);
  const model::Dataset d = testing::random_problem(40, 7, gen);
  double previous = d.x.norm();
  for (int l = 1; l <= 7; ++l) {
    const PlsFit fit = nipals_fit(d, l);
    const double current = fit.x_deflated.norm();
    CHECK(current <= previous + 1e-12);
    previous = current;
  }
}

TEST_CASE("nipals weights span the Krylov subspace") {
  rng::SplitMix64 gen(31);
  const model::Dataset d = testing::random_problem(60, 10, gen);
  const auto [sxx, sxy] = model::covariance_pair(d);
  const PlsFit fit = nipals_fit(d, 5);
  const krylov::KrylovBasis basis = krylov::krylov_basis(sxx, sxy, 5);
  for (int l = 0; l < 5; ++l) {
    const Vector w = fit.w_mat.col(l);
    const Vector residual = w - basis.ortho * (basis.ortho.transpose() * w);
    CHECK(residual.norm() <= 1e-8);
  }
}

TEST_CASE("nipals truncates on degenerate direction") {
  // rank-1 X: the first component exhausts the signal
  Matrix x(4, 3);
  Vector u(4);
  u << 1.0, -1.0, 2.0, 0.5;
  Vector v(3);
  v << 1.0, 2.0, 3.0;
  x = u * v.transpose();
  const Vector y = x * Vector::Ones(3);
  const PlsFit fit = nipals_fit(model::Dataset{x, y, false, std::nullopt}, 3);
  CHECK(fit.l_done == 1);
  CHECK(fit.truncated);
}

TEST_CASE("rotation for L = 1 is w / (p^T w)") {
  const model::Dataset d = running_example();
  const PlsFit fit = nipals_fit(d, 1);
  const Vector w = fit.w_mat.col(0);
  const Vector p = fit.p_mat.col(0);
  const Matrix r = rotation(fit.w_mat, fit.p_mat);
  CHECK((r.col(0) - w / p.dot(w)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("deflation reconstruction residual is tiny") {
  rng::SplitMix64 gen(37);
  const model::Dataset d = testing::random_problem(50, 8, gen);
  for (int l : {1, 4, 8}) {
    const PlsFit fit = nipals_fit(d, l);
    CHECK(deflation_reconstruction_check(fit, d) <= 1e-8 * d.x.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("full extraction deflates X to numerical zero") {
  rng::SplitMix64 gen(41);
  const model::Dataset d = testing::random_problem(30, 6, gen);
  const PlsFit fit = nipals_fit(d, 6);
  CHECK(fit.x_deflated.norm() <= 1e-8 * d.x.norm());
}

TEST_CASE("single-component deflation matches the explicit projector") {
  const Matrix x = Matrix::Identity(3, 3);
  Vector y(3);
  y << 1.0, 0.0, 0.0;
  const model::Dataset d{x, y, false, std::nullopt};
  const PlsFit fit = nipals_fit(d, 1);
  const Vector t = fit.t_mat.col(0);
  const Matrix projector = Matrix::Identity(3, 3) - t * t.transpose() / t.squaredNorm();
  CHECK((fit.x_deflated - projector * x).cwiseAbs().maxCoeff() <= 1e-12);
}
