#include "pls/krylov.hpp"

#include "pls/estimators.hpp"
#include "pls/nipals.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace pls;
using namespace pls::krylov;

TEST_CASE("krylov_basis on diagonal A spans the expected coordinates") {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  a(2, 2) = 3.0;
  Vector b(3);
  b << 1.0, 1.0, 1.0;
  const KrylovBasis basis = krylov_basis(a, b, 3);
  CHECK(basis.ortho.cols() == 3);
  CHECK((basis.ortho.transpose() * basis.ortho - Matrix::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() <= 1e-10);
  // raw vectors are b, Ab, A^2 b
  CHECK((basis.raw_vectors.col(0) - b).norm() <= 1e-14);
  CHECK((basis.raw_vectors.col(1) - a * b).norm() <= 1e-14);
  CHECK((basis.raw_vectors.col(2) - a * a * b).norm() <= 1e-14);
}

TEST_CASE("krylov_basis saturates when b has few eigen-components") {
  // b lies in a 2-dimensional invariant subspace: effective dim caps at 2
  Matrix a = Matrix::Zero(4, 4);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  a(2, 2) = 3.0;
  a(3, 3) = 4.0;
  Vector b(4);
  b << 1.0, 1.0, 0.0, 0.0;
  const KrylovBasis basis = krylov_basis(a, b, 4);
  CHECK(basis.ortho.cols() == 2);
}

TEST_CASE("restricted_ls equals full solve at saturation") {
  rng::SplitMix64 gen(43);
  const Matrix m = testing::random_matrix(5, 5, gen);
  const Matrix a = m * m.transpose() + 0.1 * Matrix::Identity(5, 5);
  Vector b(5);
  for (int i = 0; i < 5; ++i) {
    b(i) = gen.normal();
  }
  const Vector full = numerics::solve_spd(a, b);
  CHECK(testing::rel_diff(restricted_ls(a, b, 5), full) <= 1e-8);
}

TEST_CASE("restricted_ls with l = 1 is the scaled steepest-descent step") {
  rng::SplitMix64 gen(47);
  const Matrix m = testing::random_matrix(4, 4, gen);
  const Matrix a = m * m.transpose() + 0.1 * Matrix::Identity(4, 4);
  Vector b(4);
  for (int i = 0; i < 4; ++i) {
    b(i) = gen.normal();
  }
  const Vector expected = (b.squaredNorm() / b.dot(a * b)) * b;
  CHECK(testing::rel_diff(restricted_ls(a, b, 1), expected) <= 1e-10);
}

TEST_CASE("cg_path matches restricted_ls step by step") {
  rng::SplitMix64 gen(53);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix m = testing::random_matrix(6, 6, gen);
    const Matrix a = m * m.transpose() + 0.1 * Matrix::Identity(6, 6);
    Vector b(6);
    for (int i = 0; i < 6; ++i) {
      b(i) = gen.normal();
    }
    const auto path = cg_path(a, b, 6);
    REQUIRE(static_cast<int>(path.size()) == 6);
    for (int l = 1; l <= 6; ++l) {
      CHECK(testing::rel_diff(path[l - 1], restricted_ls(a, b, l)) <= 1e-6);
    }
  }
}

TEST_CASE("three solvers agree on the running example") {
  Matrix x(2, 2);
  x << 1.0, 0.0, 0.0, 2.0;
  Vector y(2);
  y << 1.0, 2.0;
  const model::Dataset d{x, y, false, std::nullopt};

  Vector beta1(2);
  beta1 << 17.0 / 65.0, 68.0 / 65.0;
  CHECK((pls_via_restricted_ls(d, 1) - beta1).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((pls_via_restricted_ls(d, 2) - Vector::Ones(2)).cwiseAbs().maxCoeff() <= 1e-10);

  const model::CoefficientPath cg = pls_via_cg(d, 2);
  CHECK((cg.at(1) - beta1).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((cg.at(2) - Vector::Ones(2)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("three solvers agree on random problems") {
  rng::SplitMix64 gen(59);
  for (int trial = 0; trial < 5; ++trial) {
    const model::Dataset d = testing::random_problem(80, 9, gen);
    const int l_max = 6;
    const nipals::PlsFit fit = nipals::nipals_fit(d, l_max);
    const model::CoefficientPath cg = pls_via_cg(d, l_max);
    const int l_common = std::min({fit.l_done, cg.l_max(), l_max});
    REQUIRE(l_common >= 1);
    for (int l = 1; l <= l_common; ++l) {
      const Vector via_ls = pls_via_restricted_ls(d, l);
      CHECK(testing::rel_diff(fit.coefficient_path.at(l), via_ls) <= 1e-6);
      CHECK(testing::rel_diff(cg.at(l), via_ls) <= 1e-6);
    }
  }
}

TEST_CASE("cg_path truncates on an exactly solvable low-rank problem") {
  // A has rank 2 and b lies in its column space: CG converges in <= 2 steps
  Matrix a = Matrix::Zero(4, 4);
  a(0, 0) = 2.0;
  a(1, 1) = 3.0;
  Vector b(4);
  b << 2.0, 3.0, 0.0, 0.0;
  const auto path = cg_path(a, b, 4);
  REQUIRE(!path.empty());
  CHECK(static_cast<int>(path.size()) <= 2);
  Vector expected(4);
  expected << 1.0, 1.0, 0.0, 0.0;
  CHECK((path.back() - expected).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("cg_path throws on immediate breakdown") {
  const Matrix a = Matrix::Zero(3, 3);
  Vector b(3);
  b << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(cg_path(a, b, 2), Breakdown);
}
