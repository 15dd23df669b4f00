#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ipad/spectral.hpp"
#include "test_util.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

using ipad::Matrix;

TEST_CASE("identity and diagonal cases") {
  CHECK(ipad::spectral_norm(Matrix::Identity(5, 5)) == doctest::Approx(1.0));
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1.0, 2.0, 3.0;
  CHECK(ipad::spectral_norm(d) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(ipad::spectral_norm(Matrix::Zero(4, 2)) == 0.0);
}

TEST_CASE("random symmetric matrix matches a dense eigensolver") {
  ipad::Rng rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    Matrix a = testutil::random_matrix(10, 10, rng);
    a = Matrix(0.5 * (a + a.transpose()));
    const Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    const double expected = es.eigenvalues().cwiseAbs().maxCoeff();
    const double got = ipad::spectral_norm(a, 1e-10);
    CHECK(std::abs(got - expected) <= 1e-6 * expected);
  }
}

TEST_CASE("rectangular matrices match a dense SVD") {
  ipad::Rng rng(4);
  for (int rep = 0; rep < 4; ++rep) {
    const Matrix a = testutil::random_matrix(12, 5, rng);
    const double expected =
        Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
    CHECK(std::abs(ipad::spectral_norm(a, 1e-10) - expected) <=
          1e-6 * expected);
  }
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(ipad::spectral_norm(Matrix(0, 0)), ipad::config_error);
}
