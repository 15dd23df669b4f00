#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ipad/prox.hpp"
#include "ipad/rng.hpp"
#include "test_util.hpp"

#include <cmath>

using ipad::Matrix;

TEST_CASE("hard threshold keeps large entries and kills small ones") {
  CHECK(ipad::prox_hard_threshold(0.9, 1.0, 0.5, std::nullopt) == 0.0);
  CHECK(ipad::prox_hard_threshold(1.5, 1.0, 0.5, std::nullopt) == 1.5);
  CHECK(ipad::prox_hard_threshold(-1.5, 1.0, 0.5, std::nullopt) == -1.5);
}

TEST_CASE("exact threshold ties resolve to zero") {
  // tau=2, lambda=1 puts the threshold exactly at 1
  CHECK(ipad::prox_hard_threshold(1.0, 2.0, 1.0, std::nullopt) == 0.0);
  CHECK(ipad::prox_hard_threshold(-1.0, 2.0, 1.0, std::nullopt) == 0.0);
  // boxed tie: tau=2, lambda=4, box=1 at v=2.5 has equal costs
  CHECK(ipad::prox_hard_threshold(2.5, 2.0, 4.0, 1.0) == 0.0);
}

TEST_CASE("box clamps before the keep-or-kill comparison") {
  CHECK(ipad::prox_hard_threshold(2.0, 1.0, 0.5, 1.0) == 1.0);
  CHECK(ipad::prox_hard_threshold(-2.0, 1.0, 0.5, 1.0) == -1.0);
}

TEST_CASE("matrix form matches candidate enumeration on random scalars") {
  ipad::Rng rng(7);
  const long n = 2000;
  for (int rep = 0; rep < 6; ++rep) {
    const double tau = 0.25 + 2.0 * rng.next_double();
    const double lambda = rng.next_double();
    std::optional<double> box;
    if (rep % 2 == 1) box = 0.2 + rng.next_double();
    Matrix v(n, 1);
    for (long i = 0; i < n; ++i) v(i, 0) = 3.0 * rng.next_normal();
    const Matrix out = ipad::prox_hard_threshold(v, tau, lambda, box);
    for (long i = 0; i < n; ++i) {
      const double expected = testutil::prox_hard_oracle(v(i, 0), tau, lambda, box);
      CHECK(out(i, 0) == expected);
      CHECK(ipad::prox_hard_threshold(v(i, 0), tau, lambda, box) == expected);
    }
  }
}

TEST_CASE("invalid weight is rejected") {
  CHECK_THROWS_AS(ipad::prox_hard_threshold(1.0, 0.0, 0.5, std::nullopt),
                  ipad::config_error);
}

TEST_CASE("project_unit_columns normalizes and fixes zero columns") {
  Matrix d(2, 2);
  d << 3.0, 0.0, 4.0, 0.0;
  const Matrix p = ipad::project_unit_columns(d);
  CHECK(p(0, 0) == doctest::Approx(0.6));
  CHECK(p(1, 0) == doctest::Approx(0.8));
  CHECK(p(0, 1) == 1.0);  // zero column maps to e_1
  CHECK(p(1, 1) == 0.0);
}

TEST_CASE("projection is idempotent bitwise and unit to machine precision") {
  ipad::Rng rng(11);
  const Matrix d = testutil::random_matrix(6, 9, rng, 3.0);
  const Matrix once = ipad::project_unit_columns(d);
  const Matrix twice = ipad::project_unit_columns(once);
  CHECK(once == twice);
  const double eps = std::numeric_limits<double>::epsilon();
  for (long j = 0; j < once.cols(); ++j) {
    CHECK(std::abs(once.col(j).norm() - 1.0) <= 4.0 * eps);
  }
}
