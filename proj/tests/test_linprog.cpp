#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pwa/linprog.hpp"

using namespace pwa;

TEST_CASE("feasible one-variable problem") {
  Matrix A(1, 1);
  A << 1;
  Vector b(1), c(1);
  b << 1;
  c << 1;
  const LpResult r = lp_min_geq(c, A, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.x(0) == doctest::Approx(1.0));
  CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("infeasible pair of constraints") {
  // x >= 1 together with -x >= 0 has no nonnegative solution.
  Matrix A(2, 1);
  A << 1, -1;
  Vector b(2);
  b << 1, 0;
  const LpResult r = lp_min_geq(Vector::Zero(1), A, b);
  CHECK(r.status == LpStatus::Infeasible);
}

TEST_CASE("unbounded objective") {
  Matrix A(1, 1);
  A << 1;
  Vector b(1), c(1);
  b << 0;
  c << -1;
  CHECK(lp_min_geq(c, A, b).status == LpStatus::Unbounded);
}

TEST_CASE("no constraints") {
  const Matrix A(0, 2);
  const Vector b(0);
  Vector c(2);
  c << 1, 0;
  const LpResult r = lp_min_geq(c, A, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(0.0));
  c << -1, 0;
  CHECK(lp_min_geq(c, A, b).status == LpStatus::Unbounded);
}

TEST_CASE("two-variable vertex optimum") {
  // min x + y  s.t.  x + 2y >= 2, 3x + y >= 3: optimum at (4/5, 3/5).
  Matrix A(2, 2);
  A << 1, 2, 3, 1;
  Vector b(2), c(2);
  b << 2, 3;
  c << 1, 1;
  const LpResult r = lp_min_geq(c, A, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(1.4));
  CHECK(r.x(0) == doctest::Approx(0.8));
  CHECK(r.x(1) == doctest::Approx(0.6));
}

TEST_CASE("redundant rows do not break phase two") {
  Matrix A(3, 2);
  A << 1, 1, 1, 1, 2, 2;  // the third row is a multiple of the first
  Vector b(3), c(2);
  b << 1, 1, 2;
  c << 1, 2;
  const LpResult r = lp_min_geq(c, A, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(1.0));  // x = (1, 0)
  CHECK((A * r.x - b).minCoeff() >= -1e-7);
}

TEST_CASE("negative right-hand sides are normalized") {
  // x1 - x2 >= -2 with min x1 + x2 is solved at the origin.
  Matrix A(1, 2);
  A << 1, -1;
  Vector b(1), c(2);
  b << -2;
  c << 1, 1;
  const LpResult r = lp_min_geq(c, A, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(0.0));
}
