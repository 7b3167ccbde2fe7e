#include <doctest.h>

#include <cmath>

#include "akcotton/errors.hpp"
#include "akcotton/frame_algebra.hpp"
#include "test_support.hpp"

using namespace akc;

TEST_CASE("kenmotsu parameters give the expected brackets") {
  const MetricLieAlgebra3 a = from_kenmotsu_params(2.0, 0.0, 0.0);
  const FrameVector xi = FrameVector::basis(0), e = FrameVector::basis(1), pe = FrameVector::basis(2);
  // [e, xi] = e - lambda phi e, [phi e, xi] = -lambda e + phi e, [e, phi e] = b e - c phi e
  CHECK(max_abs(bracket(a, e, xi).components - Vec3{0, 1, -2}) == 0.0);
  CHECK(max_abs(bracket(a, pe, xi).components - Vec3{0, -2, 1}) == 0.0);
  CHECK(max_abs(bracket(a, e, pe).components) == 0.0);
  CHECK(validate(a).valid());

  const MetricLieAlgebra3 k = from_kenmotsu_params(1.0, 3.0, 3.0);
  CHECK(max_abs(bracket(k, e, pe).components - Vec3{0, 3, -3}) == 0.0);
  CHECK(validate(k).valid());
}

TEST_CASE("kenmotsu parameters violating Jacobi are rejected") {
  CHECK_THROWS_AS(from_kenmotsu_params(2.0, 1.0, 0.0), JacobiViolation);
  CHECK_THROWS_AS(from_kenmotsu_params(1.0, 1.0, 2.0), JacobiViolation);
  CHECK_THROWS_AS(from_kenmotsu_params(0.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(from_kenmotsu_params(-1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("validate flags the offending triple") {
  MetricLieAlgebra3 a;
  a.set_bracket(0, 1, {0, 0, 1});
  a.set_bracket(1, 2, {0, 1, 0});  // [[e1,e2],e3] + ... != 0
  const ValidityReport r = validate(a);
  REQUIRE_FALSE(r.valid());
  CHECK(r.violations.front().kind == Violation::Kind::Jacobi);
  CHECK(r.violations.front().magnitude > 0.1);
}

TEST_CASE("validate rejects bad metrics") {
  const Tensor3 c = from_nonunimodular(1.0, 0.0).structure();
  const ValidityReport asym = validate({c, Mat3{{{1, 0.5, 0}, {0, 1, 0}, {0, 0, 1}}}});
  REQUIRE_FALSE(asym.valid());
  CHECK(asym.violations.front().kind == Violation::Kind::MetricAsymmetry);

  const ValidityReport indef = validate({c, Mat3{{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}}});
  REQUIRE_FALSE(indef.valid());
  CHECK(indef.violations.front().kind == Violation::Kind::MetricNotPositive);

  Tensor3 bad = c;
  bad(0, 1, 2) = std::nan("");
  const ValidityReport nonfinite = validate({bad, identity3()});
  REQUIRE_FALSE(nonfinite.valid());
  CHECK(nonfinite.violations.front().kind == Violation::Kind::NonFinite);
}

TEST_CASE("validate detects broken antisymmetry") {
  Tensor3 c{};
  c(0, 1, 2) = 1.0;  // c(1,0,2) left at zero
  const ValidityReport r = validate({c, identity3()});
  REQUIRE_FALSE(r.valid());
  CHECK(r.violations.front().kind == Violation::Kind::Antisymmetry);
}

TEST_CASE("nonunimodular family") {
  const MetricLieAlgebra3 a = from_nonunimodular(2.0, 0.5);
  CHECK(validate(a).valid());
  // tr ad_{e1} = alpha + (2 - alpha) = 2
  CHECK(trace(ad_matrix(a, FrameVector::basis(0))) == doctest::Approx(2.0));
  CHECK(trace(ad_matrix(a, FrameVector::basis(1))) == doctest::Approx(0.0));
}

TEST_CASE("property: random generated algebras satisfy Jacobi and validate") {
  testing::Rng rng(2024);
  for (int n = 0; n < 300; ++n) {
    const MetricLieAlgebra3 a = testing::random_algebra(rng);
    CHECK(max_abs(jacobi_residual(a.structure())) < 1e-12 * (1 + a.max_structure_constant()) *
                                                        (1 + a.max_structure_constant()));
    CHECK(validate(a).valid());
  }
}

TEST_CASE("property: bracket is bilinear and antisymmetric") {
  testing::Rng rng(7);
  for (int n = 0; n < 100; ++n) {
    const MetricLieAlgebra3 a = testing::random_algebra(rng);
    FrameVector x, y, z;
    for (std::size_t k = 0; k < 3; ++k) {
      x[k] = rng.uniform(-1, 1);
      y[k] = rng.uniform(-1, 1);
      z[k] = rng.uniform(-1, 1);
    }
    const double s = rng.uniform(-2, 2);
    CHECK(max_abs((bracket(a, x, y) + bracket(a, y, x)).components) < 1e-13);
    CHECK(max_abs((bracket(a, s * x + z, y) - s * bracket(a, x, y) - bracket(a, z, y)).components) <
          1e-12);
    CHECK(max_abs(ad_matrix(a, x) * y.components - bracket(a, x, y).components) < 1e-13);
  }
}
