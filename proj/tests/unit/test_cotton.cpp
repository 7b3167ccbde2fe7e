#include <doctest.h>

#include <cmath>

#include "akcotton/cotton.hpp"
#include "akcotton/errors.hpp"
#include "test_support.hpp"

using namespace akc;

namespace {

CottonPack cotton_of(const MetricLieAlgebra3& a) {
  const ConnectionTable conn = levi_civita(a);
  return cotton(a, conn, curvature(a, conn));
}

double cotton2_max(const MetricLieAlgebra3& a) { return max_abs(cotton_of(a).cotton2.matrix()); }

}  // namespace

TEST_CASE("cotton-york hand values for b = c = 0") {
  // C22 = -C33 = 2 lambda^3 - 2 lambda, everything else zero
  for (double l : {0.5, 1.0, 2.0, 3.0}) {
    CAPTURE(l);
    const Mat3 c = cotton_of(from_kenmotsu_params(l, 0, 0)).cotton2.matrix();
    const double c22 = 2 * l * l * l - 2 * l;
    const Mat3 want{{{0, 0, 0}, {0, c22, 0}, {0, 0, -c22}}};
    CHECK(max_abs(c - want) <= 1e-8);
  }
  CHECK(cotton_of(from_kenmotsu_params(2, 0, 0)).cotton2(1, 1) == doctest::Approx(12.0));
  CHECK(std::abs(cotton_of(from_kenmotsu_params(1, 0, 0)).cotton2(1, 1)) <= 1e-12);
}

TEST_CASE("oracle equals the closed form on detected structures") {
  for (const auto& a : {from_kenmotsu_params(0.5, 0, 0), from_kenmotsu_params(1, 3, 3),
                        from_kenmotsu_params(1, -0.7, -0.7), from_nonunimodular(2, 0.5),
                        from_nonunimodular(0, 0), from_nonunimodular(-1, 1.5)}) {
    const ConnectionTable conn = levi_civita(a);
    const CurvaturePack pack = curvature(a, conn);
    const AKStructure ak = detect_structure(a, conn, pack);
    const Mat3 adapted = in_adapted_frame(ak, cotton(a, conn, pack).cotton2).matrix();
    CHECK(max_abs(adapted - cotton2_closed_form(ak).matrix()) <= 1e-8);
  }
  // (1,3,3): f = 20 and every component cancels
  CHECK(cotton2_max(from_kenmotsu_params(1, 3, 3)) <= 1e-8);
}

TEST_CASE("conformally flat fixtures") {
  CHECK(cotton2_max(MetricLieAlgebra3{}) <= 1e-9);
  CHECK(cotton2_max({testing::milnor_unimodular(1, 1, 0), identity3()}) <= 1e-9);  // E(2)
  CHECK(cotton2_max({testing::milnor_unimodular(2, 2, 2), identity3()}) <= 1e-9);  // round S^3
  CHECK(cotton2_max(from_nonunimodular(1, 0)) <= 1e-9);                            // H^3
  // Berger sphere and Nil are not conformally flat
  CHECK(cotton2_max({testing::milnor_unimodular(1, 1, 2), identity3()}) > 1e-3);
  CHECK(cotton2_max({testing::milnor_unimodular(0, 0, 1), identity3()}) > 1e-3);
}

TEST_CASE("property: cotton tensors on random algebras") {
  testing::Rng rng(200);
  for (int n = 0; n < 200; ++n) {
    const MetricLieAlgebra3 a = testing::random_algebra(rng);
    const ConnectionTable conn = levi_civita(a);
    const CurvaturePack pack = curvature(a, conn);
    const Tensor3 c3 = cotton3_oracle(a, conn, pack);
    const SymBilinear c2 = cotton2_from_cotton3(a, c3);
    const double s = 1 + a.max_structure_constant();
    const double scale = s * s * s;
    CHECK(cotton2_asymmetry(a, c3) <= 1e-8 * scale);
    CHECK(std::abs(metric_trace(a, c2)) <= 1e-8 * scale);
    CHECK(max_abs(divergence(a, conn, c2)) <= 1e-8 * scale * s);
    CHECK(cotton3_skew_residual(c3) <= 1e-8 * scale);
    CHECK(cotton3_trace_residual(a, c3) <= 1e-8 * scale);
  }
}

TEST_CASE("property: cotton-york scales as t^(-1/2) under g -> t g") {
  testing::Rng rng(8);
  for (int n = 0; n < 50; ++n) {
    const MetricLieAlgebra3 a = testing::random_algebra(rng);
    const double t = rng.uniform(0.3, 4.0);
    const Mat3 c = cotton_york(a).matrix();
    const Mat3 ct = cotton_york(a.with_metric(t * a.metric())).matrix();
    CHECK(max_abs(ct - (1.0 / std::sqrt(t)) * c) <= 1e-9 * (1 + max_abs(c)));
  }
}

TEST_CASE("property: cotton-york is covariant under change of frame") {
  testing::Rng rng(12);
  for (int n = 0; n < 50; ++n) {
    const MetricLieAlgebra3 a = testing::random_algebra(rng);
    const Mat3 p = testing::random_gl3(rng);
    if (det(p) < 0) continue;  // orientation flips the sign of the dual
    const MetricLieAlgebra3 b{testing::change_basis(a.structure(), p),
                              transpose(p) * a.metric() * p};
    const Mat3 ca = cotton_york(a).matrix();
    const Mat3 cb = cotton_york(b).matrix();
    CHECK(max_abs(cb - transpose(p) * ca * p) <= 1e-8 * (1 + max_abs(ca)));
  }
}

TEST_CASE("cotton2 needs a positive determinant") {
  const MetricLieAlgebra3 a = from_nonunimodular(2, 0.5);
  const MetricLieAlgebra3 bad = a.with_metric(Mat3{{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}});
  CHECK_THROWS_AS(cotton2_from_cotton3(bad, Tensor3{}), SingularMetric);
}
