#include <doctest.h>

#include <cmath>

#include "akcotton/connection_curvature.hpp"
#include "akcotton/errors.hpp"
#include "test_support.hpp"

using namespace akc;

namespace {

struct KFixture {
  double lambda, b, c;
};

const KFixture kFixtures[] = {{0.5, 0, 0}, {1, 0, 0}, {2, 0, 0}, {1, 3, 3}};

// nabla_{e_i} e_j in the frame (xi, e, phi e), typed from the table for
// 3-h manifolds with constant lambda, b, c.
std::array<std::array<Vec3, 3>, 3> expected_connection(double l, double b, double c) {
  return {{{Vec3{0, 0, 0}, Vec3{0, 0, 0}, Vec3{0, 0, 0}},
           {Vec3{0, 1, -l}, Vec3{-1, 0, -b}, Vec3{l, b, 0}},
           {Vec3{0, -l, 1}, Vec3{l, 0, c}, Vec3{-1, -c, 0}}}};
}

}  // namespace

TEST_CASE("connection table of the kenmotsu-parameter fixtures") {
  for (const auto& f : kFixtures) {
    CAPTURE(f.lambda);
    CAPTURE(f.b);
    const MetricLieAlgebra3 a = from_kenmotsu_params(f.lambda, f.b, f.c);
    const ConnectionTable conn = levi_civita(a);
    const auto want = expected_connection(f.lambda, f.b, f.c);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(max_abs(conn.covariant(i, j) - want[i][j]) <= 1e-12);
  }
}

TEST_CASE("ricci and scalar curvature match the closed forms") {
  for (const auto& f : kFixtures) {
    CAPTURE(f.lambda);
    const MetricLieAlgebra3 a = from_kenmotsu_params(f.lambda, f.b, f.c);
    const CurvaturePack p = curvature(a, levi_civita(a));
    const double l = f.lambda, fv = f.b * f.b + f.c * f.c + 2;
    const Mat3 want{{{-2 * (l * l + 1), -2 * l * f.b, -2 * l * f.c},
                     {-2 * l * f.b, -fv, 2 * l},
                     {-2 * l * f.c, 2 * l, -fv}}};
    CHECK(max_abs(p.ricci.matrix() - want) <= 1e-10);
    CHECK(std::abs(p.scalar - (-2 * (l * l + 1) - 2 * fv)) <= 1e-10);
  }
  // hand values
  const MetricLieAlgebra3 a = from_kenmotsu_params(2, 0, 0);
  const CurvaturePack p = curvature(a, levi_civita(a));
  CHECK(p.ricci(0, 0) == doctest::Approx(-10));
  CHECK(p.scalar == doctest::Approx(-14));
}

TEST_CASE("property: connection is torsion free and metric") {
  testing::Rng rng(5);
  for (int n = 0; n < 200; ++n) {
    const MetricLieAlgebra3 a = testing::random_algebra(rng);
    const ConnectionTable conn = levi_civita(a);
    const Mat3& g = a.metric();
    double torsion = 0.0, metric = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < 3; ++k)
          torsion = std::max(torsion, std::abs(conn(i, j, k) - conn(j, i, k) - a.c(i, j, k)));
        for (std::size_t k = 0; k < 3; ++k) {
          const double s = dot(conn.covariant(i, j), g[k]) + dot(conn.covariant(i, k), g[j]);
          metric = std::max(metric, std::abs(s));
        }
      }
    CHECK(torsion < 1e-11);
    CHECK(metric < 1e-11);
  }
}

TEST_CASE("property: ricci agrees with the orthonormal-frame oracle") {
  testing::Rng rng(99);
  for (int n = 0; n < 200; ++n) {
    const MetricLieAlgebra3 a = testing::random_algebra(rng);
    const CurvaturePack p = curvature(a, levi_civita(a));
    const Mat3 oracle = testing::ricci_oracle(a);
    const double scale = 1 + max_abs(oracle);
    CHECK(max_abs(p.ricci.matrix() - oracle) < 1e-9 * scale);
    CHECK(std::abs(p.scalar - trace(inverse(a.metric()) * oracle)) < 1e-9 * scale);
  }
}

TEST_CASE("property: riemann symmetries and first Bianchi identity") {
  testing::Rng rng(17);
  for (int n = 0; n < 100; ++n) {
    const MetricLieAlgebra3 a = testing::random_algebra(rng);
    const CurvaturePack p = curvature(a, levi_civita(a));
    const auto& r = p.riemann;
    const Mat3& g = a.metric();
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
          for (std::size_t m = 0; m < 3; ++m) {
            worst = std::max(worst, std::abs(r[i][j][k][m] + r[j][i][k][m]));
            worst = std::max(worst, std::abs(r[i][j][k][m] + r[j][k][i][m] + r[k][i][j][m]));
            // g(R(e_i,e_j)e_k, e_m) = -g(R(e_i,e_j)e_m, e_k)
            double lhs = 0.0, rhs = 0.0;
            for (std::size_t s = 0; s < 3; ++s) {
              lhs += r[i][j][k][s] * g[s][m];
              rhs += r[i][j][m][s] * g[s][k];
            }
            worst = std::max(worst, std::abs(lhs + rhs));
          }
        }
    CHECK(worst < 1e-9 * (1 + a.max_structure_constant() * a.max_structure_constant()));
  }
}

TEST_CASE("property: rescaling the metric keeps ricci and scales r") {
  testing::Rng rng(3);
  for (int n = 0; n < 50; ++n) {
    const MetricLieAlgebra3 a = testing::random_algebra(rng);
    const double t = rng.uniform(0.2, 5.0);
    const MetricLieAlgebra3 scaled = a.with_metric(t * a.metric());
    const CurvaturePack p = curvature(a, levi_civita(a));
    const CurvaturePack q = curvature(scaled, levi_civita(scaled));
    CHECK(max_abs(p.ricci.matrix() - q.ricci.matrix()) < 1e-9 * (1 + max_abs(p.ricci.matrix())));
    CHECK(q.scalar == doctest::Approx(p.scalar / t).epsilon(1e-9));
  }
}

TEST_CASE("jacobi operator") {
  const MetricLieAlgebra3 a = from_kenmotsu_params(2, 0, 0);
  const ConnectionTable conn = levi_civita(a);
  const CurvaturePack p = curvature(a, conn, FrameVector::basis(0));
  REQUIRE(p.jacobi_operator.has_value());
  const Mat3& l = *p.jacobi_operator;
  const Vec3 xi{1, 0, 0};
  CHECK(max_abs(l * xi) < 1e-12);
  for (std::size_t j = 0; j < 3; ++j) {
    const Vec3 ej = FrameVector::basis(j).components;
    CHECK(max_abs(column(l, j) - riemann_apply(p, ej, xi, xi)) < 1e-12);
  }
  CHECK_FALSE(curvature(a, conn).jacobi_operator.has_value());
}

TEST_CASE("singular metric is rejected") {
  const MetricLieAlgebra3 a =
      from_nonunimodular(1, 0).with_metric(Mat3{{{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}});
  CHECK_THROWS_AS(levi_civita(a), SingularMetric);
}

TEST_CASE("classification of model geometries") {
  auto classify = [](const MetricLieAlgebra3& a) {
    const ConnectionTable conn = levi_civita(a);
    const CurvaturePack p = curvature(a, conn);
    return classify_geometry(a, p, ricci_parallel_check(a, conn, p).is_parallel);
  };
  const GeometryClass h2r = classify(from_kenmotsu_params(1, 0, 0));
  CHECK(h2r.kind == GeometryClass::Kind::ProductH2xR);
  CHECK(std::abs(h2r.curvature + 4) < 1e-8);
  CHECK(std::abs(h2r.ricci_eigenvalues[0] + 4) < 1e-8);
  CHECK(std::abs(h2r.ricci_eigenvalues[1] + 4) < 1e-8);
  CHECK(std::abs(h2r.ricci_eigenvalues[2]) < 1e-8);

  const GeometryClass flat = classify(MetricLieAlgebra3{});
  CHECK(flat.kind == GeometryClass::Kind::ConstantCurvature);
  CHECK(flat.curvature == 0.0);

  const GeometryClass sphere = classify({testing::milnor_unimodular(2, 2, 2), identity3()});
  CHECK(sphere.kind == GeometryClass::Kind::ConstantCurvature);
  CHECK(sphere.curvature == doctest::Approx(1.0));

  const GeometryClass hyp = classify(from_nonunimodular(1, 0));
  CHECK(hyp.kind == GeometryClass::Kind::ConstantCurvature);
  CHECK(hyp.curvature == doctest::Approx(-1.0));

  CHECK(classify(from_kenmotsu_params(2, 0, 0)).kind == GeometryClass::Kind::NotSymmetric);

  CHECK(classify_geometry(Vec3{1, 2, 3}, true).kind == GeometryClass::Kind::SymmetricOther);
  CHECK(classify_geometry(Vec3{-4, -4, 0}, false).kind == GeometryClass::Kind::NotSymmetric);
  CHECK(classify_geometry(Vec3{-4, 0, -4}, true).kind == GeometryClass::Kind::ProductH2xR);
  CHECK(classify_geometry(Vec3{4, 4, 0}, true).kind == GeometryClass::Kind::SymmetricOther);
}

TEST_CASE("ricci parallel check") {
  const MetricLieAlgebra3 a = from_kenmotsu_params(1, 0, 0);
  const ConnectionTable conn = levi_civita(a);
  const CurvaturePack p = curvature(a, conn);
  const RicciParallel r = ricci_parallel_check(a, conn, p);
  CHECK(r.is_parallel);
  CHECK(r.max_component <= 1e-10);

  const MetricLieAlgebra3 b = from_kenmotsu_params(2, 0, 0);
  const ConnectionTable cb = levi_civita(b);
  CHECK_FALSE(ricci_parallel_check(b, cb, curvature(b, cb)).is_parallel);
}
