#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "akcotton/linalg.hpp"
#include "test_support.hpp"

using namespace akc;

namespace {

double eig_residual(const Mat3& a, const SymEigen3& e) {
  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec3 v = column(e.vectors, k);
    worst = std::max(worst, max_abs(a * v - e.values[k] * v));
  }
  return worst;
}

}  // namespace

TEST_CASE("inverse and determinant agree with hand values") {
  const Mat3 a{{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}}};
  CHECK(det(a) == doctest::Approx(18.0));
  CHECK(max_abs(a * inverse(a) - identity3()) < 1e-15);
}

TEST_CASE("cholesky rejects indefinite matrices") {
  Mat3 l{};
  CHECK(cholesky(identity3(), l));
  CHECK_FALSE(cholesky(Mat3{{{1, 2, 0}, {2, 1, 0}, {0, 0, 1}}}, l));
  CHECK_FALSE(cholesky(Mat3{{{1, 0, 0}, {0, 0, 0}, {0, 0, 1}}}, l));
}

TEST_CASE("symmetric eigensolver on distinct, double and triple spectra") {
  const Mat3 diag{{{3, 0, 0}, {0, -1, 0}, {0, 0, 2}}};
  const SymEigen3 e = sym_eigen3(diag);
  CHECK(e.values[0] == doctest::Approx(-1));
  CHECK(e.values[1] == doctest::Approx(2));
  CHECK(e.values[2] == doctest::Approx(3));

  // {-4, -4, 0} pattern conjugated by a rotation
  const Mat3 r = testing::rotation(0.3, -1.1, 0.7);
  const Mat3 a = r * Mat3{{{-4, 0, 0}, {0, 0, 0}, {0, 0, -4}}} * transpose(r);
  const SymEigen3 d = sym_eigen3(a);
  CHECK(std::abs(d.values[0] + 4) < 1e-13);
  CHECK(std::abs(d.values[1] + 4) < 1e-13);
  CHECK(std::abs(d.values[2]) < 1e-13);
  CHECK(eig_residual(a, d) < 1e-13);
  CHECK(max_abs(transpose(d.vectors) * d.vectors - identity3()) < 1e-13);

  const SymEigen3 t = sym_eigen3(5.0 * identity3());
  CHECK(eig_residual(5.0 * identity3(), t) == 0.0);
}

TEST_CASE("property: eigen decomposition of random symmetric matrices") {
  testing::Rng rng(11);
  for (int n = 0; n < 500; ++n) {
    Mat3 a{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) a[i][j] = a[j][i] = rng.uniform(-5, 5);
    const SymEigen3 e = sym_eigen3(a);
    CHECK(e.values[0] <= e.values[1]);
    CHECK(e.values[1] <= e.values[2]);
    CHECK(eig_residual(a, e) < 1e-11);
    CHECK(std::abs(e.values[0] + e.values[1] + e.values[2] - trace(a)) < 1e-11);
  }
}
