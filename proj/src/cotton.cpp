#include "akcotton/cotton.hpp"

#include <algorithm>
#include <cmath>

#include "akcotton/errors.hpp"

namespace akc {

namespace {

int permutation_sign(std::size_t a, std::size_t b, std::size_t c) {
  if (a == b || b == c || a == c) return 0;
  // even permutations of (0,1,2)
  if ((a == 0 && b == 1) || (a == 1 && b == 2) || (a == 2 && b == 0)) return 1;
  return -1;
}

Mat3 raw_cotton2(const MetricLieAlgebra3& algebra, const Tensor3& c3) {
  const Mat3& g = algebra.metric();
  const double d = det(g);
  if (!(d > 0.0)) throw SingularMetric("cotton2: metric determinant is not positive");
  const double prefactor = 1.0 / (2.0 * std::sqrt(d));
  Mat3 out{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      double s = 0.0;
      for (std::size_t n = 0; n < kDim; ++n)
        for (std::size_t m = 0; m < kDim; ++m)
          for (std::size_t l = 0; l < kDim; ++l) {
            const int eps = permutation_sign(n, m, l);
            if (eps != 0) s += c3(n, m, i) * eps * g[l][j];
          }
      out[i][j] = prefactor * s;
    }
  return out;
}

}  // namespace

Tensor3 cotton3_oracle(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                       const CurvaturePack& pack) {
  const Tensor3 ds = cov_deriv_sym2(algebra, conn, pack.ricci);
  Tensor3 c3;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) c3(i, j, k) = ds(i, j, k) - ds(j, i, k);
  return c3;
}

SymBilinear cotton2_from_cotton3(const MetricLieAlgebra3& algebra, const Tensor3& c3) {
  return SymBilinear(raw_cotton2(algebra, c3));
}

double cotton2_asymmetry(const MetricLieAlgebra3& algebra, const Tensor3& c3) {
  const Mat3 raw = raw_cotton2(algebra, c3);
  return max_abs(raw - transpose(raw));
}

CottonPack cotton(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                  const CurvaturePack& pack) {
  CottonPack out;
  out.cotton3 = cotton3_oracle(algebra, conn, pack);
  out.cotton2 = cotton2_from_cotton3(algebra, out.cotton3);
  return out;
}

SymBilinear cotton2_closed_form(const AKStructure& ak) {
  const double l = ak.lambda;
  const double b = ak.b;
  const double c = ak.c;
  const double f = ak.f;
  // Every frame derivative of lambda, b, c, f and r drops out; what remains
  // of each component is listed beside it.
  Mat3 m{};
  m[0][0] = 2.0 * l * (b * b - c * c);              // b(2lb) - c(2lc)
  m[0][1] = 2.0 * (2.0 * l * c - 2.0 * l * l * b);  // 2[2lc - 2l^2 b]
  m[0][2] = -2.0 * (2.0 * l * b - 2.0 * l * l * c); // -2[2lb - 2l^2 c]
  m[1][1] = 2.0 * l * l * l - f * l + 2.0 * l * c * c;  // 2l^3 - fl + c(2lc)
  m[1][2] = -f + 2.0 + 2.0 * l * b * c;             // -f + 2 + b(2lc)
  m[2][2] = -2.0 * l * l * l + f * l - 2.0 * l * b * b;  // -2l^3 + fl - b(2lb)
  m[1][0] = m[0][1];
  m[2][0] = m[0][2];
  m[2][1] = m[1][2];
  return SymBilinear(m);
}

double metric_trace(const MetricLieAlgebra3& algebra, const SymBilinear& t) {
  return trace(inverse(algebra.metric()) * t.matrix());
}

Vec3 divergence(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                const SymBilinear& t) {
  const Tensor3 d = cov_deriv_sym2(algebra, conn, t);
  const Mat3 ginv = inverse(algebra.metric());
  Vec3 out{};
  for (std::size_t j = 0; j < kDim; ++j)
    for (std::size_t i = 0; i < kDim; ++i)
      for (std::size_t k = 0; k < kDim; ++k) out[j] += ginv[i][k] * d(i, k, j);
  return out;
}

double cotton3_trace_residual(const MetricLieAlgebra3& algebra, const Tensor3& c3) {
  const Mat3 ginv = inverse(algebra.metric());
  double worst = 0.0;
  for (std::size_t free = 0; free < kDim; ++free) {
    double t01 = 0.0;
    double t02 = 0.0;
    double t12 = 0.0;
    for (std::size_t a = 0; a < kDim; ++a)
      for (std::size_t b = 0; b < kDim; ++b) {
        t01 += ginv[a][b] * c3(a, b, free);
        t02 += ginv[a][b] * c3(a, free, b);
        t12 += ginv[a][b] * c3(free, a, b);
      }
    worst = std::max({worst, std::abs(t01), std::abs(t02), std::abs(t12)});
  }
  return worst;
}

double cotton3_skew_residual(const Tensor3& c3) {
  double worst = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k)
        worst = std::max(worst, std::abs(c3(i, j, k) + c3(j, i, k)));
  return worst;
}

SymBilinear cotton_york(const MetricLieAlgebra3& algebra) {
  const ConnectionTable conn = levi_civita(algebra);
  const CurvaturePack pack = curvature(algebra, conn);
  return cotton2_from_cotton3(algebra, cotton3_oracle(algebra, conn, pack));
}

}  // namespace akc
