#include "akcotton/linalg.hpp"

#include <algorithm>
#include <numbers>
#include <utility>

namespace akc {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

Mat3 operator*(double s, const Mat3& a) {
  Mat3 r{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) r[i][j] = s * a[i][j];
  return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
  Vec3 r{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t k = 0; k < kDim; ++k) r[i] += a[i][k] * v[k];
  return r;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return n > 0.0 ? (1.0 / n) * a : a;
}

double max_abs(const Vec3& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

Mat3 transpose(const Mat3& a) {
  Mat3 r{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) r[i][j] = a[j][i];
  return r;
}

double trace(const Mat3& a) { return a[0][0] + a[1][1] + a[2][2]; }

double det(const Mat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Mat3 inverse(const Mat3& a) {
  const double d = det(a);
  Mat3 r{};
  r[0][0] = a[1][1] * a[2][2] - a[1][2] * a[2][1];
  r[0][1] = a[0][2] * a[2][1] - a[0][1] * a[2][2];
  r[0][2] = a[0][1] * a[1][2] - a[0][2] * a[1][1];
  r[1][0] = a[1][2] * a[2][0] - a[1][0] * a[2][2];
  r[1][1] = a[0][0] * a[2][2] - a[0][2] * a[2][0];
  r[1][2] = a[0][2] * a[1][0] - a[0][0] * a[1][2];
  r[2][0] = a[1][0] * a[2][1] - a[1][1] * a[2][0];
  r[2][1] = a[0][1] * a[2][0] - a[0][0] * a[2][1];
  r[2][2] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return (1.0 / d) * r;
}

Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 r{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) r[i][j] = a[i] * b[j];
  return r;
}

Mat3 symmetrized(const Mat3& a) { return 0.5 * (a + transpose(a)); }

double frobenius(const Mat3& a) {
  double s = 0.0;
  for (const auto& row : a)
    for (double x : row) s += x * x;
  return std::sqrt(s);
}

double max_abs(const Mat3& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (double x : row) m = std::max(m, std::abs(x));
  return m;
}

Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 r{};
  for (std::size_t i = 0; i < kDim; ++i) {
    r[i][0] = c0[i];
    r[i][1] = c1[i];
    r[i][2] = c2[i];
  }
  return r;
}

Vec3 column(const Mat3& a, std::size_t j) { return {a[0][j], a[1][j], a[2][j]}; }

bool cholesky(const Mat3& a, Mat3& lower, double rel_tol) {
  lower = Mat3{};
  const double scale = std::max({std::abs(a[0][0]), std::abs(a[1][1]), std::abs(a[2][2])});
  if (!(scale > 0.0) || !std::isfinite(scale)) return false;
  for (std::size_t j = 0; j < kDim; ++j) {
    double d = a[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= lower[j][k] * lower[j][k];
    if (!(d > rel_tol * scale)) return false;
    lower[j][j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < kDim; ++i) {
      double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= lower[i][k] * lower[j][k];
      lower[i][j] = s / lower[j][j];
    }
  }
  return true;
}

namespace {

// Unit null vector of (A - lambda I) for a simple eigenvalue: the largest
// cross product of two rows.
Vec3 simple_eigenvector(const Mat3& a, double lambda) {
  Mat3 m = a;
  for (std::size_t i = 0; i < kDim; ++i) m[i][i] -= lambda;
  const Vec3 r0{m[0][0], m[0][1], m[0][2]};
  const Vec3 r1{m[1][0], m[1][1], m[1][2]};
  const Vec3 r2{m[2][0], m[2][1], m[2][2]};
  const std::array<Vec3, 3> candidates{cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  std::size_t best = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (norm(candidates[k]) > norm(candidates[best])) best = k;
  if (norm(candidates[best]) == 0.0) return {1.0, 0.0, 0.0};
  return normalized(candidates[best]);
}

Vec3 any_orthogonal(const Vec3& v) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < kDim; ++i)
    if (std::abs(v[i]) < std::abs(v[k])) k = i;
  Vec3 axis{};
  axis[k] = 1.0;
  return normalized(cross(v, axis));
}

}  // namespace

SymEigen3 sym_eigen3(const Mat3& input) {
  const Mat3 a = symmetrized(input);
  SymEigen3 out;
  const double q = trace(a) / 3.0;
  Mat3 b = a;
  for (std::size_t i = 0; i < kDim; ++i) b[i][i] -= q;
  const double p = frobenius(b) / std::sqrt(6.0);
  if (p <= 1e-300 || p <= 1e-15 * std::abs(q)) {
    out.values = {q, q, q};
    out.vectors = identity3();
    return out;
  }
  const double r = std::clamp(det((1.0 / p) * b) / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double mid = 3.0 * q - hi - lo;

  const double isolated_guess = (hi - mid) >= (mid - lo) ? hi : lo;
  const Vec3 v = simple_eigenvector(a, isolated_guess);
  const double isolated = dot(v, a * v);

  const Vec3 u1 = any_orthogonal(v);
  const Vec3 u2 = cross(v, u1);
  const double c11 = dot(u1, a * u1);
  const double c22 = dot(u2, a * u2);
  const double c12 = dot(u1, a * u2);
  const double mean = 0.5 * (c11 + c22);
  const double radius = std::hypot(0.5 * (c11 - c22), c12);
  const double theta = 0.5 * std::atan2(2.0 * c12, c11 - c22);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const Vec3 w_plus = ct * u1 + st * u2;
  const Vec3 w_minus = (-st) * u1 + ct * u2;

  std::array<std::pair<double, Vec3>, 3> pairs{
      std::pair{isolated, v}, std::pair{mean + radius, w_plus}, std::pair{mean - radius, w_minus}};
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t j = 0; j < kDim; ++j) {
    out.values[j] = pairs[j].first;
    for (std::size_t i = 0; i < kDim; ++i) out.vectors[i][j] = pairs[j].second[i];
  }
  return out;
}

}  // namespace akc
