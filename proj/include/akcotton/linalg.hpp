#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace akc {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

inline constexpr std::size_t kDim = 3;

constexpr Mat3 zero_mat3() { return Mat3{}; }

constexpr Mat3 identity3() {
  Mat3 m{};
  for (std::size_t i = 0; i < kDim; ++i) m[i][i] = 1.0;
  return m;
}

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& a);
Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a, const Mat3& b);
Mat3 operator*(double s, const Mat3& a);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 normalized(const Vec3& a);
double max_abs(const Vec3& a);

Mat3 transpose(const Mat3& a);
double trace(const Mat3& a);
double det(const Mat3& a);
// Inverse via the adjugate. Caller guards against singular input.
Mat3 inverse(const Mat3& a);
Mat3 outer(const Vec3& a, const Vec3& b);
Mat3 symmetrized(const Mat3& a);
double frobenius(const Mat3& a);
double max_abs(const Mat3& a);
// Matrix whose columns are the given vectors.
Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);
Vec3 column(const Mat3& a, std::size_t j);

/// Lower-triangular Cholesky factor of a symmetric matrix. Returns false if
/// the matrix is not positive definite (pivot <= rel_tol * max diagonal).
bool cholesky(const Mat3& a, Mat3& lower, double rel_tol = 1e-14);

/// Eigen-decomposition of a real symmetric 3x3 matrix.
///
/// Eigenvalues come from the trigonometric closed form. The most isolated
/// eigenvalue and its vector are kept, and the remaining pair is recomputed
/// from the 2x2 compression onto the orthogonal complement, which keeps
/// clustered eigenvalues accurate to roundoff instead of sqrt(eps).
struct SymEigen3 {
  Vec3 values{};   // ascending
  Mat3 vectors{};  // column j is the unit eigenvector for values[j]
};

SymEigen3 sym_eigen3(const Mat3& a);

}  // namespace akc
