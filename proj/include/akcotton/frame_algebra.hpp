#pragma once

#include <array>
#include <string>
#include <vector>

#include "akcotton/linalg.hpp"

namespace akc {

/// Default absolute tolerance on tensor components.
inline constexpr double kDefaultTolerance = 1e-9;

/// Frame coefficients of a vector.
struct FrameVector {
  Vec3 components{};

  static FrameVector basis(std::size_t i) {
    FrameVector v;
    v.components[i] = 1.0;
    return v;
  }
  double operator[](std::size_t i) const { return components[i]; }
  double& operator[](std::size_t i) { return components[i]; }
};

FrameVector operator+(const FrameVector& a, const FrameVector& b);
FrameVector operator-(const FrameVector& a, const FrameVector& b);
FrameVector operator*(double s, const FrameVector& a);

/// Symmetric (0,2) tensor. The constructor symmetrizes its input, so the
/// stored components are symmetric exactly.
class SymBilinear {
 public:
  SymBilinear() = default;
  explicit SymBilinear(const Mat3& m) : m_(symmetrized(m)) {}

  double operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
  const Mat3& matrix() const { return m_; }
  double apply(const Vec3& x, const Vec3& y) const { return dot(x, m_ * y); }

 private:
  Mat3 m_{};
};

/// (0,3) tensor T[i][j][k] = T(e_i, e_j, e_k).
struct Tensor3 {
  std::array<Mat3, 3> t{};

  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return t[i][j][k]; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return t[i][j][k]; }
};

/// Structure constants c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k,
/// together with the metric components g[i][j] in the same frame.
class MetricLieAlgebra3 {
 public:
  MetricLieAlgebra3() : metric_(identity3()) {}
  MetricLieAlgebra3(const Tensor3& structure, const Mat3& metric)
      : c_(structure), metric_(metric) {}

  const Tensor3& structure() const { return c_; }
  const Mat3& metric() const { return metric_; }
  double c(std::size_t i, std::size_t j, std::size_t k) const { return c_(i, j, k); }

  /// Same bracket with a different metric (the flow moves only the metric).
  MetricLieAlgebra3 with_metric(const Mat3& metric) const { return {c_, metric}; }

  /// Sets [e_i, e_j] = coeffs and [e_j, e_i] = -coeffs.
  void set_bracket(std::size_t i, std::size_t j, const Vec3& coeffs);

  double max_structure_constant() const;

 private:
  Tensor3 c_{};
  Mat3 metric_;
};

struct Violation {
  enum class Kind { Antisymmetry, Jacobi, MetricAsymmetry, MetricNotPositive, NonFinite };
  Kind kind;
  std::array<int, 3> indices;  // offending triple; -1 where not applicable
  double magnitude;
};

std::string to_string(Violation::Kind kind);

struct ValidityReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

/// Frame components of [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2]. In
/// dimension 3 this cyclic sum is the only independent Jacobi constraint.
Vec3 jacobi_residual(const Tensor3& c);

ValidityReport validate(const MetricLieAlgebra3& algebra, double tol = kDefaultTolerance);

/// Orthonormal frame (xi, e, phi e) with
///   [e, xi] = e - lambda phi e,  [e, phi e] = b e - c phi e,
///   [phi e, xi] = -lambda e + phi e.
/// Throws JacobiViolation unless b = lambda c and c = lambda b.
MetricLieAlgebra3 from_kenmotsu_params(double lambda, double b, double c,
                                       double tol = kDefaultTolerance);

/// Orthonormal frame with [e1,e2] = alpha e2 + beta e3, [e2,e3] = 0,
/// [e1,e3] = beta e2 + (2 - alpha) e3.
MetricLieAlgebra3 from_nonunimodular(double alpha, double beta);

FrameVector bracket(const MetricLieAlgebra3& algebra, const FrameVector& x, const FrameVector& y);

/// Matrix of ad_x = [x, .] acting on frame components.
Mat3 ad_matrix(const MetricLieAlgebra3& algebra, const FrameVector& x);

}  // namespace akc
