#include "akcotton/frame_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "akcotton/errors.hpp"

namespace akc {

FrameVector operator+(const FrameVector& a, const FrameVector& b) {
  return {a.components + b.components};
}
FrameVector operator-(const FrameVector& a, const FrameVector& b) {
  return {a.components - b.components};
}
FrameVector operator*(double s, const FrameVector& a) { return {s * a.components}; }

void MetricLieAlgebra3::set_bracket(std::size_t i, std::size_t j, const Vec3& coeffs) {
  for (std::size_t k = 0; k < kDim; ++k) {
    c_(i, j, k) = coeffs[k];
    c_(j, i, k) = -coeffs[k];
  }
}

double MetricLieAlgebra3::max_structure_constant() const {
  double m = 0.0;
  for (const auto& slice : c_.t) m = std::max(m, max_abs(slice));
  return m;
}

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Antisymmetry: return "antisymmetry";
    case Violation::Kind::Jacobi: return "jacobi";
    case Violation::Kind::MetricAsymmetry: return "metric_asymmetry";
    case Violation::Kind::MetricNotPositive: return "metric_not_positive";
    case Violation::Kind::NonFinite: return "non_finite";
  }
  return "unknown";
}

Vec3 jacobi_residual(const Tensor3& c) {
  // [[e_i,e_j],e_k] = sum_m c[i][j][m] c[m][k][n] e_n
  auto term = [&c](std::size_t i, std::size_t j, std::size_t k) {
    Vec3 r{};
    for (std::size_t m = 0; m < kDim; ++m)
      for (std::size_t n = 0; n < kDim; ++n) r[n] += c(i, j, m) * c(m, k, n);
    return r;
  };
  return term(0, 1, 2) + term(1, 2, 0) + term(2, 0, 1);
}

ValidityReport validate(const MetricLieAlgebra3& algebra, double tol) {
  ValidityReport report;
  const Tensor3& c = algebra.structure();
  const Mat3& g = algebra.metric();

  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      for (std::size_t k = 0; k < kDim; ++k) {
        if (!std::isfinite(c(i, j, k))) {
          report.violations.push_back({Violation::Kind::NonFinite,
                                       {int(i), int(j), int(k)}, c(i, j, k)});
          return report;
        }
      }
      if (!std::isfinite(g[i][j])) {
        report.violations.push_back({Violation::Kind::NonFinite, {int(i), int(j), -1}, g[i][j]});
        return report;
      }
    }

  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = i; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        const double asym = std::abs(c(i, j, k) + c(j, i, k));
        if (asym > tol)
          report.violations.push_back({Violation::Kind::Antisymmetry,
                                       {int(i), int(j), int(k)}, asym});
      }

  const double scale = 1.0 + algebra.max_structure_constant();
  const Vec3 jac = jacobi_residual(c);
  for (std::size_t n = 0; n < kDim; ++n)
    if (std::abs(jac[n]) > tol * scale * scale)
      report.violations.push_back({Violation::Kind::Jacobi, {0, 1, int(n)}, std::abs(jac[n])});

  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = i + 1; j < kDim; ++j) {
      const double asym = std::abs(g[i][j] - g[j][i]);
      if (asym > tol)
        report.violations.push_back({Violation::Kind::MetricAsymmetry, {int(i), int(j), -1}, asym});
    }

  Mat3 lower;
  if (!cholesky(symmetrized(g), lower)) {
    const double min_eig = sym_eigen3(g).values[0];
    report.violations.push_back({Violation::Kind::MetricNotPositive, {-1, -1, -1}, min_eig});
  }
  return report;
}

MetricLieAlgebra3 from_kenmotsu_params(double lambda, double b, double c, double tol) {
  if (!(lambda > 0.0)) throw std::invalid_argument("from_kenmotsu_params: lambda must be > 0");
  // Cyclic Jacobi sum reduces to (b - lambda c) e + (c - lambda b) phi e.
  const double e_coeff = b - lambda * c;
  const double phie_coeff = c - lambda * b;
  const double scale = 1.0 + std::max({lambda, std::abs(b), std::abs(c), 1.0});
  if (std::abs(e_coeff) > tol * scale * scale || std::abs(phie_coeff) > tol * scale * scale) {
    std::ostringstream msg;
    msg << "Jacobi identity fails for (lambda, b, c) = (" << lambda << ", " << b << ", " << c
        << "): e-coefficient " << e_coeff << ", phi e-coefficient " << phie_coeff;
    throw JacobiViolation(msg.str());
  }
  MetricLieAlgebra3 algebra;
  algebra.set_bracket(1, 0, {0.0, 1.0, -lambda});
  algebra.set_bracket(1, 2, {0.0, b, -c});
  algebra.set_bracket(2, 0, {0.0, -lambda, 1.0});
  return algebra;
}

MetricLieAlgebra3 from_nonunimodular(double alpha, double beta) {
  MetricLieAlgebra3 algebra;
  algebra.set_bracket(0, 1, {0.0, alpha, beta});
  algebra.set_bracket(0, 2, {0.0, beta, 2.0 - alpha});
  return algebra;
}

FrameVector bracket(const MetricLieAlgebra3& algebra, const FrameVector& x, const FrameVector& y) {
  FrameVector r;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      const double w = x[i] * y[j];
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < kDim; ++k) r[k] += w * algebra.c(i, j, k);
    }
  return r;
}

Mat3 ad_matrix(const MetricLieAlgebra3& algebra, const FrameVector& x) {
  Mat3 m{};
  for (std::size_t j = 0; j < kDim; ++j) {
    const FrameVector col = bracket(algebra, x, FrameVector::basis(j));
    for (std::size_t k = 0; k < kDim; ++k) m[k][j] = col[k];
  }
  return m;
}

}  // namespace akc
