#pragma once

#include <array>
#include <optional>
#include <string>

#include "akcotton/frame_algebra.hpp"

namespace akc {

/// gamma[i][j][k]: nabla_{e_i} e_j = sum_k gamma[i][j][k] e_k.
struct ConnectionTable {
  Tensor3 gamma;

  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return gamma(i, j, k); }
  /// Frame components of nabla_{e_i} e_j.
  Vec3 covariant(std::size_t i, std::size_t j) const { return gamma.t[i][j]; }
  /// Matrix of Y -> nabla_X Y for invariant Y.
  Mat3 along(const FrameVector& x) const;
};

using Riemann = std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3>;

struct CurvaturePack {
  /// riemann[i][j][k][l]: e_l-component of R(e_i,e_j)e_k with
  /// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
  Riemann riemann{};
  /// S(X,Y) = trace(Z -> R(Z,X)Y).
  SymBilinear ricci;
  /// Q = g^{-1} S, acting on frame components.
  Mat3 ricci_operator{};
  double scalar = 0.0;
  /// l = R(., xi) xi; present only when a Reeb field is supplied.
  std::optional<Mat3> jacobi_operator;
};

/// Koszul formula for invariant fields:
/// 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
ConnectionTable levi_civita(const MetricLieAlgebra3& algebra);

CurvaturePack curvature(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                        const std::optional<FrameVector>& reeb = std::nullopt);

/// R(X,Y)Z for arbitrary frame vectors.
Vec3 riemann_apply(const CurvaturePack& pack, const Vec3& x, const Vec3& y, const Vec3& z);

/// D[i][j][k] = (nabla_{e_i} T)(e_j, e_k) for T with constant frame components.
Tensor3 cov_deriv_sym2(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                       const SymBilinear& t);

struct RicciParallel {
  bool is_parallel;
  double max_component;
};

RicciParallel ricci_parallel_check(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                                   const CurvaturePack& pack, double tol = 1e-10);

/// Eigenvalues of the Ricci operator, ascending. Computed from the symmetric
/// form L^{-1} S L^{-T} (g = L L^T) so they stay real for any metric.
Vec3 ricci_eigenvalues(const MetricLieAlgebra3& algebra, const CurvaturePack& pack);

struct GeometryClass {
  enum class Kind { ConstantCurvature, ProductH2xR, SymmetricOther, NotSymmetric };
  Kind kind = Kind::NotSymmetric;
  /// Sectional curvature for ConstantCurvature; curvature of the hyperbolic
  /// factor for ProductH2xR; unused otherwise.
  double curvature = 0.0;
  Vec3 ricci_eigenvalues{};
};

std::string to_string(GeometryClass::Kind kind);
std::string describe(const GeometryClass& cls);

/// Labels the geometry from the Ricci-operator spectrum. Eigenvalue patterns
/// match when sorted distances are within rel_tol * max(1, max |eigenvalue|).
GeometryClass classify_geometry(const Vec3& ricci_eigenvalues, bool ricci_parallel,
                                double rel_tol = 1e-6);
GeometryClass classify_geometry(const MetricLieAlgebra3& algebra, const CurvaturePack& pack,
                                bool ricci_parallel, double rel_tol = 1e-6);

}  // namespace akc
