#pragma once

#include "akcotton/almost_kenmotsu.hpp"
#include "akcotton/connection_curvature.hpp"

namespace akc {

struct CottonPack {
  Tensor3 cotton3;      // C(e_i, e_j, e_k)
  SymBilinear cotton2;  // Cotton-York tensor C_ij
};

/// C(X,Y,Z) = (nabla_X S)(Y,Z) - (nabla_Y S)(X,Z). The scalar-gradient
/// correction vanishes because r is constant on a Lie group.
Tensor3 cotton3_oracle(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                       const CurvaturePack& pack);

/// C_ij = 1/(2 sqrt(det g)) C_nmi eps^{nml} g_lj, eps the permutation symbol
/// with eps^{123} = 1. Throws SingularMetric for a non-positive determinant.
///
/// The raw contraction is symmetric only up to rounding; the stored tensor is
/// its symmetric part (see cotton2_asymmetry for the discarded part).
SymBilinear cotton2_from_cotton3(const MetricLieAlgebra3& algebra, const Tensor3& c3);

/// Max |C_ij - C_ji| of the raw contraction before symmetrization.
double cotton2_asymmetry(const MetricLieAlgebra3& algebra, const Tensor3& c3);

CottonPack cotton(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                  const CurvaturePack& pack);

/// Cotton-York tensor in the adapted frame (xi, e, phi e) from the closed
/// form with constant lambda, b, c.
SymBilinear cotton2_closed_form(const AKStructure& ak);

/// g^{ij} C_ij.
double metric_trace(const MetricLieAlgebra3& algebra, const SymBilinear& t);

/// Components g^{ik} (nabla_{e_i} T)(e_k, e_j).
Vec3 divergence(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                const SymBilinear& t);

/// Largest metric contraction of any two slots of a (0,3) tensor.
double cotton3_trace_residual(const MetricLieAlgebra3& algebra, const Tensor3& c3);

double cotton3_skew_residual(const Tensor3& c3);

/// Cotton-York tensor of the metric alone: Koszul, curvature, contraction.
SymBilinear cotton_york(const MetricLieAlgebra3& algebra);

}  // namespace akc
