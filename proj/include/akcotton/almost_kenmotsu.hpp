#pragma once

#include <array>
#include <string>
#include <vector>

#include "akcotton/connection_curvature.hpp"

namespace akc {

/// Almost Kenmotsu data detected on an orthonormal metric Lie algebra. All
/// vectors and operators are expressed in the input frame; the adapted frame
/// (xi, e, phi e) is stored as input-frame components.
struct AKStructure {
  FrameVector xi;
  Vec3 eta{};     // eta = g(xi, .)
  Mat3 phi{};     // phi X = xi x X on the orthogonal complement of xi
  Mat3 h_op{};    // h = 1/2 L_xi phi
  double lambda = 0.0;
  double b = 0.0;
  double c = 0.0;
  double f = 2.0;  // b^2 + c^2 + 2 for constant b, c
  std::array<FrameVector, 3> adapted_frame{};
  bool kenmotsu = false;
  double detection_residual = 0.0;

  /// h' = h o phi.
  Mat3 h_prime() const { return h_op * phi; }
  /// Columns are the adapted frame vectors.
  Mat3 frame_matrix() const {
    return from_columns(adapted_frame[0].components, adapted_frame[1].components,
                        adapted_frame[2].components);
  }
};

struct DetectOptions {
  double tol = 1e-8;         // acceptance on the xi shape residual
  double kenmotsu_tol = 1e-10;  // |h| below this flags the Kenmotsu case
};

/// Finds a unit xi with nabla xi = I - eta (x) xi - phi h, i.e. A = nabla xi
/// symmetric, A xi = 0 and trace A = 2, then builds phi, h, lambda and reads
/// b, c off nabla_e e = -xi - b phi e and nabla_{phi e} e = lambda xi + c phi e.
/// Throws NoStructure when no candidate fits.
AKStructure detect_structure(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                             const CurvaturePack& pack, const DetectOptions& opts = {});

/// One named residual per structure identity; passing means residual <= tol.
struct InvariantCheck {
  std::string name;
  double residual;
  bool passed;
};

std::vector<InvariantCheck> check_invariants(const MetricLieAlgebra3& algebra,
                                             const ConnectionTable& conn,
                                             const AKStructure& ak, double tol = 1e-8);

struct HParallel {
  bool holds;
  double residual;       // max of the three quantities below
  double nabla_xi_h;     // max |nabla_xi h|
  double identity_rhs;   // max |-phi - 2h - phi h^2 - phi l|
  double disagreement;   // max |nabla_xi h - rhs|
};

HParallel check_h_parallel(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                           const AKStructure& ak, double tol = 1e-8);

/// Matrix of nabla_xi h for h with constant components.
Mat3 nabla_xi_h(const ConnectionTable& conn, const AKStructure& ak);

/// Ricci tensor in the adapted frame from the closed form with constant
/// lambda, b, c (every derivative of lambda, b, c dropped).
SymBilinear ricci_closed_form(const AKStructure& ak);

/// Components T(F_a, F_b) in the adapted frame.
SymBilinear in_adapted_frame(const AKStructure& ak, const SymBilinear& t);

struct XiEigenAnalysis {
  bool is_eigenvector = false;
  double s_xi_e = 0.0;
  double s_xi_phie = 0.0;
  double f = 0.0;
  bool forced_b_zero = false;
  bool forced_c_zero = false;
  bool forced_f_two = false;
  bool lambda_constant = true;  // constants in the homogeneous model
  /// Adapted-frame brackets match [e,xi] = e - lambda phi e, [e,phi e] = 0,
  /// [phi e,xi] = -lambda e + phi e.
  bool reduced_brackets_match = false;
};

/// Requires lambda > 0 (throws std::invalid_argument in the Kenmotsu case).
/// Throws InconsistentStructure if xi is a Ricci eigenvector but b or c is
/// nonzero.
XiEigenAnalysis xi_eigenvector_analysis(const MetricLieAlgebra3& algebra,
                                        const AKStructure& ak, const CurvaturePack& pack,
                                        double tol = 1e-8);

/// Vertices of a twice-subdivided icosahedron (162 unit vectors).
std::vector<Vec3> geodesic_grid162();

}  // namespace akc
