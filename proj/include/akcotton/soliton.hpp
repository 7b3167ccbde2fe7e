#pragma once

#include <optional>
#include <string>
#include <vector>

#include "akcotton/almost_kenmotsu.hpp"
#include "akcotton/cotton.hpp"

namespace akc {

enum class Ansatz { Collinear, Orthogonal, General };

std::string to_string(Ansatz a);
Ansatz ansatz_from_string(const std::string& s);

/// Everything the soliton equation needs, computed once. When an almost
/// Kenmotsu structure is present the equation is written in the adapted frame
/// (xi, e, phi e); otherwise in the input frame (General ansatz only).
struct SolitonProblem {
  MetricLieAlgebra3 algebra;
  ConnectionTable conn;
  CurvaturePack pack;
  SymBilinear cotton2;  // input frame
  std::optional<AKStructure> ak;
  Ansatz ansatz = Ansatz::General;
  double tolerance = kDefaultTolerance;

  /// Columns are the frame the potential is expanded in.
  Mat3 frame() const { return ak ? ak->frame_matrix() : identity3(); }
  /// Frame slots the ansatz lets vary, e.g. {1, 2} for Orthogonal.
  std::vector<std::size_t> slots() const;
};

/// Throws NoStructure when a Collinear or Orthogonal ansatz is requested on
/// an algebra without an almost Kenmotsu structure.
SolitonProblem make_soliton_problem(const MetricLieAlgebra3& algebra, Ansatz ansatz,
                                    double tolerance = kDefaultTolerance);

/// (L_V g)(X,Y) = g(nabla_X V, Y) + g(X, nabla_Y V) for V with constant frame
/// components, in the input frame.
SymBilinear lie_derivative_metric(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                                  const FrameVector& v);

/// L_V g + C - sigma g in the problem frame, with V = sum_a v[a] F_a.
SymBilinear soliton_residual(const SolitonProblem& problem, const FrameVector& v, double sigma);

/// Euclidean norm of the six independent components (upper triangle).
double residual_norm(const SymBilinear& r);

enum class SolitonClass { Shrinking, Steady, Expanding, Infeasible, TrivialOnly };

std::string to_string(SolitonClass c);

struct SolitonSolution {
  FrameVector v;  // minimum-norm solution, problem-frame coefficients
  double sigma = 0.0;
  double residual = 0.0;
  int family_dim = 0;
  SolitonClass classification = SolitonClass::Infeasible;
  /// Basis of the null space of the linear system, each entry laid out as
  /// (v_1, v_2, v_3, sigma) in problem-frame slots.
  std::vector<std::array<double, 4>> null_space;
};

/// Nontrivial potential threshold on |v|.
inline constexpr double kNontrivialPotential = 1e-8;

/// Writes the six components of L_V g + C - sigma g = 0 as A u + k = 0 in the
/// unknowns u = (ansatz coefficients, sigma) and solves by SVD least squares
/// with relative rank cutoff 1e-10.
SolitonSolution solve(const SolitonProblem& problem);

struct TheoremRow {
  double lambda;
  std::string check;
  bool passed;
  std::string detail;
  double residual;
};

struct TheoremReport {
  std::vector<TheoremRow> rows;
  bool all_passed() const;
};

/// For each lambda builds the Kenmotsu-frame algebra (lambda, 0, 0) and
/// checks: no nontrivial collinear soliton; orthogonal soliton exists exactly
/// when |lambda - 1| <= tolerance; at lambda = 1 it is steady and the
/// geometry classifies as ProductH2xR(-4).
TheoremReport reproduce_theorems(const std::vector<double>& lambda_grid,
                                 double tolerance = kDefaultTolerance);

/// Throws AssertionFailure listing every failed row.
void require_all_passed(const TheoremReport& report);

}  // namespace akc
