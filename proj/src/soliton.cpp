#include "akcotton/soliton.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "akcotton/errors.hpp"

namespace akc {

namespace {

constexpr std::array<std::pair<std::size_t, std::size_t>, 6> kUpper{
    {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

SymBilinear to_frame(const Mat3& frame, const SymBilinear& t) {
  return SymBilinear(transpose(frame) * t.matrix() * frame);
}

constexpr double kRankCutoff = 1e-10;

}  // namespace

std::string to_string(Ansatz a) {
  switch (a) {
    case Ansatz::Collinear: return "collinear";
    case Ansatz::Orthogonal: return "orthogonal";
    case Ansatz::General: return "general";
  }
  return "unknown";
}

Ansatz ansatz_from_string(const std::string& s) {
  if (s == "collinear") return Ansatz::Collinear;
  if (s == "orthogonal") return Ansatz::Orthogonal;
  if (s == "general") return Ansatz::General;
  throw std::invalid_argument("unknown ansatz '" + s + "'");
}

std::string to_string(SolitonClass c) {
  switch (c) {
    case SolitonClass::Shrinking: return "Shrinking";
    case SolitonClass::Steady: return "Steady";
    case SolitonClass::Expanding: return "Expanding";
    case SolitonClass::Infeasible: return "Infeasible";
    case SolitonClass::TrivialOnly: return "TrivialOnly";
  }
  return "Unknown";
}

std::vector<std::size_t> SolitonProblem::slots() const {
  switch (ansatz) {
    case Ansatz::Collinear: return {0};
    case Ansatz::Orthogonal: return {1, 2};
    case Ansatz::General: return {0, 1, 2};
  }
  return {};
}

SolitonProblem make_soliton_problem(const MetricLieAlgebra3& algebra, Ansatz ansatz,
                                    double tolerance) {
  SolitonProblem p;
  p.algebra = algebra;
  p.conn = levi_civita(algebra);
  p.pack = curvature(algebra, p.conn);
  p.cotton2 = cotton(algebra, p.conn, p.pack).cotton2;
  p.ansatz = ansatz;
  p.tolerance = tolerance;
  if (ansatz != Ansatz::General) {
    p.ak = detect_structure(algebra, p.conn, p.pack);
    p.pack = curvature(algebra, p.conn, p.ak->xi);
  } else {
    try {
      p.ak = detect_structure(algebra, p.conn, p.pack);
    } catch (const NoStructure&) {
      p.ak.reset();
    }
  }
  return p;
}

SymBilinear lie_derivative_metric(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                                  const FrameVector& v) {
  const Mat3& g = algebra.metric();
  // column i of nabla_v is nabla_{e_i} V
  Mat3 nabla_v{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t a = 0; a < kDim; ++a) {
      if (v[a] == 0.0) continue;
      for (std::size_t k = 0; k < kDim; ++k) nabla_v[k][i] += v[a] * conn(i, a, k);
    }
  const Mat3 lowered = transpose(nabla_v) * g;  // [i][j] = g(nabla_{e_i} V, e_j)
  return SymBilinear(lowered + transpose(lowered));
}

SymBilinear soliton_residual(const SolitonProblem& problem, const FrameVector& v, double sigma) {
  const Mat3 frame = problem.frame();
  const FrameVector v_input{frame * v.components};
  const Mat3 lie = lie_derivative_metric(problem.algebra, problem.conn, v_input).matrix();
  const Mat3 total = lie + problem.cotton2.matrix() - sigma * problem.algebra.metric();
  return to_frame(frame, SymBilinear(total));
}

double residual_norm(const SymBilinear& r) {
  double s = 0.0;
  for (const auto& [i, j] : kUpper) s += r(i, j) * r(i, j);
  return std::sqrt(s);
}

SolitonSolution solve(const SolitonProblem& problem) {
  const Mat3 frame = problem.frame();
  const std::vector<std::size_t> slots = problem.slots();
  const Eigen::Index unknowns = Eigen::Index(slots.size()) + 1;

  Eigen::Matrix<double, 6, Eigen::Dynamic> a(6, unknowns);
  Eigen::Matrix<double, 6, 1> k;
  for (std::size_t col = 0; col < slots.size(); ++col) {
    const FrameVector w{column(frame, slots[col])};
    const SymBilinear lie = to_frame(frame, lie_derivative_metric(problem.algebra, problem.conn, w));
    for (std::size_t row = 0; row < kUpper.size(); ++row)
      a(Eigen::Index(row), Eigen::Index(col)) = lie(kUpper[row].first, kUpper[row].second);
  }
  const SymBilinear g_frame = to_frame(frame, SymBilinear(problem.algebra.metric()));
  const SymBilinear c_frame = to_frame(frame, problem.cotton2);
  for (std::size_t row = 0; row < kUpper.size(); ++row) {
    const auto [i, j] = kUpper[row];
    a(Eigen::Index(row), unknowns - 1) = -g_frame(i, j);
    k(Eigen::Index(row)) = c_frame(i, j);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = kRankCutoff * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(unknowns);
  Eigen::Index rank = 0;
  const Eigen::VectorXd utk = svd.matrixU().transpose() * (-k);
  for (Eigen::Index s = 0; s < sv.size(); ++s) {
    if (sv(s) > cutoff && sv(s) > 0.0) {
      u += (utk(s) / sv(s)) * svd.matrixV().col(s);
      ++rank;
    }
  }

  SolitonSolution sol;
  for (std::size_t col = 0; col < slots.size(); ++col) sol.v[slots[col]] = u(Eigen::Index(col));
  sol.sigma = u(unknowns - 1);
  sol.residual = residual_norm(soliton_residual(problem, sol.v, sol.sigma));
  sol.family_dim = int(unknowns - rank);
  for (Eigen::Index s = rank; s < unknowns; ++s) {
    std::array<double, 4> null{};
    const Eigen::VectorXd col = svd.matrixV().col(s);
    for (std::size_t c = 0; c < slots.size(); ++c) null[slots[c]] = col(Eigen::Index(c));
    null[3] = col(unknowns - 1);
    sol.null_space.push_back(null);
  }

  const double feasibility = problem.tolerance * (1.0 + frobenius(problem.cotton2.matrix()));
  if (sol.residual > feasibility) {
    sol.classification = SolitonClass::Infeasible;
    return sol;
  }
  bool nontrivial = norm(sol.v.components) > kNontrivialPotential;
  for (const auto& null : sol.null_space)
    if (norm(Vec3{null[0], null[1], null[2]}) > kNontrivialPotential) nontrivial = true;
  if (!nontrivial) {
    sol.classification = SolitonClass::TrivialOnly;
    return sol;
  }
  if (std::abs(sol.sigma) <= problem.tolerance)
    sol.classification = SolitonClass::Steady;
  else
    sol.classification = sol.sigma > 0.0 ? SolitonClass::Shrinking : SolitonClass::Expanding;
  return sol;
}

bool TheoremReport::all_passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const TheoremRow& r) { return r.passed; });
}

TheoremReport reproduce_theorems(const std::vector<double>& lambda_grid, double tolerance) {
  TheoremReport report;
  for (const double lambda : lambda_grid) {
    if (!(lambda > 0.0)) throw std::invalid_argument("reproduce_theorems: lambda must be > 0");
    const MetricLieAlgebra3 algebra = from_kenmotsu_params(lambda, 0.0, 0.0);

    const SolitonSolution col = solve(make_soliton_problem(algebra, Ansatz::Collinear, tolerance));
    {
      const bool ok = col.classification == SolitonClass::Infeasible ||
                      col.classification == SolitonClass::TrivialOnly;
      std::ostringstream d;
      d << "collinear: " << to_string(col.classification);
      report.rows.push_back({lambda, "no_nontrivial_collinear_soliton", ok, d.str(), col.residual});
    }

    const SolitonSolution orth =
        solve(make_soliton_problem(algebra, Ansatz::Orthogonal, tolerance));
    const bool feasible = orth.classification != SolitonClass::Infeasible &&
                          orth.classification != SolitonClass::TrivialOnly;
    const bool at_one = std::abs(lambda - 1.0) <= tolerance;
    {
      std::ostringstream d;
      d << "orthogonal: " << to_string(orth.classification) << ", sigma " << orth.sigma;
      report.rows.push_back(
          {lambda, "orthogonal_feasible_iff_lambda_one", feasible == at_one, d.str(), orth.residual});
    }
    if (!at_one) continue;

    {
      const bool ok = orth.classification == SolitonClass::Steady &&
                      std::abs(orth.sigma) <= 1e-10 && orth.family_dim == 1;
      std::ostringstream d;
      d << "sigma " << orth.sigma << ", family_dim " << orth.family_dim;
      report.rows.push_back({lambda, "orthogonal_soliton_steady", ok, d.str(), orth.residual});
    }
    {
      const ConnectionTable conn = levi_civita(algebra);
      const CurvaturePack pack = curvature(algebra, conn);
      const RicciParallel par = ricci_parallel_check(algebra, conn, pack, 1e-10);
      const GeometryClass cls = classify_geometry(algebra, pack, par.is_parallel);
      const bool ok = cls.kind == GeometryClass::Kind::ProductH2xR &&
                      std::abs(cls.curvature + 4.0) <= 1e-8 && par.is_parallel;
      std::ostringstream d;
      d << describe(cls) << ", ricci eigenvalues {" << cls.ricci_eigenvalues[0] << ", "
        << cls.ricci_eigenvalues[1] << ", " << cls.ricci_eigenvalues[2] << "}";
      report.rows.push_back({lambda, "geometry_is_H2xR(-4)", ok, d.str(), par.max_component});
    }
  }
  return report;
}

void require_all_passed(const TheoremReport& report) {
  std::ostringstream msg;
  bool failed = false;
  for (const auto& row : report.rows)
    if (!row.passed) {
      msg << (failed ? "; " : "") << "lambda=" << row.lambda << " " << row.check << " ("
          << row.detail << ")";
      failed = true;
    }
  if (failed) throw AssertionFailure(msg.str());
}

}  // namespace akc
