#include "akcotton/almost_kenmotsu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "akcotton/errors.hpp"

namespace akc {

namespace {

// A(x): column j is nabla_{e_j} X for X with frame components x.
Mat3 nabla_of(const ConnectionTable& conn, const Vec3& x) {
  Mat3 a{};
  for (std::size_t j = 0; j < kDim; ++j)
    for (std::size_t s = 0; s < kDim; ++s) {
      if (x[s] == 0.0) continue;
      for (std::size_t k = 0; k < kDim; ++k) a[k][j] += x[s] * conn(j, s, k);
    }
  return a;
}

Mat3 cross_matrix(const Vec3& v) {
  return {{{0.0, -v[2], v[1]}, {v[2], 0.0, -v[0]}, {-v[1], v[0], 0.0}}};
}

using Residual = std::array<double, 8>;

// Zero exactly when A = nabla x is symmetric, A x = 0, trace A = 2, |x| = 1.
Residual shape_residual(const ConnectionTable& conn, const Vec3& x) {
  const Mat3 a = nabla_of(conn, x);
  const Vec3 ax = a * x;
  return {a[0][1] - a[1][0], a[0][2] - a[2][0], a[1][2] - a[2][1], ax[0], ax[1], ax[2],
          trace(a) - 2.0, dot(x, x) - 1.0};
}

double residual_norm(const Residual& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

// Levenberg-Marquardt on the eight shape equations in three unknowns.
Vec3 refine(const ConnectionTable& conn, Vec3 x) {
  std::array<Mat3, 3> basis_ops;
  for (std::size_t a = 0; a < kDim; ++a) {
    Vec3 unit{};
    unit[a] = 1.0;
    basis_ops[a] = nabla_of(conn, unit);
  }
  double mu = 1e-3;
  Residual r = shape_residual(conn, x);
  double cost = residual_norm(r);
  for (int iter = 0; iter < 100 && cost > 1e-15; ++iter) {
    const Mat3 a = nabla_of(conn, x);
    std::array<Residual, 3> jac{};  // jac[a][row]
    for (std::size_t s = 0; s < kDim; ++s) {
      const Mat3& as = basis_ops[s];
      Vec3 unit{};
      unit[s] = 1.0;
      const Vec3 d_ax = as * x + a * unit;
      jac[s] = {as[0][1] - as[1][0], as[0][2] - as[2][0], as[1][2] - as[2][1], d_ax[0], d_ax[1],
                d_ax[2], trace(as), 2.0 * x[s]};
    }
    Mat3 jtj{};
    Vec3 jtr{};
    for (std::size_t p = 0; p < kDim; ++p) {
      for (std::size_t q = 0; q < kDim; ++q)
        for (std::size_t row = 0; row < r.size(); ++row) jtj[p][q] += jac[p][row] * jac[q][row];
      for (std::size_t row = 0; row < r.size(); ++row) jtr[p] += jac[p][row] * r[row];
    }
    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Mat3 damped = jtj;
      for (std::size_t p = 0; p < kDim; ++p) damped[p][p] += mu * (1.0 + jtj[p][p]);
      if (std::abs(det(damped)) < 1e-300) {
        mu *= 10.0;
        continue;
      }
      const Vec3 step = inverse(damped) * jtr;
      const Vec3 trial = x - step;
      const Residual rt = shape_residual(conn, trial);
      const double ct = residual_norm(rt);
      if (ct < cost) {
        x = trial;
        r = rt;
        cost = ct;
        mu = std::max(mu * 0.1, 1e-15);
        improved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
  }
  return x;
}

// Minimum-norm least-squares solution of the linear part (symmetric A,
// trace 2). When that affine set only touches the unit sphere this point is
// the exact tangent solution, which iterative refinement reaches only to
// sqrt(eps).
std::optional<Vec3> linear_seed(const ConnectionTable& conn) {
  std::array<std::array<double, 3>, 4> m{};
  for (std::size_t s = 0; s < kDim; ++s) {
    Vec3 unit{};
    unit[s] = 1.0;
    const Mat3 as = nabla_of(conn, unit);
    m[0][s] = as[0][1] - as[1][0];
    m[1][s] = as[0][2] - as[2][0];
    m[2][s] = as[1][2] - as[2][1];
    m[3][s] = trace(as);
  }
  const std::array<double, 4> rhs{0.0, 0.0, 0.0, 2.0};
  Mat3 mtm{};
  Vec3 mtb{};
  for (std::size_t p = 0; p < kDim; ++p) {
    for (std::size_t q = 0; q < kDim; ++q)
      for (std::size_t row = 0; row < 4; ++row) mtm[p][q] += m[row][p] * m[row][q];
    for (std::size_t row = 0; row < 4; ++row) mtb[p] += m[row][p] * rhs[row];
  }
  const SymEigen3 eig = sym_eigen3(mtm);
  const double cutoff = 1e-12 * std::max(eig.values[2], 1e-300);
  Vec3 x{};
  for (std::size_t j = 0; j < kDim; ++j) {
    if (eig.values[j] <= cutoff) continue;
    const Vec3 v = column(eig.vectors, j);
    x = x + (dot(v, mtb) / eig.values[j]) * v;
  }
  if (norm(x) == 0.0) return std::nullopt;
  return x;
}

// First component above noise is made positive.
Vec3 fix_sign(const Vec3& v) {
  for (double comp : v)
    if (std::abs(comp) > 1e-12) return comp < 0.0 ? (-1.0) * v : v;
  return v;
}

Mat3 jacobi_operator_for(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                         const FrameVector& xi) {
  return *curvature(algebra, conn, xi).jacobi_operator;
}

}  // namespace

std::vector<Vec3> geodesic_grid162() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts{{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
                          {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
                          {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : verts) v = normalized(v);
  std::vector<std::array<int, 3>> faces{
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int level = 0; level < 2; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
      verts.push_back(normalized(verts[std::size_t(a)] + verts[std::size_t(b)]));
      const int idx = int(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  return verts;
}

AKStructure detect_structure(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                             const CurvaturePack& /*pack*/, const DetectOptions& opts) {
  if (max_abs(algebra.metric() - identity3()) > 1e-12)
    throw NoStructure("detect_structure: requires an orthonormal frame");

  const double scale = 1.0 + algebra.max_structure_constant();
  std::vector<Vec3> seeds;
  if (auto s = linear_seed(conn)) {
    seeds.push_back(*s);
    seeds.push_back(normalized(*s));
  }
  for (const Vec3& v : geodesic_grid162()) seeds.push_back(v);

  Vec3 best{};
  double best_cost = std::numeric_limits<double>::infinity();
  for (const Vec3& seed : seeds) {
    const Vec3 x = refine(conn, seed);
    const double cost = residual_norm(shape_residual(conn, x));
    if (cost < best_cost) {
      best = x;
      best_cost = cost;
    }
  }
  if (!(best_cost <= opts.tol * scale)) {
    std::ostringstream msg;
    msg << "no unit vector satisfies the almost Kenmotsu shape; best residual " << best_cost;
    throw NoStructure(msg.str());
  }

  AKStructure ak;
  ak.detection_residual = best_cost;
  const Vec3 xi = normalized(best);
  ak.xi = {xi};
  ak.eta = algebra.metric() * xi;
  ak.phi = cross_matrix(xi);
  const Mat3 ad_xi = ad_matrix(algebra, ak.xi);
  // (L_xi phi) Y = [xi, phi Y] - phi [xi, Y]
  ak.h_op = 0.5 * (ad_xi * ak.phi - ak.phi * ad_xi);
  ak.lambda = std::sqrt(std::max(0.0, trace(ak.h_op * ak.h_op) / 2.0));
  ak.kenmotsu = ak.lambda <= opts.kenmotsu_tol * scale;

  Vec3 e{};
  if (ak.kenmotsu) {
    ak.lambda = 0.0;
    double best_len = -1.0;
    for (std::size_t i = 0; i < kDim; ++i) {
      const Vec3 unit = FrameVector::basis(i).components;
      const Vec3 proj = unit - dot(unit, xi) * xi;
      if (norm(proj) > best_len + 1e-12) {
        best_len = norm(proj);
        e = proj;
      }
    }
    e = fix_sign(normalized(e));
  } else {
    const SymEigen3 eig = sym_eigen3(ak.h_op);
    e = fix_sign(column(eig.vectors, 2));
  }
  const Vec3 phie = ak.phi * e;
  ak.adapted_frame = {FrameVector{xi}, FrameVector{e}, FrameVector{phie}};

  const Vec3 nabla_e_e = conn.along({e}) * e;
  const Vec3 nabla_phie_e = conn.along({phie}) * e;
  ak.b = -dot(nabla_e_e, phie) + 0.0;  // no negative zero in reports
  ak.c = dot(nabla_phie_e, phie);
  ak.f = ak.b * ak.b + ak.c * ak.c + 2.0;
  return ak;
}

Mat3 nabla_xi_h(const ConnectionTable& conn, const AKStructure& ak) {
  const Mat3 n = conn.along(ak.xi);
  return n * ak.h_op - ak.h_op * n;
}

HParallel check_h_parallel(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                           const AKStructure& ak, double tol) {
  const Mat3 lhs = nabla_xi_h(conn, ak);
  const Mat3 l = jacobi_operator_for(algebra, conn, ak.xi);
  const Mat3& phi = ak.phi;
  const Mat3& h = ak.h_op;
  const Mat3 rhs = (-1.0) * phi - 2.0 * h - phi * h * h - phi * l;
  HParallel out{};
  out.nabla_xi_h = max_abs(lhs);
  out.identity_rhs = max_abs(rhs);
  out.disagreement = max_abs(lhs - rhs);
  out.residual = std::max({out.nabla_xi_h, out.identity_rhs, out.disagreement});
  out.holds = out.residual <= tol;
  return out;
}

std::vector<InvariantCheck> check_invariants(const MetricLieAlgebra3& algebra,
                                             const ConnectionTable& conn,
                                             const AKStructure& ak, double tol) {
  std::vector<InvariantCheck> out;
  auto add = [&](std::string name, double residual) {
    out.push_back({std::move(name), residual, residual <= tol});
  };
  const Mat3& g = algebra.metric();
  const Mat3& phi = ak.phi;
  const Mat3& h = ak.h_op;
  const Vec3& xi = ak.xi.components;
  const Mat3 eta_xi = outer(xi, ak.eta);  // X -> eta(X) xi
  const Mat3 id = identity3();

  add("phi_squared", max_abs(phi * phi - (eta_xi - id)));
  add("eta_of_xi", std::abs(dot(ak.eta, xi) - 1.0));
  add("phi_xi", max_abs(phi * xi));
  add("eta_phi", max_abs(transpose(phi) * ak.eta));
  add("phi_metric", max_abs(transpose(phi) * g * phi - (g - outer(ak.eta, ak.eta))));
  add("h_xi", max_abs(h * xi));
  add("h_trace", std::abs(trace(h)));
  add("h_trace_phi", std::abs(trace(h * phi)));
  add("h_phi_anticommute", max_abs(h * phi + phi * h));
  add("h_symmetric", max_abs(g * h - transpose(g * h)));
  add("nabla_xi_shape", max_abs(nabla_of(conn, xi) - (id - eta_xi - phi * h)));
  add("nabla_xi_xi", max_abs(nabla_of(conn, xi) * xi));

  const HParallel hp = check_h_parallel(algebra, conn, ak, tol);
  add("nabla_xi_h", hp.nabla_xi_h);
  add("nabla_xi_h_identity", hp.disagreement);

  const Vec3& e = ak.adapted_frame[1].components;
  const Vec3& phie = ak.adapted_frame[2].components;
  add("h_e_eigen", max_abs(h * e - ak.lambda * e));
  add("h_phie_eigen", max_abs(h * phie + ak.lambda * phie));

  // Invariant forms: d eta(X,Y) = -eta([X,Y]).
  double d_eta = 0.0;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = i + 1; j < kDim; ++j) {
      const FrameVector br = bracket(algebra, FrameVector::basis(i), FrameVector::basis(j));
      d_eta = std::max(d_eta, std::abs(dot(ak.eta, br.components)));
    }
  add("d_eta", d_eta);

  // Phi(X,Y) = g(X, phi Y).
  const auto big_phi = [&](const Vec3& x, const Vec3& y) { return dot(x, g * (phi * y)); };
  const auto br = [&](std::size_t i, std::size_t j) {
    return bracket(algebra, FrameVector::basis(i), FrameVector::basis(j)).components;
  };
  const Vec3 e0 = FrameVector::basis(0).components;
  const Vec3 e1 = FrameVector::basis(1).components;
  const Vec3 e2 = FrameVector::basis(2).components;
  const double d_big_phi = -big_phi(br(0, 1), e2) + big_phi(br(0, 2), e1) - big_phi(br(1, 2), e0);
  const double wedge = ak.eta[0] * big_phi(e1, e2) + ak.eta[1] * big_phi(e2, e0) +
                       ak.eta[2] * big_phi(e0, e1);
  add("d_Phi", std::abs(d_big_phi - 2.0 * wedge));
  return out;
}

SymBilinear in_adapted_frame(const AKStructure& ak, const SymBilinear& t) {
  const Mat3 f = ak.frame_matrix();
  return SymBilinear(transpose(f) * t.matrix() * f);
}

SymBilinear ricci_closed_form(const AKStructure& ak) {
  const double l = ak.lambda;
  const double b = ak.b;
  const double c = ak.c;
  const double f = ak.f;
  // Q xi = -2(l^2+1) xi - 2 l b e - 2 l c phi e
  // Q e = -2 l b xi - f e + 2 l phi e
  // Q phi e = -2 l c xi + 2 l e - f phi e
  Mat3 s{};
  s[0][0] = -2.0 * (l * l + 1.0);
  s[0][1] = s[1][0] = -2.0 * l * b;
  s[0][2] = s[2][0] = -2.0 * l * c;
  s[1][1] = -f;
  s[1][2] = s[2][1] = 2.0 * l;
  s[2][2] = -f;
  return SymBilinear(s);
}

XiEigenAnalysis xi_eigenvector_analysis(const MetricLieAlgebra3& algebra,
                                        const AKStructure& ak, const CurvaturePack& pack,
                                        double tol) {
  if (ak.kenmotsu || !(ak.lambda > 0.0))
    throw std::invalid_argument("xi_eigenvector_analysis: requires a non-Kenmotsu structure");
  const SymBilinear s = in_adapted_frame(ak, pack.ricci);
  XiEigenAnalysis out;
  out.s_xi_e = s(0, 1);
  out.s_xi_phie = s(0, 2);
  out.f = ak.f;
  out.is_eigenvector = std::abs(out.s_xi_e) <= tol && std::abs(out.s_xi_phie) <= tol;
  out.forced_b_zero = std::abs(ak.b) <= tol;
  out.forced_c_zero = std::abs(ak.c) <= tol;
  out.forced_f_two = std::abs(ak.f - 2.0) <= tol;
  if (out.is_eigenvector && !(out.forced_b_zero && out.forced_c_zero)) {
    std::ostringstream msg;
    msg << "xi is a Ricci eigenvector but (b, c) = (" << ak.b << ", " << ak.c << ")";
    throw InconsistentStructure(msg.str());
  }

  // Brackets in the adapted frame (orthonormal, so F^{-1} = F^T).
  const Mat3 ft = transpose(ak.frame_matrix());
  const auto adapted_bracket = [&](std::size_t a, std::size_t b) {
    return ft * bracket(algebra, ak.adapted_frame[a], ak.adapted_frame[b]).components;
  };
  const double l = ak.lambda;
  const double mismatch =
      std::max({max_abs(adapted_bracket(1, 0) - Vec3{0.0, 1.0, -l}),
                max_abs(adapted_bracket(1, 2) - Vec3{0.0, 0.0, 0.0}),
                max_abs(adapted_bracket(2, 0) - Vec3{0.0, -l, 1.0})});
  out.reduced_brackets_match = mismatch <= tol;
  return out;
}

}  // namespace akc
