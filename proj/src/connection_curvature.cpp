#include "akcotton/connection_curvature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "akcotton/errors.hpp"

namespace akc {

Mat3 ConnectionTable::along(const FrameVector& x) const {
  Mat3 m{};
  for (std::size_t i = 0; i < kDim; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) m[k][j] += x[i] * gamma(i, j, k);
  }
  return m;
}

ConnectionTable levi_civita(const MetricLieAlgebra3& algebra) {
  const Mat3& g = algebra.metric();
  const double scale = max_abs(g);
  const double d = det(g);
  if (!(scale > 0.0) || !(std::abs(d) > 1e-14 * scale * scale * scale))
    throw SingularMetric("levi_civita: metric is not invertible");
  const Mat3 ginv = inverse(g);

  // lowered[a][b][z] = g([e_a, e_b], e_z)
  Tensor3 lowered;
  for (std::size_t a = 0; a < kDim; ++a)
    for (std::size_t b = 0; b < kDim; ++b)
      for (std::size_t z = 0; z < kDim; ++z) {
        double s = 0.0;
        for (std::size_t m = 0; m < kDim; ++m) s += algebra.c(a, b, m) * g[m][z];
        lowered(a, b, z) = s;
      }

  ConnectionTable conn;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j) {
      Vec3 koszul{};  // g(nabla_{e_i} e_j, e_l)
      for (std::size_t l = 0; l < kDim; ++l)
        koszul[l] = 0.5 * (lowered(i, j, l) - lowered(j, l, i) + lowered(l, i, j));
      for (std::size_t k = 0; k < kDim; ++k) {
        double s = 0.0;
        for (std::size_t l = 0; l < kDim; ++l) s += koszul[l] * ginv[l][k];
        conn.gamma(i, j, k) = s;
      }
    }
  return conn;
}

CurvaturePack curvature(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                        const std::optional<FrameVector>& reeb) {
  CurvaturePack pack;
  const Tensor3& gam = conn.gamma;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k)
        for (std::size_t n = 0; n < kDim; ++n) {
          double s = 0.0;
          for (std::size_t m = 0; m < kDim; ++m) {
            s += gam(j, k, m) * gam(i, m, n) - gam(i, k, m) * gam(j, m, n);
            s -= algebra.c(i, j, m) * gam(m, k, n);
          }
          pack.riemann[i][j][k][n] = s;
        }

  Mat3 s{};
  for (std::size_t x = 0; x < kDim; ++x)
    for (std::size_t y = 0; y < kDim; ++y)
      for (std::size_t i = 0; i < kDim; ++i) s[x][y] += pack.riemann[i][x][y][i];
  pack.ricci = SymBilinear(s);
  pack.ricci_operator = inverse(algebra.metric()) * pack.ricci.matrix();
  pack.scalar = trace(pack.ricci_operator);

  if (reeb) {
    Mat3 l{};
    for (std::size_t j = 0; j < kDim; ++j) {
      const Vec3 col = riemann_apply(pack, FrameVector::basis(j).components, reeb->components,
                                     reeb->components);
      for (std::size_t k = 0; k < kDim; ++k) l[k][j] = col[k];
    }
    pack.jacobi_operator = l;
  }
  return pack;
}

Vec3 riemann_apply(const CurvaturePack& pack, const Vec3& x, const Vec3& y, const Vec3& z) {
  Vec3 r{};
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        const double w = x[i] * y[j] * z[k];
        if (w == 0.0) continue;
        for (std::size_t n = 0; n < kDim; ++n) r[n] += w * pack.riemann[i][j][k][n];
      }
  return r;
}

Tensor3 cov_deriv_sym2(const MetricLieAlgebra3& /*algebra*/, const ConnectionTable& conn,
                       const SymBilinear& t) {
  Tensor3 d;
  for (std::size_t i = 0; i < kDim; ++i)
    for (std::size_t j = 0; j < kDim; ++j)
      for (std::size_t k = 0; k < kDim; ++k) {
        double s = 0.0;
        for (std::size_t m = 0; m < kDim; ++m)
          s -= conn(i, j, m) * t(m, k) + conn(i, k, m) * t(j, m);
        d(i, j, k) = s;
      }
  return d;
}

RicciParallel ricci_parallel_check(const MetricLieAlgebra3& algebra, const ConnectionTable& conn,
                                   const CurvaturePack& pack, double tol) {
  const Tensor3 d = cov_deriv_sym2(algebra, conn, pack.ricci);
  double m = 0.0;
  for (const auto& slice : d.t) m = std::max(m, max_abs(slice));
  return {m <= tol, m};
}

Vec3 ricci_eigenvalues(const MetricLieAlgebra3& algebra, const CurvaturePack& pack) {
  Mat3 lower;
  if (!cholesky(algebra.metric(), lower))
    throw SingularMetric("ricci_eigenvalues: metric is not positive definite");
  const Mat3 linv = inverse(lower);
  return sym_eigen3(linv * pack.ricci.matrix() * transpose(linv)).values;
}

std::string to_string(GeometryClass::Kind kind) {
  switch (kind) {
    case GeometryClass::Kind::ConstantCurvature: return "ConstantCurvature";
    case GeometryClass::Kind::ProductH2xR: return "ProductH2xR";
    case GeometryClass::Kind::SymmetricOther: return "SymmetricOther";
    case GeometryClass::Kind::NotSymmetric: return "NotSymmetric";
  }
  return "Unknown";
}

std::string describe(const GeometryClass& cls) {
  std::ostringstream os;
  os << to_string(cls.kind);
  if (cls.kind == GeometryClass::Kind::ConstantCurvature ||
      cls.kind == GeometryClass::Kind::ProductH2xR)
    os << "(" << cls.curvature << ")";
  return os.str();
}

GeometryClass classify_geometry(const Vec3& eigenvalues, bool ricci_parallel, double rel_tol) {
  Vec3 ev = eigenvalues;
  std::sort(ev.begin(), ev.end());
  GeometryClass cls;
  cls.ricci_eigenvalues = ev;
  const double tol = rel_tol * std::max(1.0, max_abs(ev));
  const auto close = [tol](double a, double b) { return std::abs(a - b) <= tol; };

  // Einstein in dimension 3 means constant sectional curvature Ric/2.
  if (close(ev[0], ev[1]) && close(ev[1], ev[2])) {
    cls.kind = GeometryClass::Kind::ConstantCurvature;
    cls.curvature = (ev[0] + ev[1] + ev[2]) / 6.0;
    return cls;
  }
  if (!ricci_parallel) {
    cls.kind = GeometryClass::Kind::NotSymmetric;
    return cls;
  }
  const double k = 0.5 * (ev[0] + ev[1]);
  if (close(ev[0], ev[1]) && close(ev[2], 0.0) && k < 0.0 && !close(k, 0.0)) {
    cls.kind = GeometryClass::Kind::ProductH2xR;
    cls.curvature = k;
    return cls;
  }
  cls.kind = GeometryClass::Kind::SymmetricOther;
  return cls;
}

GeometryClass classify_geometry(const MetricLieAlgebra3& algebra, const CurvaturePack& pack,
                                bool ricci_parallel, double rel_tol) {
  return classify_geometry(ricci_eigenvalues(algebra, pack), ricci_parallel, rel_tol);
}

}  // namespace akc
