#pragma once

// Fields of Lagrangian data over a chart, and the numerical check of the
// three compatibility conditions an abstract (g, alpha) pair must satisfy to
// come from a Lagrangian immersion:
//   (i)   g(alpha(X,Y), Z) totally symmetric,
//   (ii)  (nabla alpha)(X,Y,Z) totally symmetric,
//   (iii) R(X,Y)Z = c (X ^ Y) Z + alpha(alpha(Y,Z),X) - alpha(alpha(X,Z),Y),
//         with (X ^ Y) Z = <Y,Z> X - <X,Z> Y.
// Condition (iii) is checked as the residual between the intrinsic curvature
// and gauss_curvature() of the symmetrized cubic form.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "chendelta/cubic_form.hpp"
#include "chendelta/error.hpp"
#include "chendelta/frame_core.hpp"
#include "chendelta/numdiff.hpp"

namespace chendelta {

// Axis-aligned box in chart coordinates.
struct ChartBox {
  VectorXd lo;
  VectorXd hi;

  double diameter() const { return (hi - lo).norm(); }
  bool contains(const VectorXd& x, double margin = 0.0) const {
    return x.size() == lo.size() &&
           ((x.array() - margin) >= lo.array()).all() &&
           ((x.array() + margin) <= hi.array()).all();
  }
};

// A frame-indexed rank-3 array flattened to a vector so finite differences
// can act on it directly: entry (k, i, j) sits at (k*n + i)*n + j.
using FrameTensor = VectorXd;

inline std::size_t ft(int n, int k, int i, int j) {
  return (std::size_t(k) * n + i) * n + j;
}

// Smooth frame X_1..X_n on a chart together with a metric and a TM-valued
// symmetric bilinear form alpha, all expressed in that frame.
struct CubicField {
  int n = 0;
  ChartBox domain;
  // Columns are X_i written in chart coordinates.
  std::function<MatrixXd(const VectorXd&)> chart_frame;
  // g(X_i, X_j).
  std::function<MatrixXd(const VectorXd&)> gram;
  // alpha(X_i, X_j) = sum_k a(k, i, j) X_k.
  std::function<FrameTensor(const VectorXd&)> alpha;
  // [X_i, X_j] = sum_k c(k, i, j) X_k. When empty, brackets are obtained by
  // differentiating chart_frame.
  std::function<FrameTensor(const VectorXd&)> brackets;
  // Finite-difference step in chart coordinates; <= 0 selects 1e-4 of the
  // domain diameter.
  double step = 0.0;

  double fd_step() const { return step > 0.0 ? step : 1e-4 * domain.diameter(); }
};

struct FieldPointData {
  MetricFrame frame;
  Tensor3 raw;  // raw(A,B,C) = g(alpha(e_B, e_C), e_A), orthonormal frame
  CubicForm h;  // symmetrized raw
};

inline FieldPointData field_point_data(const CubicField& field,
                                       const VectorXd& x) {
  if (!field.domain.contains(x)) throw DomainError("chart point outside domain");
  const int n = field.n;
  const MatrixXd g = field.gram(x);
  MetricFrame mf = gram_schmidt(g);
  const MatrixXd& F = mf.frame;
  const FrameTensor a = field.alpha(x);
  // alpha lowered: al(m, i, j) = g(alpha(X_i, X_j), X_m)
  Tensor3 low(n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += a[ft(n, k, i, j)] * g(k, m);
        low(m, i, j) = s;
      }
  Tensor3 raw(n);
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int C = 0; C < n; ++C) {
        double s = 0.0;
        for (int m = 0; m < n; ++m)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              s += F(m, A) * F(i, B) * F(j, C) * low(m, i, j);
        raw(A, B, C) = s;
      }
  CubicForm h = CubicForm::symmetrized(raw);
  return {std::move(mf), std::move(raw), std::move(h)};
}

struct CompatibilityReport {
  double cubic_symmetry = 0.0;   // (i)
  double codazzi_symmetry = 0.0; // (ii)
  double gauss_residual = 0.0;   // (iii)
  double intrinsic_tau = 0.0;    // tau of the intrinsic curvature (last point)
  int points = 0;
};

namespace detail {

inline FrameTensor field_brackets(const CubicField& f, const VectorXd& y,
                                  double h) {
  if (f.brackets) return f.brackets(y);
  const int n = f.n;
  const MatrixXd X = f.chart_frame(y);
  const Eigen::PartialPivLU<MatrixXd> lu(X);
  FrameTensor c = FrameTensor::Zero(std::size_t(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto col = [&f](int idx) {
        return [&f, idx](const VectorXd& z) -> VectorXd {
          return f.chart_frame(z).col(idx);
        };
      };
      const VectorXd br = numdiff::directional(col(j), y, X.col(i), h) -
                          numdiff::directional(col(i), y, X.col(j), h);
      const VectorXd coeff = lu.solve(br);
      for (int k = 0; k < n; ++k) c[ft(n, k, i, j)] = coeff[k];
    }
  return c;
}

// Connection coefficients nabla_{X_i} X_j = sum_m G(m, i, j) X_m from the
// Koszul formula.
inline FrameTensor connection(const CubicField& f, const VectorXd& y,
                              double h) {
  const int n = f.n;
  const MatrixXd X = f.chart_frame(y);
  const MatrixXd g = f.gram(y);
  const MatrixXd ginv = g.inverse();
  std::vector<MatrixXd> dg(n);  // dg[i](j,k) = X_i(g_jk)
  for (int i = 0; i < n; ++i)
    dg[i] = numdiff::directional(f.gram, y, VectorXd(X.col(i)), h);
  const FrameTensor c = field_brackets(f, y, h);
  auto cg = [&](int i, int j, int k) {  // g([X_i, X_j], X_k)
    double s = 0.0;
    for (int m = 0; m < n; ++m) s += c[ft(n, m, i, j)] * g(m, k);
    return s;
  };
  FrameTensor G = FrameTensor::Zero(std::size_t(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      VectorXd K(n);
      for (int k = 0; k < n; ++k) {
        K[k] = 0.5 * (dg[i](j, k) + dg[j](i, k) - dg[k](i, j) + cg(i, j, k) -
                      cg(i, k, j) - cg(j, k, i));
      }
      const VectorXd Gm = ginv * K;
      for (int m = 0; m < n; ++m) G[ft(n, m, i, j)] = Gm[m];
    }
  return G;
}

}  // namespace detail

// Evaluates the three compatibility deviations at one chart point, all in
// orthonormal-frame components.
inline CompatibilityReport compatibility_at(const CubicField& f, double c,
                                            const VectorXd& x) {
  const int n = f.n;
  const double h = f.fd_step();
  if (!(h > 1e-12)) throw DomainError("differentiation step underflow");
  if (!f.domain.contains(x, 2.0 * h)) {
    throw DomainError("chart point outside domain (needs a margin of two steps)");
  }
  const MatrixXd X = f.chart_frame(x);
  const MatrixXd g = f.gram(x);
  const MatrixXd F = gram_schmidt(g).frame;
  const FrameTensor G = detail::connection(f, x, h);
  const FrameTensor br = detail::field_brackets(f, x, h);
  auto conn = [&f, h](const VectorXd& y) { return detail::connection(f, y, h); };

  std::vector<FrameTensor> dG(n), da(n);
  for (int i = 0; i < n; ++i) {
    dG[i] = numdiff::directional(conn, x, VectorXd(X.col(i)), h);
    da[i] = numdiff::directional(f.alpha, x, VectorXd(X.col(i)), h);
  }
  const FrameTensor a = f.alpha(x);

  // Intrinsic curvature, frame components: Rup(p, i, j, l) is the X_p
  // component of R(X_i, X_j) X_l.
  auto idx4 = [n](int a1, int a2, int a3, int a4) {
    return ((std::size_t(a1) * n + a2) * n + a3) * n + a4;
  };
  std::vector<double> Rlow(std::size_t(n) * n * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        VectorXd up(n);
        for (int p = 0; p < n; ++p) {
          double s = dG[i][ft(n, p, j, l)] - dG[j][ft(n, p, i, l)];
          for (int m = 0; m < n; ++m) {
            s += G[ft(n, m, j, l)] * G[ft(n, p, i, m)] -
                 G[ft(n, m, i, l)] * G[ft(n, p, j, m)] -
                 br[ft(n, m, i, j)] * G[ft(n, p, m, l)];
          }
          up[p] = s;
        }
        const VectorXd lowered = g * up;
        for (int m = 0; m < n; ++m) Rlow[idx4(i, j, l, m)] = lowered[m];
      }

  // Covariant derivative of alpha: D(p, i, j, l) is the X_p component of
  // (nabla_{X_i} alpha)(X_j, X_l).
  std::vector<double> Dlow(std::size_t(n) * n * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        VectorXd up(n);
        for (int p = 0; p < n; ++p) {
          double s = da[i][ft(n, p, j, l)];
          for (int m = 0; m < n; ++m) {
            s += a[ft(n, m, j, l)] * G[ft(n, p, i, m)] -
                 G[ft(n, m, i, j)] * a[ft(n, p, m, l)] -
                 G[ft(n, m, i, l)] * a[ft(n, p, j, m)];
          }
          up[p] = s;
        }
        const VectorXd lowered = g * up;
        for (int m = 0; m < n; ++m) Dlow[idx4(i, j, l, m)] = lowered[m];
      }

  auto to_orthonormal = [&](const std::vector<double>& T) {
    std::vector<double> cur = T, next(T.size());
    const std::size_t n1 = n, st[4] = {n1 * n1 * n1, n1 * n1, n1, 1};
    for (int slot = 0; slot < 4; ++slot) {
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t id = 0; id < cur.size(); ++id) {
        const std::size_t d = (id / st[slot]) % n1;
        const std::size_t base = id - d * st[slot];
        for (std::size_t A = 0; A < n1; ++A)
          next[base + A * st[slot]] += cur[id] * F(int(d), int(A));
      }
      cur.swap(next);
    }
    return cur;
  };

  const CurvatureTensor Rint(n, to_orthonormal(Rlow));
  const std::vector<double> Don = to_orthonormal(Dlow);

  CompatibilityReport rep;
  rep.points = 1;
  const FieldPointData pd = field_point_data(f, x);
  rep.cubic_symmetry = symmetry_deviation(pd.raw);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          const double v = Don[idx4(i, j, l, m)];
          rep.codazzi_symmetry =
              std::max({rep.codazzi_symmetry,
                        std::abs(v - Don[idx4(j, i, l, m)]),
                        std::abs(v - Don[idx4(i, l, j, m)]),
                        std::abs(v - Don[idx4(l, j, i, m)])});
        }
  const CurvatureTensor Rg = gauss_curvature(n, c, pd.h.dense());
  rep.gauss_residual = Rint.max_abs_difference(Rg);
  rep.intrinsic_tau = scalar_tau(Rint);
  return rep;
}

inline CompatibilityReport compatibility_report(
    const CubicField& f, double c, std::span<const VectorXd> points) {
  CompatibilityReport total;
  for (const auto& x : points) {
    const CompatibilityReport r = compatibility_at(f, c, x);
    total.cubic_symmetry = std::max(total.cubic_symmetry, r.cubic_symmetry);
    total.codazzi_symmetry = std::max(total.codazzi_symmetry, r.codazzi_symmetry);
    total.gauss_residual = std::max(total.gauss_residual, r.gauss_residual);
    total.intrinsic_tau = r.intrinsic_tau;
    ++total.points;
  }
  return total;
}

// Flat chart on a box with coordinate vector fields and constant frame
// components of alpha. `alpha` need not be symmetric.
inline CubicField constant_flat_field(int n, const FrameTensor& alpha,
                                      ChartBox box) {
  CubicField f;
  f.n = n;
  f.domain = std::move(box);
  f.chart_frame = [n](const VectorXd&) { return MatrixXd::Identity(n, n); };
  f.gram = [n](const VectorXd&) { return MatrixXd::Identity(n, n); };
  f.alpha = [alpha](const VectorXd&) { return alpha; };
  f.brackets = [n](const VectorXd&) {
    return FrameTensor::Zero(std::size_t(n) * n * n).eval();
  };
  return f;
}

// Frame components a(k, i, j) of a totally symmetric cubic form taken in an
// orthonormal frame (alpha(e_i, e_j) = sum_k h[k][i][j] e_k).
inline FrameTensor frame_tensor_from_cubic(const CubicForm& h) {
  const int n = h.dim();
  const Tensor3 d = h.dense();
  FrameTensor a(std::size_t(n) * n * n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[ft(n, k, i, j)] = d(k, i, j);
  return a;
}

}  // namespace chendelta
