#pragma once

// Parametric immersions into C^n (flat) or the unit sphere of C^(n+1), and
// the pointwise Lagrangian data they induce.
//
// Ambient vectors are complex; the real inner product is
// <u, v> = Re(sum conj(u_i) v_i) and J is multiplication by i. For a sphere
// chart the data are those of the Hopf projection into CP^n(4), computed
// from the horizontal immersion itself:
//   g_ab = <dL_a, dL_b>,   h(A, B, C) = <d^2 L(e_B, e_C), i dL(e_A)>.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chendelta/cubic_field.hpp"
#include "chendelta/cubic_form.hpp"
#include "chendelta/error.hpp"
#include "chendelta/frame_core.hpp"
#include "chendelta/numdiff.hpp"

namespace chendelta {

using Eigen::VectorXcd;
using cplx = std::complex<double>;

enum class AmbientKind { FLAT, SPHERE };

struct ImmersionChart {
  int n = 0;
  AmbientKind kind = AmbientKind::FLAT;
  ChartBox domain;
  std::function<VectorXcd(const VectorXd&)> eval;
  // Per-axis finite-difference steps; empty selects numdiff::kFirstStep.
  VectorXd steps;
  std::string name;

  double step(int axis) const {
    return steps.size() ? steps[axis] : numdiff::kFirstStep;
  }
};

inline double real_inner(const VectorXcd& u, const VectorXcd& v) {
  return u.dot(v).real();  // Eigen's dot conjugates the first argument
}

struct ChartJet {
  VectorXcd value;
  std::vector<VectorXcd> first;   // dL/dx_a
  std::vector<VectorXcd> second;  // d^2 L/dx_a dx_b, row-major a*n+b
};

inline ChartJet chart_jet(const ImmersionChart& ch, const VectorXd& x) {
  const int n = ch.n;
  if (x.size() != n) throw InvalidArgument("chart point has wrong dimension");
  double margin = 0.0;
  for (int a = 0; a < n; ++a) margin = std::max(margin, 2.0 * ch.step(a));
  if (!ch.domain.contains(x, margin)) {
    throw DomainError("chart point outside the domain of " + ch.name +
                      " (needs a margin of two steps)");
  }
  ChartJet j;
  j.value = ch.eval(x);
  j.first.resize(n);
  j.second.resize(std::size_t(n) * n);
  for (int a = 0; a < n; ++a) {
    const VectorXd ea = ch.step(a) * VectorXd::Unit(n, a);
    j.first[a] = (ch.eval(x + ea) - ch.eval(x - ea)) / (2.0 * ch.step(a));
  }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const VectorXd ea = ch.step(a) * VectorXd::Unit(n, a);
      const VectorXd eb = ch.step(b) * VectorXd::Unit(n, b);
      const VectorXcd v = (ch.eval(x + ea + eb) - ch.eval(x + ea - eb) -
                           ch.eval(x - ea + eb) + ch.eval(x - ea - eb)) /
                          (4.0 * ch.step(a) * ch.step(b));
      j.second[std::size_t(a) * n + b] = v;
      j.second[std::size_t(b) * n + a] = v;
    }
  return j;
}

inline MatrixXd induced_gram(const ChartJet& j) {
  const int n = static_cast<int>(j.first.size());
  MatrixXd g(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) g(a, b) = g(b, a) = real_inner(j.first[a], j.first[b]);
  return g;
}

// max |omega(dL_a, dL_b)| = max |<i dL_a, dL_b>|.
inline double omega_pullback(const ImmersionChart& ch, const VectorXd& x) {
  const ChartJet j = chart_jet(ch, x);
  double worst = 0.0;
  for (int a = 0; a < ch.n; ++a)
    for (int b = 0; b < ch.n; ++b)
      worst = std::max(worst, std::abs(real_inner(cplx(0, 1) * j.first[a], j.first[b])));
  return worst;
}

// max |<dL_a, i L>| for a sphere chart.
inline double horizontality_residual(const ImmersionChart& ch, const VectorXd& x) {
  const ChartJet j = chart_jet(ch, x);
  double worst = 0.0;
  const VectorXcd iL = cplx(0, 1) * j.value;
  for (int a = 0; a < ch.n; ++a) worst = std::max(worst, std::abs(real_inner(j.first[a], iL)));
  return worst;
}

struct InducedData {
  LagrangianPointData data;
  MetricFrame frame;            // Gram-Schmidt frame of the induced metric
  double symmetry_deviation;    // of the raw coefficients before symmetrizing
};

namespace detail {

inline InducedData induced_from_jet(const ChartJet& j, double c, const std::string& tag,
                                    double sym_tol) {
  const int n = static_cast<int>(j.first.size());
  const MatrixXd g = induced_gram(j);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
  if (es.eigenvalues().minCoeff() < 1e-10) {
    throw InvalidArgument("degenerate induced metric (min eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
  MetricFrame mf = gram_schmidt(g);
  const MatrixXd& F = mf.frame;
  std::vector<VectorXcd> e(n);
  for (int A = 0; A < n; ++A) {
    e[A] = VectorXcd::Zero(j.value.size());
    for (int a = 0; a < n; ++a) e[A] += F(a, A) * j.first[a];
  }
  // Second derivatives along frame vectors.
  Tensor3 raw(n);
  for (int B = 0; B < n; ++B)
    for (int C = 0; C < n; ++C) {
      VectorXcd dd = VectorXcd::Zero(j.value.size());
      for (int b = 0; b < n; ++b)
        for (int cc = 0; cc < n; ++cc) dd += F(b, B) * F(cc, C) * j.second[std::size_t(b) * n + cc];
      for (int A = 0; A < n; ++A) raw(A, B, C) = real_inner(dd, cplx(0, 1) * e[A]);
    }
  const double sym = symmetry_deviation(raw);
  if (sym > sym_tol) {
    throw ConsistencyError("induced cubic coefficients are not totally symmetric", sym);
  }
  return InducedData{LagrangianPointData(c, CubicForm::symmetrized(raw), tag), std::move(mf),
                     sym};
}

}  // namespace detail

inline InducedData induced_data_flat(const ImmersionChart& ch, const VectorXd& x,
                                     double sym_tol = 1e-5) {
  if (ch.kind != AmbientKind::FLAT) throw InvalidArgument("induced_data_flat needs a FLAT chart");
  return detail::induced_from_jet(chart_jet(ch, x), 0.0, ch.name, sym_tol);
}

inline InducedData induced_data_horizontal(const ImmersionChart& ch, const VectorXd& x,
                                           double horizontal_tol = 1e-6, double sym_tol = 1e-4) {
  if (ch.kind != AmbientKind::SPHERE) {
    throw InvalidArgument("induced_data_horizontal needs a SPHERE chart");
  }
  const ChartJet j = chart_jet(ch, x);
  const double unit = std::abs(j.value.norm() - 1.0);
  if (unit > 1e-10) throw ConsistencyError("sphere chart value is not a unit vector", unit);
  double horiz = 0.0;
  const VectorXcd iL = cplx(0, 1) * j.value;
  for (int a = 0; a < ch.n; ++a) horiz = std::max(horiz, std::abs(real_inner(j.first[a], iL)));
  if (horiz > horizontal_tol) throw ConsistencyError("chart is not horizontal", horiz);
  return detail::induced_from_jet(j, 1.0, ch.name, sym_tol);
}

// Scalar potential F on R^n with optional analytic gradient.
struct GraphPotential {
  int n = 0;
  std::function<double(const VectorXd&)> value;
  std::function<VectorXd(const VectorXd&)> gradient;
  // Third partial derivatives, when known in closed form.
  std::function<Tensor3(const VectorXd&)> third;
};

// L(x) = x + i grad F(x), Lagrangian for every F.
inline ImmersionChart graph_immersion(const GraphPotential& F, ChartBox domain,
                                      std::string name = "graph") {
  ImmersionChart ch;
  ch.n = F.n;
  ch.kind = AmbientKind::FLAT;
  ch.domain = std::move(domain);
  ch.name = std::move(name);
  std::function<VectorXd(const VectorXd&)> grad = F.gradient;
  if (!grad) {
    // Nested differencing of the value.
    grad = [F](const VectorXd& x) {
      VectorXd g(F.n);
      for (int a = 0; a < F.n; ++a) g[a] = numdiff::partial(F.value, x, a, 1e-3);
      return g;
    };
  }
  ch.eval = [grad](const VectorXd& x) -> VectorXcd {
    const VectorXd g = grad(x);
    VectorXcd z(x.size());
    for (int a = 0; a < x.size(); ++a) z[a] = cplx(x[a], g[a]);
    return z;
  };
  return ch;
}

// The cubic potential
//   F = sum_i 3 lambda / (2 (2 + n_i)) sum_{a in Delta_i} x_a^2 x_{N+1}
//       + (lambda / 2) sum_{r >= N+1} x_{N+1} x_r^2,
// whose graph realizes the improved-inequality equality pattern at 0.
// Blocks are consecutive coordinates in tuple order; 0-based index N is
// the coordinate x_{N+1}.
inline GraphPotential equality_graph_potential(const std::vector<int>& parts, int n,
                                               double lambda) {
  int N = 0;
  for (int p : parts) N += p;
  if (N >= n) throw InvalidArgument("equality graph potential needs N < n");
  std::vector<double> coef(n, 0.0);  // coefficient of x_a^2 x_N, a < N
  int start = 0;
  for (int p : parts) {
    for (int a = start; a < start + p; ++a) coef[a] = 3.0 * lambda / (2.0 * (2.0 + p));
    start += p;
  }
  GraphPotential F;
  F.n = n;
  F.value = [=](const VectorXd& x) {
    double s = 0.0;
    for (int a = 0; a < N; ++a) s += coef[a] * x[a] * x[a] * x[N];
    for (int r = N; r < n; ++r) s += 0.5 * lambda * x[N] * x[r] * x[r];
    return s;
  };
  F.gradient = [=](const VectorXd& x) {
    VectorXd g = VectorXd::Zero(n);
    for (int a = 0; a < N; ++a) {
      g[a] = 2.0 * coef[a] * x[a] * x[N];
      g[N] += coef[a] * x[a] * x[a];
    }
    for (int r = N + 1; r < n; ++r) {
      g[N] += 0.5 * lambda * x[r] * x[r];
      g[r] = lambda * x[N] * x[r];
    }
    g[N] += 1.5 * lambda * x[N] * x[N];
    return g;
  };
  F.third = [=](const VectorXd&) {
    Tensor3 t(n);
    auto put = [&t](int a, int b, int c, double v) {
      t(a, b, c) = t(a, c, b) = t(b, a, c) = t(b, c, a) = t(c, a, b) = t(c, b, a) = v;
    };
    for (int a = 0; a < N; ++a) put(a, a, N, 2.0 * coef[a]);
    put(N, N, N, 3.0 * lambda);
    for (int r = N + 1; r < n; ++r) put(N, r, r, lambda);
    return t;
  };
  return F;
}

// Field of (g, alpha) on a flat chart in coordinate vector fields, for the
// intrinsic compatibility checks: g_ab = <dL_a, dL_b> and
// g(alpha(d_a, d_b), d_m) = <d^2 L_ab, i dL_m>.
inline CubicField chart_cubic_field(const ImmersionChart& ch, double step = 1e-3) {
  const int n = ch.n;
  CubicField f;
  f.n = n;
  f.domain = ch.domain;
  f.step = step;
  f.chart_frame = [n](const VectorXd&) { return MatrixXd::Identity(n, n); };
  f.gram = [ch](const VectorXd& x) { return induced_gram(chart_jet(ch, x)); };
  f.alpha = [ch, n](const VectorXd& x) {
    const ChartJet j = chart_jet(ch, x);
    const MatrixXd ginv = induced_gram(j).inverse();
    FrameTensor a = FrameTensor::Zero(std::size_t(n) * n * n);
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj) {
        VectorXd low(n);
        for (int m = 0; m < n; ++m)
          low[m] = real_inner(j.second[std::size_t(i) * n + jj], cplx(0, 1) * j.first[m]);
        const VectorXd up = ginv * low;
        for (int k = 0; k < n; ++k) a[ft(n, k, i, jj)] = up[k];
      }
    return a;
  };
  f.brackets = [n](const VectorXd&) { return FrameTensor::Zero(std::size_t(n) * n * n).eval(); };
  return f;
}

}  // namespace chendelta
