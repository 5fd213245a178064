#pragma once

// Independent reference values for delta in small dimensions.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "chendelta/delta_tuple.hpp"
#include "chendelta/error.hpp"
#include "chendelta/frame_core.hpp"

namespace chendelta {

// In dimension 3 every bivector is decomposable, so inf tau(L) over planes
// is the smallest eigenvalue of the curvature operator on bivectors.
inline double oracle_delta_dim3(const CurvatureTensor& R) {
  if (R.dim() != 3) throw InvalidArgument("oracle_delta_dim3 needs n = 3");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(bivector_operator(R));
  return scalar_tau(R) - es.eigenvalues().minCoeff();
}

namespace detail {

// Stack-allocated storage for the n <= 4 grid search.
using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 6, 1>;

// Unit vector of R^(d+1) from d hyperspherical angles.
inline SmallVec sphere_point(const double* ang, int d) {
  SmallVec u(d + 1);
  double s = 1.0;
  for (int i = 0; i < d; ++i) {
    u[i] = s * std::cos(ang[i]);
    s *= std::sin(ang[i]);
  }
  u[d] = s;
  return u;
}

// Orthonormal basis of span(cols) intersected with the orthogonal complement
// of the columns of V.
template <class A, class B>
SmallMat orthonormal_remainder(const A& cols, const B& V) {
  SmallMat out(cols.rows(), cols.cols());
  int k = 0;
  for (int j = 0; j < cols.cols(); ++j) {
    SmallVec v = cols.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < V.cols(); ++i) v -= V.col(i).dot(v) * V.col(i);
      for (int i = 0; i < k; ++i) v -= out.col(i).dot(v) * out.col(i);
    }
    const double nv = v.norm();
    if (nv > 1e-9) out.col(k++) = v / nv;
  }
  return out.leftCols(k);
}

// Calls visit(V) for a grid of r-dimensional subspaces of span(C)
// (orthonormal columns), V holding an orthonormal basis v_1..v_r with v_i in
// span(C_1..C_{m-r+i}). Each v_i ranges over a (m-r)-sphere sampled at angle
// midpoints (j + 1/2) pi / res, which covers it up to sign.
template <class Visit>
void visit_subspaces(const SmallMat& C, int r, int res, Visit&& visit) {
  const int m = static_cast<int>(C.cols());
  const int d = m - r;
  SmallMat V(C.rows(), r);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == r) {
      visit(static_cast<const SmallMat&>(V));
      return;
    }
    const SmallMat W = orthonormal_remainder(C.leftCols(d + i + 1), V.leftCols(i));
    double ang[4];
    int idx[4] = {0, 0, 0, 0};
    while (true) {
      for (int a = 0; a < d; ++a) ang[a] = (idx[a] + 0.5) * std::numbers::pi / res;
      V.col(i) = W * sphere_point(ang, d);
      self(self, i + 1);
      int a = d - 1;
      while (a >= 0 && ++idx[a] == res) idx[a--] = 0;
      if (a < 0) break;
    }
  };
  rec(rec, 0);
}

}  // namespace detail

// Brute-force minimum of sum tau(L_j) over a deterministic grid of
// configurations, for n <= 4. The grid minimum is at least the true
// infimum, so the returned delta is a lower bound on the true value,
// converging as the resolution grows.
inline double oracle_delta_grid(const CurvatureTensor& R, const DeltaTuple& t,
                                int resolution) {
  const int n = R.dim();
  if (n > 4) throw InvalidArgument("oracle_delta_grid is limited to n <= 4");
  if (t.n() != n) throw InvalidArgument("tuple dimension does not match tensor");
  if (resolution < 1) throw InvalidArgument("grid resolution must be >= 1");
  const auto& parts = t.parts();
  const MatrixXd M = bivector_operator(R);
  double best = std::numeric_limits<double>::infinity();

  auto tau_of = [&M, n](const detail::SmallMat& L) {
    double s = 0.0;
    detail::SmallVec w(n * (n - 1) / 2);
    for (int a = 0; a < L.cols(); ++a)
      for (int b = a + 1; b < L.cols(); ++b) {
        int I = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j, ++I) w[I] = L(i, a) * L(j, b) - L(j, a) * L(i, b);
        s += w.dot(M * w);
      }
    return s;
  };

  auto rec = [&](auto&& self, std::size_t blk, const detail::SmallMat& C, double acc) -> void {
    detail::visit_subspaces(C, parts[blk], resolution, [&](const detail::SmallMat& L) {
      const double v = acc + tau_of(L);
      if (blk + 1 == parts.size()) {
        best = std::min(best, v);
      } else {
        self(self, blk + 1, detail::orthonormal_remainder(C, L), v);
      }
    });
  };
  rec(rec, 0, detail::SmallMat::Identity(n, n), 0.0);
  return scalar_tau(R) - best;
}

}  // namespace chendelta
