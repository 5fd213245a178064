#pragma once

// Dense curvature algebra in orthonormal frames.
//
// Index and sign convention (used by every header in this library):
//
//   R(a, b, c, d) = <R(e_a, e_b) e_c, e_d>
//
// with R(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y]. Under this convention the
// sectional curvature of the plane spanned by orthonormal u, v is
// R(u, v, v, u), and the Gauss equation of a Lagrangian point with cubic form
// h and ambient holomorphic sectional curvature 4c reads
//
//   R(x, y, z, w) = sum_e (h[e][y][z] h[e][x][w] - h[e][x][z] h[e][y][w])
//                   + c (delta_xw delta_yz - delta_xz delta_yw).
//
// The scalar curvature tau is the sum of sectional curvatures over index pairs
// i < j (half of the trace of the Ricci tensor). The conventional scalar
// curvature is never exposed. Indices are 0-based in code and 1-based in files.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chendelta/error.hpp"

namespace chendelta {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Rank-4 curvature components in an orthonormal frame. Immutable once built.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(int n) : n_(n), data_(pow4(n), 0.0) {
    if (n < 2) throw InvalidArgument("curvature tensor needs dimension >= 2");
  }

  CurvatureTensor(int n, std::vector<double> components)
      : n_(n), data_(std::move(components)) {
    if (n < 2) throw InvalidArgument("curvature tensor needs dimension >= 2");
    if (data_.size() != pow4(n)) {
      throw InvalidArgument("curvature tensor expects n^4 components");
    }
  }

  // Builds R from a callable f(a, b, c, d) -> double.
  template <class Fn>
  static CurvatureTensor from_function(int n, Fn&& f) {
    std::vector<double> v(pow4(n));
    std::size_t k = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) v[k++] = f(a, b, c, d);
    return CurvatureTensor(n, std::move(v));
  }

  // Space form of constant sectional curvature c.
  static CurvatureTensor constant_curvature(int n, double c) {
    return from_function(n, [c](int a, int b, int cc, int d) {
      return c * (double(a == d && b == cc) - double(a == cc && b == d));
    });
  }

  int dim() const noexcept { return n_; }

  double operator()(int a, int b, int c, int d) const noexcept {
    return data_[((std::size_t(a) * n_ + b) * n_ + c) * n_ + d];
  }

  std::span<const double> components() const noexcept { return data_; }

  // Largest violation of the pair/antisymmetries and of the first Bianchi
  // identity.
  double symmetry_defect() const {
    double worst = 0.0;
    const auto& R = *this;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          for (int d = 0; d < n_; ++d) {
            const double r = R(a, b, c, d);
            worst = std::max({worst, std::abs(r + R(b, a, c, d)),
                              std::abs(r + R(a, b, d, c)),
                              std::abs(r - R(c, d, a, b)),
                              std::abs(r + R(b, c, a, d) + R(c, a, b, d))});
          }
    return worst;
  }

  double max_abs_difference(const CurvatureTensor& other) const {
    if (other.n_ != n_) throw InvalidArgument("dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
      worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    return worst;
  }

 private:
  static std::size_t pow4(int n) {
    const auto m = static_cast<std::size_t>(std::max(n, 0));
    return m * m * m * m;
  }

  int n_;
  std::vector<double> data_;
};

// Orthonormal frame for a positive-definite Gram matrix. Columns of `frame`
// are the frame vectors written in the coordinate basis.
struct MetricFrame {
  MatrixXd gram;
  MatrixXd frame;

  int dim() const { return static_cast<int>(gram.rows()); }
  double residual() const {
    const int n = dim();
    return (frame.transpose() * gram * frame - MatrixXd::Identity(n, n))
        .cwiseAbs()
        .maxCoeff();
  }
};

// Gram-Schmidt in the inner product `gram`, processing the coordinate basis
// in index order with one re-orthogonalization pass. The resulting frame is
// upper triangular.
inline MetricFrame gram_schmidt(const MatrixXd& gram) {
  const int n = static_cast<int>(gram.rows());
  if (n == 0 || gram.cols() != n) throw InvalidArgument("gram must be square");
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("gram matrix is not symmetric");
  }

  MatrixXd F = MatrixXd::Zero(n, n);
  auto inner = [&gram](const VectorXd& u, const VectorXd& v) {
    return u.dot(gram * v);
  };
  for (int k = 0; k < n; ++k) {
    VectorXd v = VectorXd::Unit(n, k);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) v -= inner(F.col(j), v) * F.col(j);
    }
    // The squared g-norm of the residual is det(G_k+1)/det(G_k).
    const double pivot = inner(v, v);
    if (!(pivot > 1e-14 * scale)) throw NotPositiveDefinite(k + 1, pivot);
    F.col(k) = v / std::sqrt(pivot);
  }
  return MetricFrame{gram, F};
}

// R(x, y, z, w) for arbitrary vectors.
inline double contract(const CurvatureTensor& R, const VectorXd& x,
                       const VectorXd& y, const VectorXd& z,
                       const VectorXd& w) {
  const int n = R.dim();
  double s = 0.0;
  for (int a = 0; a < n; ++a) {
    if (x[a] == 0.0) continue;
    double sa = 0.0;
    for (int b = 0; b < n; ++b) {
      if (y[b] == 0.0) continue;
      double sb = 0.0;
      for (int c = 0; c < n; ++c) {
        double sc = 0.0;
        for (int d = 0; d < n; ++d) sc += R(a, b, c, d) * w[d];
        sb += sc * z[c];
      }
      sa += sb * y[b];
    }
    s += sa * x[a];
  }
  return s;
}

inline double sectional_curvature(const CurvatureTensor& R, const VectorXd& u,
                                  const VectorXd& v) {
  if (u.size() != R.dim() || v.size() != R.dim()) {
    throw InvalidArgument("vector dimension does not match tensor");
  }
  const double uv = u.dot(v);
  const double area2 = u.squaredNorm() * v.squaredNorm() - uv * uv;
  if (area2 < 1e-14) {
    throw DegeneratePlane("degenerate plane: |u|^2|v|^2 - <u,v>^2 = " +
                          std::to_string(area2));
  }
  return contract(R, u, v, v, u) / area2;
}

inline double scalar_tau(const CurvatureTensor& R) {
  const int n = R.dim();
  double t = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) t += R(i, j, j, i);
  return t;
}

inline double orthonormality_defect(const MatrixXd& basis) {
  const auto r = basis.cols();
  return (basis.transpose() * basis - MatrixXd::Identity(r, r))
      .cwiseAbs()
      .maxCoeff();
}

// Scalar curvature of the subspace spanned by the orthonormal columns of
// `basis`.
inline double tau_subspace(const CurvatureTensor& R, const MatrixXd& basis) {
  const int r = static_cast<int>(basis.cols());
  if (basis.rows() != R.dim()) throw InvalidArgument("basis row count != n");
  if (r < 2 || r > R.dim()) {
    throw InvalidArgument("subspace dimension must lie in [2, n]");
  }
  const double dev = orthonormality_defect(basis);
  if (dev > 1e-10) throw NotOrthonormal("subspace basis is not orthonormal", dev);
  double t = 0.0;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      const VectorXd u = basis.col(a), v = basis.col(b);
      t += contract(R, u, v, v, u);
    }
  return t;
}

// Components of R in the frame whose vectors are the columns of Q:
// R'(A,B,C,D) = sum R(a,b,c,d) Q(a,A) Q(b,B) Q(c,C) Q(d,D).
inline CurvatureTensor rotate_tensor(const CurvatureTensor& R,
                                     const MatrixXd& Q) {
  const int n = R.dim();
  if (Q.rows() != n || Q.cols() != n) throw InvalidArgument("Q must be n x n");
  const double dev = orthonormality_defect(Q);
  if (dev > 1e-10) throw NotOrthonormal("rotation is not orthogonal", dev);

  const std::size_t n1 = n, n2 = n1 * n, n3 = n2 * n, n4 = n3 * n;
  std::vector<double> cur(R.components().begin(), R.components().end());
  std::vector<double> next(n4);
  // Transform one slot at a time; slot s has stride n^(3-s).
  const std::size_t strides[4] = {n3, n2, n1, 1};
  for (int slot = 0; slot < 4; ++slot) {
    const std::size_t st = strides[slot];
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t idx = 0; idx < n4; ++idx) {
      const std::size_t digit = (idx / st) % n1;
      const std::size_t base = idx - digit * st;
      const double v = cur[idx];
      if (v == 0.0) continue;
      for (std::size_t A = 0; A < n1; ++A)
        next[base + A * st] += v * Q(static_cast<int>(digit), static_cast<int>(A));
    }
    cur.swap(next);
  }
  return CurvatureTensor(n, std::move(cur));
}

// Matrix of R acting on bivectors, indexed by pairs (a<b), (c<d):
// M[(ab),(cd)] = R(a,b,d,c), so that R(x,y,y,x) = w^T M w with w = x ^ y.
inline MatrixXd bivector_operator(const CurvatureTensor& R) {
  const int n = R.dim();
  const int p = n * (n - 1) / 2;
  MatrixXd M(p, p);
  int I = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b, ++I) {
      int J = 0;
      for (int c = 0; c < n; ++c)
        for (int d = c + 1; d < n; ++d, ++J) M(I, J) = R(a, b, d, c);
    }
  return 0.5 * (M + M.transpose());
}

}  // namespace chendelta
