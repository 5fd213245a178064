#pragma once

// Cubic form of a Lagrangian point and the curvature it determines.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "chendelta/error.hpp"
#include "chendelta/frame_core.hpp"

namespace chendelta {

using Triple = std::array<int, 3>;

inline Triple sorted_triple(int a, int b, int c) {
  Triple t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

// Dense n^3 array. Holds the on-demand mirror of a CubicForm for hot loops
// and raw (not necessarily symmetric) frame tensors.
class Tensor3 {
 public:
  explicit Tensor3(int n) : n_(n), v_(std::size_t(n) * n * n, 0.0) {}
  int dim() const noexcept { return n_; }
  double operator()(int a, int b, int c) const noexcept {
    return v_[(std::size_t(a) * n_ + b) * n_ + c];
  }
  double& operator()(int a, int b, int c) noexcept {
    return v_[(std::size_t(a) * n_ + b) * n_ + c];
  }

 private:
  int n_;
  std::vector<double> v_;
};

// Totally symmetric coefficients h[A][B][C] = <h(e_B, e_C), J e_A>, each
// stored once under its sorted index triple. Absent triples are zero.
class CubicForm {
 public:
  explicit CubicForm(int n) : n_(n) {
    if (n < 1) throw InvalidArgument("cubic form needs dimension >= 1");
  }

  int dim() const noexcept { return n_; }

  double operator()(int a, int b, int c) const {
    auto it = coeffs_.find(sorted_triple(a, b, c));
    return it == coeffs_.end() ? 0.0 : it->second;
  }

  // Sets the value of every permutation of (a, b, c).
  void set(int a, int b, int c, double value) {
    check_index(a), check_index(b), check_index(c);
    const Triple t = sorted_triple(a, b, c);
    if (value == 0.0) {
      coeffs_.erase(t);
    } else {
      coeffs_[t] = value;
    }
  }

  const std::map<Triple, double>& coefficients() const noexcept {
    return coeffs_;
  }

  Tensor3 dense() const {
    Tensor3 d(n_);
    for (const auto& [t, v] : coeffs_) {
      const auto [a, b, c] = t;
      d(a, b, c) = d(a, c, b) = d(b, a, c) = d(b, c, a) = d(c, a, b) =
          d(c, b, a) = v;
    }
    return d;
  }

  // Symmetrizes an arbitrary dense 3-tensor (average over permutations).
  static CubicForm symmetrized(const Tensor3& raw) {
    const int n = raw.dim();
    CubicForm h(n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        for (int c = b; c < n; ++c) {
          const double s = raw(a, b, c) + raw(a, c, b) + raw(b, a, c) +
                           raw(b, c, a) + raw(c, a, b) + raw(c, b, a);
          h.set(a, b, c, s / 6.0);
        }
    return h;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& kv : coeffs_) m = std::max(m, std::abs(kv.second));
    return m;
  }

 private:
  void check_index(int a) const {
    if (a < 0 || a >= n_) {
      throw InvalidArgument("cubic form index " + std::to_string(a + 1) +
                            " outside 1.." + std::to_string(n_));
    }
  }

  int n_;
  std::map<Triple, double> coeffs_;
};

// Largest asymmetry of a raw 3-tensor under permutations of its indices.
inline double symmetry_deviation(const Tensor3& raw) {
  const int n = raw.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const double v = raw(a, b, c);
        worst = std::max({worst, std::abs(v - raw(b, a, c)),
                          std::abs(v - raw(a, c, b)),
                          std::abs(v - raw(c, b, a))});
      }
  return worst;
}

struct RawCoefficient {
  int a, b, c;  // 1-based
  double value;
};

// Builds a cubic form from 1-based (A, B, C, value) records. Permuted
// duplicates must agree to 1e-12.
inline CubicForm validate_cubic(int n, const std::vector<RawCoefficient>& raw) {
  CubicForm h(n);
  std::map<Triple, double> seen;
  for (const auto& r : raw) {
    for (int idx : {r.a, r.b, r.c}) {
      if (idx < 1 || idx > n) {
        throw InvalidArgument("cubic coefficient index " + std::to_string(idx) +
                              " outside 1.." + std::to_string(n));
      }
    }
    const Triple t = sorted_triple(r.a - 1, r.b - 1, r.c - 1);
    auto [it, inserted] = seen.emplace(t, r.value);
    if (!inserted && std::abs(it->second - r.value) > 1e-12) {
      throw SymmetryViolation(
          "conflicting values for permutations of triple (" +
          std::to_string(t[0] + 1) + "," + std::to_string(t[1] + 1) + "," +
          std::to_string(t[2] + 1) + "): " + std::to_string(it->second) +
          " vs " + std::to_string(r.value));
    }
  }
  for (const auto& [t, v] : seen) h.set(t[0], t[1], t[2], v);
  return h;
}

// Pointwise data of a Lagrangian submanifold of a complex space form of
// constant holomorphic sectional curvature 4c, in an adapted orthonormal
// frame.
struct LagrangianPointData {
  int n;
  double c;
  CubicForm h;
  std::optional<std::string> provenance;

  LagrangianPointData(double c_in, CubicForm h_in,
                      std::optional<std::string> prov = std::nullopt)
      : n(h_in.dim()), c(c_in), h(std::move(h_in)), provenance(std::move(prov)) {
    if (n < 2) throw InvalidArgument("Lagrangian data needs n >= 2");
    if (!std::isfinite(c)) throw InvalidArgument("c must be finite");
  }
};

inline CurvatureTensor gauss_curvature(int n, double c, const Tensor3& h) {
  std::vector<double> out(std::size_t(n) * n * n * n);
  std::size_t k = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          double s = c * (double(x == w && y == z) - double(x == z && y == w));
          for (int e = 0; e < n; ++e)
            s += h(e, y, z) * h(e, x, w) - h(e, x, z) * h(e, y, w);
          out[k++] = s;
        }
  return CurvatureTensor(n, std::move(out));
}

inline CurvatureTensor gauss_curvature(const LagrangianPointData& data) {
  return gauss_curvature(data.n, data.c, data.h.dense());
}

struct MeanCurvature {
  VectorXd components;  // H^A, coefficient of J e_A
  double squared;       // H^2
};

inline MeanCurvature mean_curvature(const CubicForm& h) {
  const int n = h.dim();
  const Tensor3 d = h.dense();
  VectorXd H = VectorXd::Zero(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) H[a] += d(a, b, b);
    H[a] /= n;
  }
  return {H, H.squaredNorm()};
}

// Scalar curvature straight from the cubic coefficients, independent of the
// rank-4 reconstruction.
inline double tau_from_cubic(const LagrangianPointData& data) {
  const int n = data.n;
  const Tensor3 d = data.h.dense();
  double t = 0.5 * n * (n - 1) * data.c;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        t += d(a, b, b) * d(a, c, c) - d(a, b, c) * d(a, b, c);
  return t;
}

// Coefficients of h in the frame given by the columns of Q.
inline CubicForm rotate_cubic(const CubicForm& h, const MatrixXd& Q) {
  const int n = h.dim();
  if (Q.rows() != n || Q.cols() != n) throw InvalidArgument("Q must be n x n");
  const Tensor3 d = h.dense();
  // Contract one slot at a time.
  Tensor3 s1(n), s2(n), s3(n);
  for (int A = 0; A < n; ++A)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double v = 0.0;
        for (int a = 0; a < n; ++a) v += d(a, b, c) * Q(a, A);
        s1(A, b, c) = v;
      }
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int c = 0; c < n; ++c) {
        double v = 0.0;
        for (int b = 0; b < n; ++b) v += s1(A, b, c) * Q(b, B);
        s2(A, B, c) = v;
      }
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      for (int C = 0; C < n; ++C) {
        double v = 0.0;
        for (int c = 0; c < n; ++c) v += s2(A, B, c) * Q(c, C);
        s3(A, B, C) = v;
      }
  return CubicForm::symmetrized(s3);
}

// The cubic form of the exotic Berger-sphere immersion in an orthonormal
// frame: h[1][1][1] = lambda, h[1][2][2] = h[2][1][2] = -lambda with
// lambda = 2/sqrt(3).
inline CubicForm exotic_s3_cubic() {
  const double lam = 2.0 / std::sqrt(3.0);
  CubicForm h(3);
  h.set(0, 0, 0, lam);
  h.set(0, 1, 1, -lam);
  return h;
}

inline LagrangianPointData exotic_s3_data() {
  return LagrangianPointData(1.0, exotic_s3_cubic(), "exotic-s3");
}

}  // namespace chendelta
