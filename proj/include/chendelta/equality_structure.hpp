#pragma once

// Equality-case patterns of the cubic form, their detection in a given frame
// and synthesis of data realizing them.
//
// Frames are ordered as the delta optimizer returns them: the columns of
// Delta_1, ..., Delta_k first, then the remaining N+1, ..., n.
//
//   OLD       shape operators A_r = diag(A^r_1, ..., A^r_k, mu_r I) with
//             trace A^r_j = mu_r for all j.
//   IMPROVED  h^{N+1}_{aa} = 3 lambda / (2 + n_i) for a in Delta_i,
//             h^{N+1}_{N+1,N+1} = 3 lambda, h^{N+1}_{uu} = lambda for u > N+1,
//             traceless within-block parts, everything else zero.
//   HIGH_A    traceless within-block parts only.
//   FIRST     h^1_11 = lambda, h^1_22 = h^2_12 = -lambda, everything else zero.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "chendelta/cubic_form.hpp"
#include "chendelta/delta_tuple.hpp"
#include "chendelta/error.hpp"
#include "chendelta/inequality.hpp"
#include "chendelta/random.hpp"

namespace chendelta {

struct EqualityStructure {
  Variant variant;
  double deviation = 0.0;
  std::optional<double> lambda;
  double tolerance = 1e-8;
  bool passed = false;
  MatrixXd frame;  // frame in which the pattern was measured (after alignment)
};

namespace detail {

// Group of each frame column: block index, or k for the remainder.
inline std::vector<int> column_groups(const DeltaTuple& t) {
  std::vector<int> g(t.n(), t.k());
  int c = 0;
  for (int j = 0; j < t.k(); ++j)
    for (int i = 0; i < t.parts()[j]; ++i) g[c++] = j;
  return g;
}

// Orthogonal m x m matrix whose first column is the unit vector u.
inline MatrixXd completion_with_first(const VectorXd& u) {
  const int m = static_cast<int>(u.size());
  VectorXd v = u;
  v[0] -= 1.0;
  const double vv = v.squaredNorm();
  if (vv < 1e-30) return MatrixXd::Identity(m, m);
  // Householder reflection taking e_1 to u.
  return MatrixXd::Identity(m, m) - 2.0 * v * v.transpose() / vv;
}

inline double block_trace_defect(const Tensor3& h, const DeltaTuple& t) {
  double worst = 0.0;
  int start = 0;
  for (int p : t.parts()) {
    for (int g = start; g < start + p; ++g) {
      double tr = 0.0;
      for (int a = start; a < start + p; ++a) tr += h(g, a, a);
      worst = std::max(worst, std::abs(tr));
    }
    start += p;
  }
  return worst;
}

}  // namespace detail

inline EqualityStructure detect_equality_structure(const CubicForm& h, const DeltaTuple& t,
                                                   Variant variant, const MatrixXd& frame,
                                                   double tol = 1e-8) {
  const int n = h.dim();
  if (t.n() != n) throw InvalidArgument("tuple dimension does not match the cubic form");
  if (frame.rows() != n || frame.cols() != n) throw InvalidArgument("frame must be n x n");
  const double dev = orthonormality_defect(frame);
  if (dev > 1e-10) throw NotOrthonormal("equality frame is not orthogonal", dev);
  if (variant == Variant::K1) variant = Variant::IMPROVED;
  if (variant != Variant::OLD && variant != Variant::FIRST && variant != Variant::IMPROVED &&
      variant != Variant::HIGH_A) {
    throw InvalidArgument("no equality pattern detector for variant " +
                          std::string(to_string(variant)));
  }
  if (auto why = inadmissibility(variant, t)) throw AdmissibilityError(*why);

  const int N = t.N();
  MatrixXd Q = frame;
  CubicForm hq = rotate_cubic(h, Q);

  if (variant == Variant::IMPROVED) {
    // e_{N+1} is the direction of H projected onto the remainder.
    const VectorXd H = mean_curvature(hq).components;
    const VectorXd v = H.tail(n - N);
    const double nv = v.norm();
    if (nv > 1e-300 && v.tail(v.size() - 1).norm() > 1e-14 * nv) {
      const MatrixXd P = detail::completion_with_first(v / nv);
      Q.rightCols(n - N) = (Q.rightCols(n - N) * P).eval();
      hq = rotate_cubic(h, Q);
    }
  } else if (variant == Variant::FIRST) {
    // Rotate inside span(e_1, e_2) so h(e_1, e_1, e_1) is the amplitude of
    // the harmonic cubic h(u, u, u) = lambda cos 3(theta - theta_0).
    auto f = [&hq](double th) {
      const double c = std::cos(th), s = std::sin(th);
      return hq(0, 0, 0) * c * c * c + 3 * hq(0, 0, 1) * c * c * s +
             3 * hq(0, 1, 1) * c * s * s + hq(1, 1, 1) * s * s * s;
    };
    const double a = f(0.0), b = f(std::numbers::pi / 6);
    if (std::abs(b) > 1e-14 * (1.0 + std::abs(a))) {
      const double th = std::atan2(b, a) / 3.0;
      const VectorXd e1 = std::cos(th) * Q.col(0) + std::sin(th) * Q.col(1);
      const VectorXd e2 = -std::sin(th) * Q.col(0) + std::cos(th) * Q.col(1);
      Q.col(0) = e1;
      Q.col(1) = e2;
      hq = rotate_cubic(h, Q);
    }
  }

  const Tensor3 d = hq.dense();
  const std::vector<int> grp = detail::column_groups(t);
  const int k = t.k();
  EqualityStructure out{variant};
  double worst = 0.0;

  switch (variant) {
    case Variant::FIRST: {
      const double lam = d(0, 0, 0);
      out.lambda = lam;
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
          for (int c = b; c < n; ++c) {
            double e = 0.0;
            if (a == 0 && b == 0 && c == 0) e = lam;
            if (a == 0 && b == 1 && c == 1) e = -lam;
            worst = std::max(worst, std::abs(d(a, b, c) - e));
          }
      break;
    }
    case Variant::HIGH_A: {
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
          for (int c = b; c < n; ++c) {
            const bool inside = grp[a] < k && grp[a] == grp[b] && grp[b] == grp[c];
            if (!inside) worst = std::max(worst, std::abs(d(a, b, c)));
          }
      worst = std::max(worst, detail::block_trace_defect(d, t));
      break;
    }
    case Variant::IMPROVED: {
      const double lam = d(N, N, N) / 3.0;
      out.lambda = lam;
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
          for (int c = b; c < n; ++c) {
            const bool inside = grp[a] < k && grp[a] == grp[b] && grp[b] == grp[c];
            if (inside) continue;
            double e = 0.0;
            if (c == N && a == b && grp[a] < k) e = 3.0 * lam / (2.0 + t.parts()[grp[a]]);
            if (a == N && b == N && c == N) e = 3.0 * lam;
            if (a == N && b > N && b == c) e = lam;
            worst = std::max(worst, std::abs(d(a, b, c) - e));
          }
      worst = std::max(worst, detail::block_trace_defect(d, t));
      break;
    }
    case Variant::OLD: {
      // Each shape operator A_r(B, C) = h(r, B, C) separately.
      for (int r = 0; r < n; ++r) {
        std::vector<double> traces(k, 0.0), rem_diag;
        for (int B = 0; B < n; ++B) {
          if (grp[B] < k) traces[grp[B]] += d(r, B, B);
          else rem_diag.push_back(d(r, B, B));
        }
        double mu = 0.0;
        for (double x : traces) mu += x;
        for (double x : rem_diag) mu += x;
        mu /= double(traces.size() + rem_diag.size());
        for (double x : traces) worst = std::max(worst, std::abs(x - mu));
        for (double x : rem_diag) worst = std::max(worst, std::abs(x - mu));
        for (int B = 0; B < n; ++B)
          for (int C = B + 1; C < n; ++C) {
            const bool same_block = grp[B] < k && grp[B] == grp[C];
            if (!same_block) worst = std::max(worst, std::abs(d(r, B, C)));
          }
      }
      break;
    }
    default: break;
  }
  out.deviation = worst;
  out.tolerance = tol;
  out.passed = worst <= tol;
  out.frame = Q;
  return out;
}

namespace detail {

// Totally symmetric traceless cubic on R^m with Gaussian coefficients:
// subtracts delta_ab v_c + delta_ac v_b + delta_bc v_a, v = trace / (m + 2).
inline Tensor3 random_traceless_block(Rng& rng, int m, double scale) {
  const CubicForm raw = random_cubic(rng, m, scale);
  Tensor3 d = raw.dense();
  VectorXd v = VectorXd::Zero(m);
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a) v[c] += d(a, a, c);
  v /= (m + 2.0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        d(a, b, c) -= double(a == b) * v[c] + double(a == c) * v[b] + double(b == c) * v[a];
  // Make every trace exactly zero in index order, so the mean curvature of
  // the assembled form is 0.0 rather than roundoff. Entry (c, m-1, m-1)
  // occurs in trace c only.
  for (int c = 0; c < m; ++c) {
    double s = 0.0;
    for (int a = 0; a + 1 < m; ++a) s += d(a, a, c);
    const int l = m - 1;
    d(c, l, l) = d(l, c, l) = d(l, l, c) = -s;
  }
  return d;
}

}  // namespace detail

// Data realizing the equality pattern of `variant` in the identity frame.
// Within-block parts are random traceless forms drawn from `block_seed`
// (zero when absent). lambda is ignored for OLD and HIGH_A, whose patterns
// force minimality.
inline LagrangianPointData synthesize_equality_data(const DeltaTuple& t, Variant variant,
                                                    double lambda,
                                                    std::optional<std::uint64_t> block_seed,
                                                    double c = 0.0, double block_scale = 1.0) {
  if (variant == Variant::K1) variant = Variant::IMPROVED;
  if (variant != Variant::OLD && variant != Variant::FIRST && variant != Variant::IMPROVED &&
      variant != Variant::HIGH_A) {
    throw InvalidArgument("no equality pattern for variant " + std::string(to_string(variant)));
  }
  if (auto why = inadmissibility(variant, t)) throw AdmissibilityError(*why);
  const int n = t.n(), N = t.N();
  CubicForm h(n);

  if (variant == Variant::FIRST) {
    h.set(0, 0, 0, lambda);
    h.set(0, 1, 1, -lambda);
    return LagrangianPointData(c, std::move(h), "synthesized-first");
  }

  if (block_seed) {
    Rng rng = make_rng(*block_seed, 0);
    int start = 0;
    for (int p : t.parts()) {
      const Tensor3 blk = detail::random_traceless_block(rng, p, block_scale);
      for (int a = 0; a < p; ++a)
        for (int b = a; b < p; ++b)
          for (int cc = b; cc < p; ++cc) h.set(start + a, start + b, start + cc, blk(a, b, cc));
      start += p;
    }
  }
  if (variant == Variant::IMPROVED && lambda != 0.0) {
    int start = 0;
    for (int p : t.parts()) {
      for (int a = start; a < start + p; ++a) h.set(a, a, N, 3.0 * lambda / (2.0 + p));
      start += p;
    }
    h.set(N, N, N, 3.0 * lambda);
    for (int u = N + 1; u < n; ++u) h.set(N, u, u, lambda);
  }
  return LagrangianPointData(c, std::move(h),
                             "synthesized-" + std::string(to_string(variant)));
}

}  // namespace chendelta
