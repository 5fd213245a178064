#pragma once

// Seeded generators for the random inputs used by the optimizer, audits and
// property tests. Streams are derived from (seed, index) pairs so work items
// can be processed in any order.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "chendelta/cubic_form.hpp"
#include "chendelta/frame_core.hpp"

namespace chendelta {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32),
                    std::uint32_t(stream), std::uint32_t(stream >> 32)};
  return Rng(seq);
}

inline MatrixXd random_gaussian_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> nd;
  MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = nd(rng);
  return m;
}

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the sign
// of R's diagonal folded into Q).
inline MatrixXd random_orthogonal(Rng& rng, int n) {
  const MatrixXd G = random_gaussian_matrix(rng, n, n);
  Eigen::HouseholderQR<MatrixXd> qr(G);
  MatrixXd Q = qr.householderQ();
  const MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  return Q;
}

inline MatrixXd random_spd(Rng& rng, int n) {
  const MatrixXd G = random_gaussian_matrix(rng, n, n);
  return G * G.transpose() + n * MatrixXd::Identity(n, n);
}

// Every independent coefficient (sorted triple) drawn from N(0, scale^2).
inline CubicForm random_cubic(Rng& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  CubicForm h(n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = b; c < n; ++c) h.set(a, b, c, nd(rng));
  return h;
}

// Random algebraic curvature tensor: a signed sum of Kulkarni-Nomizu squares
// S (.) S of Gaussian symmetric matrices. These span all tensors with the
// Riemann symmetries and the first Bianchi identity.
inline CurvatureTensor random_curvature_tensor(Rng& rng, int n, int terms = 0) {
  if (terms <= 0) terms = n + 2;
  std::bernoulli_distribution coin(0.5);
  std::vector<MatrixXd> S;
  std::vector<double> sign;
  for (int t = 0; t < terms; ++t) {
    const MatrixXd G = random_gaussian_matrix(rng, n, n);
    S.push_back(0.5 * (G + G.transpose()) / std::sqrt(double(n)));
    sign.push_back(coin(rng) ? 1.0 : -1.0);
  }
  return CurvatureTensor::from_function(n, [&](int a, int b, int c, int d) {
    double s = 0.0;
    for (int t = 0; t < terms; ++t) {
      const MatrixXd& m = S[t];
      s += sign[t] * (m(a, d) * m(b, c) - m(a, c) * m(b, d));
    }
    return s;
  });
}

// Random curvature tensor rescaled so its curvature operator on bivectors
// has spectral norm 1, which fixes the scale of absolute tolerances.
inline CurvatureTensor random_unit_curvature_tensor(Rng& rng, int n) {
  const CurvatureTensor R = random_curvature_tensor(rng, n);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(bivector_operator(R));
  const double s = es.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<double> v(R.components().begin(), R.components().end());
  for (double& x : v) x /= s;
  return CurvatureTensor(n, std::move(v));
}

}  // namespace chendelta
