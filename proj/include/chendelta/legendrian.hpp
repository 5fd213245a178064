#pragma once

// Flat-torus minimal Legendrian immersions into S^(2m-1):
//   phi(u) = (e^{i theta_1}, ..., e^{i theta_m}) / sqrt(m),
//   theta_j = u_j (j < m),  theta_m = -(u_1 + ... + u_{m-1}).
// The phases sum to zero (horizontality) and the torus is a product of
// equal circles (minimality in the sphere).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

#include "chendelta/error.hpp"
#include "chendelta/frame_core.hpp"

namespace chendelta {

using Eigen::VectorXcd;

class LegendrianTorus {
 public:
  explicit LegendrianTorus(int m) : m_(m), P_(MatrixXd::Zero(m, m - 1)) {
    if (m < 2) throw InvalidArgument("Legendrian torus needs m >= 2");
    for (int j = 0; j < m - 1; ++j) {
      P_(j, j) = 1.0;
      P_(m - 1, j) = -1.0;
    }
    verify();
  }

  int ambient_dim() const { return m_; }   // complex dimension m
  int dim() const { return m_ - 1; }       // parameters u_1..u_{m-1}
  const MatrixXd& phases() const { return P_; }

  VectorXcd operator()(const VectorXd& u) const {
    if (u.size() != dim()) throw InvalidArgument("Legendrian parameter has wrong dimension");
    const VectorXd th = P_ * u;
    VectorXcd z(m_);
    for (int j = 0; j < m_; ++j) z[j] = std::polar(1.0 / std::sqrt(double(m_)), th[j]);
    return z;
  }

  // d phi / du_a, analytic.
  VectorXcd derivative(const VectorXd& u, int a) const {
    const VectorXcd z = (*this)(u);
    VectorXcd d(m_);
    for (int j = 0; j < m_; ++j) d[j] = std::complex<double>(0, P_(j, a)) * z[j];
    return d;
  }

  VectorXcd second_derivative(const VectorXd& u, int a, int b) const {
    const VectorXcd z = (*this)(u);
    VectorXcd d(m_);
    for (int j = 0; j < m_; ++j) d[j] = -P_(j, a) * P_(j, b) * z[j];
    return d;
  }

  // max |<d phi_a, i phi>|.
  double horizontality_residual(const VectorXd& u) const {
    const VectorXcd z = (*this)(u);
    double worst = 0.0;
    for (int a = 0; a < dim(); ++a) {
      const VectorXcd iz = std::complex<double>(0, 1) * z;
      worst = std::max(worst, std::abs(derivative(u, a).dot(iz).real()));
    }
    return worst;
  }

  // |H| of phi as a submanifold of the unit sphere.
  double mean_curvature_norm(const VectorXd& u) const {
    const int d = dim();
    const VectorXcd z = (*this)(u);
    std::vector<VectorXcd> D(d);
    MatrixXd g(d, d);
    for (int a = 0; a < d; ++a) D[a] = derivative(u, a);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) g(a, b) = D[a].dot(D[b]).real();
    const MatrixXd ginv = g.inverse();
    // Tangent space plus the radial direction, orthonormalized (real span).
    std::vector<VectorXcd> basis{z};
    for (int a = 0; a < d; ++a) {
      VectorXcd v = D[a];
      for (const auto& e : basis) v -= e.dot(v).real() * e;
      basis.push_back(v / v.norm());
    }
    VectorXcd H = VectorXcd::Zero(m_);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        VectorXcd s = second_derivative(u, a, b);
        for (const auto& e : basis) s -= e.dot(s).real() * e;
        H += ginv(a, b) * s;
      }
    return H.norm() / d;
  }

 private:
  void verify() const {
    for (int s = 0; s < 5; ++s) {
      VectorXd u(dim());
      for (int a = 0; a < dim(); ++a) u[a] = 0.37 * (s + 1) + 0.61 * a;
      const double hr = horizontality_residual(u);
      if (hr > 1e-10) throw ConsistencyError("Legendrian torus is not horizontal", hr);
      const double mc = mean_curvature_norm(u);
      if (mc > 1e-6) throw ConsistencyError("Legendrian torus is not minimal", mc);
    }
  }

  int m_;
  MatrixXd P_;
};

inline LegendrianTorus clifford_legendrian(int m) { return LegendrianTorus(m); }

}  // namespace chendelta
