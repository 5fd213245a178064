#pragma once

// The exotic Lagrangian immersion of a Berger sphere into CP^3(4).
//
// Intrinsic description: on S^3 in R^4 take the vector fields
//   X_1 = (y2, -y1, y4, -y3), X_2 = (y3, -y4, -y1, y2), X_3 = (y4, y3, -y2, -y1)
// with g(X_1, X_1) = g(X_2, X_2) = 3, g(X_3, X_3) = 9, g(X_i, X_j) = 0 for
// i != j, and alpha(X_1, X_1) = 2 X_1, alpha(X_1, X_2) = -2 X_2,
// alpha(X_2, X_2) = -2 X_1, all other alpha(X_i, X_j) = 0.
//
// Horizontal realization: the SU(2)-orbit of the binary cubic
// (x^3 + y^3)/sqrt(2) in Sym^3(C^2) = C^4 (unitary monomial basis
// sqrt(C(3,j)) x^(3-j) y^j) lies in S^7, is horizontal, and its Hopf image
// has the same induced data.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>

#include "chendelta/cubic_field.hpp"
#include "chendelta/cubic_form.hpp"
#include "chendelta/error.hpp"
#include "chendelta/immersion.hpp"

namespace chendelta {

namespace detail {

// X_i(y) = M_i y.
inline std::array<Eigen::Matrix4d, 3> exotic_field_matrices() {
  Eigen::Matrix4d M1, M2, M3;
  M1 << 0, 1, 0, 0,  //
      -1, 0, 0, 0,   //
      0, 0, 0, 1,    //
      0, 0, -1, 0;
  M2 << 0, 0, 1, 0,  //
      0, 0, 0, -1,   //
      -1, 0, 0, 0,   //
      0, 1, 0, 0;
  M3 << 0, 0, 0, 1,  //
      0, 0, 1, 0,    //
      0, -1, 0, 0,   //
      -1, 0, 0, 0;
  return {M1, M2, M3};
}

inline Eigen::Vector4d sphere_point_from_chart(const VectorXd& x) {
  const double r2 = x.squaredNorm();
  if (!(r2 < 1.0)) throw DomainError("chart point outside the upper hemisphere chart");
  return Eigen::Vector4d(x[0], x[1], x[2], std::sqrt(1.0 - r2));
}

}  // namespace detail

// Fields in R^4 at a point y of S^3, as the columns of a 4 x 3 matrix.
inline Eigen::Matrix<double, 4, 3> exotic_s3_vector_fields(const Eigen::Vector4d& y) {
  if (std::abs(y.norm() - 1.0) > 1e-12) {
    throw DomainError("point is off the unit sphere (|y| - 1 = " +
                      std::to_string(y.norm() - 1.0) + ")");
  }
  const auto M = detail::exotic_field_matrices();
  Eigen::Matrix<double, 4, 3> X;
  for (int i = 0; i < 3; ++i) X.col(i) = M[i] * y;
  return X;
}

inline MatrixXd exotic_s3_gram() { return Eigen::Vector3d(3.0, 3.0, 9.0).asDiagonal(); }

inline FrameTensor exotic_s3_alpha() {
  FrameTensor a = FrameTensor::Zero(27);
  a[ft(3, 0, 0, 0)] = 2.0;   // alpha(X1, X1) = 2 X1
  a[ft(3, 1, 0, 1)] = -2.0;  // alpha(X1, X2) = -2 X2
  a[ft(3, 1, 1, 0)] = -2.0;
  a[ft(3, 0, 1, 1)] = -2.0;  // alpha(X2, X2) = -2 X1
  return a;
}

// Pointwise data at y in S^3 (orthonormal frame X_1/sqrt3, X_2/sqrt3, X_3/3).
inline LagrangianPointData exotic_s3_point_data(const Eigen::Vector4d& y) {
  (void)exotic_s3_vector_fields(y);  // validates |y| = 1
  const MatrixXd g = exotic_s3_gram();
  const MatrixXd F = gram_schmidt(g).frame;
  const FrameTensor a = exotic_s3_alpha();
  Tensor3 raw(3);
  for (int A = 0; A < 3; ++A)
    for (int B = 0; B < 3; ++B)
      for (int C = 0; C < 3; ++C) {
        double s = 0.0;
        for (int m = 0; m < 3; ++m)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
              double low = 0.0;
              for (int k = 0; k < 3; ++k) low += a[ft(3, k, i, j)] * g(k, m);
              s += F(m, A) * F(i, B) * F(j, C) * low;
            }
        raw(A, B, C) = s;
      }
  return LagrangianPointData(1.0, CubicForm::symmetrized(raw), "exotic-s3");
}

// Field over the chart x in [-1/2, 1/2]^3 -> y = (x, sqrt(1 - |x|^2)).
// Brackets come from the R^4 formulas: [X_i, X_j](y) = (M_j M_i - M_i M_j) y.
inline CubicField exotic_s3_field() {
  CubicField f;
  f.n = 3;
  f.domain = ChartBox{VectorXd::Constant(3, -0.5), VectorXd::Constant(3, 0.5)};
  f.chart_frame = [](const VectorXd& x) -> MatrixXd {
    const auto X = exotic_s3_vector_fields(detail::sphere_point_from_chart(x));
    return X.topRows(3);
  };
  f.gram = [](const VectorXd&) { return exotic_s3_gram(); };
  f.alpha = [](const VectorXd&) { return exotic_s3_alpha(); };
  f.brackets = [](const VectorXd& x) {
    const Eigen::Vector4d y = detail::sphere_point_from_chart(x);
    const auto M = detail::exotic_field_matrices();
    const MatrixXd X = exotic_s3_vector_fields(y);
    const auto qr = X.colPivHouseholderQr();
    FrameTensor c = FrameTensor::Zero(27);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Eigen::Vector4d br = (M[j] * M[i] - M[i] * M[j]) * y;
        const VectorXd coeff = qr.solve(VectorXd(br));
        for (int k = 0; k < 3; ++k) c[ft(3, k, i, j)] = coeff[k];
      }
    return c;
  };
  f.step = 1e-4;
  return f;
}

// Horizontal lift into S^7 over the chart x in [-1/2, 1/2]^3, with
// (a, b) = (sqrt(1 - |x|^2) + i x_1, x_2 + i x_3) in SU(2).
inline ImmersionChart exotic_s3_lift() {
  ImmersionChart ch;
  ch.n = 3;
  ch.kind = AmbientKind::SPHERE;
  ch.domain = ChartBox{VectorXd::Constant(3, -0.5), VectorXd::Constant(3, 0.5)};
  ch.name = "exotic-s3-lift";
  ch.eval = [](const VectorXd& x) -> VectorXcd {
    const double r2 = x.squaredNorm();
    if (!(r2 < 1.0)) throw DomainError("chart point outside the SU(2) chart");
    const cplx a(std::sqrt(1.0 - r2), x[0]), b(x[1], x[2]);
    const cplx ac = std::conj(a), bc = std::conj(b);
    // (aX - conj(b) Y)^3 + (bX + conj(a) Y)^3
    const cplx c0 = a * a * a + b * b * b;
    const cplx c1 = -3.0 * a * a * bc + 3.0 * b * b * ac;
    const cplx c2 = 3.0 * a * bc * bc + 3.0 * b * ac * ac;
    const cplx c3 = -bc * bc * bc + ac * ac * ac;
    const double s = 1.0 / std::sqrt(2.0), r3 = std::sqrt(3.0);
    VectorXcd z(4);
    z << c0 * s, c1 * s / r3, c2 * s / r3, c3 * s;
    return z;
  };
  return ch;
}

}  // namespace chendelta
