#include <gtest/gtest.h>

#include <cmath>

#include "chendelta/cubic_form.hpp"
#include "chendelta/frame_core.hpp"
#include "chendelta/random.hpp"

using namespace chendelta;

TEST(GramSchmidt, IdentityStaysIdentity) {
  const MetricFrame mf = gram_schmidt(MatrixXd::Identity(3, 3));
  EXPECT_LT((mf.frame - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(GramSchmidt, DiagonalBergerMetric) {
  const MetricFrame mf = gram_schmidt(Eigen::Vector3d(3, 3, 9).asDiagonal().toDenseMatrix());
  const MatrixXd expect = Eigen::Vector3d(1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1.0 / 3).asDiagonal();
  EXPECT_LT((mf.frame - expect).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(GramSchmidt, RandomSpdResidual) {
  Rng rng = make_rng(7, 0);
  const MatrixXd G = random_spd(rng, 5);
  const MetricFrame mf = gram_schmidt(G);
  const MatrixXd r = mf.frame.transpose() * G * mf.frame - MatrixXd::Identity(5, 5);
  EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(mf.residual(), 1e-10);
}

TEST(GramSchmidt, RejectsIndefiniteWithMinorIndex) {
  MatrixXd G = MatrixXd::Identity(3, 3);
  G(2, 2) = -1.0;
  try {
    gram_schmidt(G);
    FAIL() << "expected NotPositiveDefinite";
  } catch (const NotPositiveDefinite& e) {
    EXPECT_EQ(e.minor_index(), 3);
  }
}

TEST(GramSchmidt, RejectsAsymmetric) {
  MatrixXd G = MatrixXd::Identity(2, 2);
  G(0, 1) = 0.5;
  EXPECT_THROW(gram_schmidt(G), InvalidArgument);
}

TEST(SectionalCurvature, ConstantCurvatureIsOne) {
  const CurvatureTensor R = CurvatureTensor::constant_curvature(4, 1.0);
  Rng rng = make_rng(1, 0);
  const MatrixXd X = random_gaussian_matrix(rng, 4, 2);
  EXPECT_NEAR(sectional_curvature(R, X.col(0), X.col(1)), 1.0, 1e-14);
}

TEST(SectionalCurvature, ExoticPlane12) {
  const CurvatureTensor R = gauss_curvature(exotic_s3_data());
  EXPECT_NEAR(sectional_curvature(R, VectorXd::Unit(3, 0), VectorXd::Unit(3, 1)), -5.0 / 3, 1e-14);
}

TEST(SectionalCurvature, ScaleAndRebasisInvariant) {
  Rng rng = make_rng(2, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const CurvatureTensor R = random_curvature_tensor(rng, 5);
    const MatrixXd X = random_gaussian_matrix(rng, 5, 2);
    const MatrixXd B = random_gaussian_matrix(rng, 2, 2);
    const double k = sectional_curvature(R, X.col(0), X.col(1));
    EXPECT_NEAR(sectional_curvature(R, 2.0 * X.col(0), X.col(1)), k, 1e-10);
    const MatrixXd Y = X * B;
    EXPECT_NEAR(sectional_curvature(R, Y.col(0), Y.col(1)), k, 1e-10 * (1 + std::abs(k)));
  }
}

TEST(SectionalCurvature, DegeneratePlaneRejected) {
  const CurvatureTensor R = CurvatureTensor::constant_curvature(3, 1.0);
  const VectorXd u = VectorXd::Unit(3, 0);
  EXPECT_THROW(sectional_curvature(R, u, 2.0 * u), DegeneratePlane);
}

TEST(ScalarTau, ConstantCurvature) {
  for (int n = 2; n <= 6; ++n)
    EXPECT_NEAR(scalar_tau(CurvatureTensor::constant_curvature(n, 0.7)), 0.7 * n * (n - 1) / 2, 1e-13);
}

TEST(ScalarTau, ExoticIsOneThird) {
  EXPECT_NEAR(scalar_tau(gauss_curvature(exotic_s3_data())), 1.0 / 3, 1e-14);
}

TEST(ScalarTau, RotationInvariant) {
  Rng rng = make_rng(3, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const CurvatureTensor R = random_curvature_tensor(rng, 5);
    const MatrixXd Q = random_orthogonal(rng, 5);
    EXPECT_NEAR(scalar_tau(rotate_tensor(R, Q)), scalar_tau(R), 1e-10);
  }
}

TEST(TauSubspace, PlaneMatchesSectional) {
  Rng rng = make_rng(4, 0);
  const CurvatureTensor R = random_curvature_tensor(rng, 4);
  const MatrixXd Q = random_orthogonal(rng, 4);
  EXPECT_NEAR(tau_subspace(R, Q.leftCols(2)), sectional_curvature(R, Q.col(0), Q.col(1)), 1e-12);
  EXPECT_NEAR(tau_subspace(R, Q), scalar_tau(R), 1e-12);
}

TEST(TauSubspace, ConstantCurvatureRPlane) {
  const CurvatureTensor R = CurvatureTensor::constant_curvature(6, -0.5);
  Rng rng = make_rng(5, 0);
  const MatrixXd Q = random_orthogonal(rng, 6);
  for (int r = 2; r <= 6; ++r) EXPECT_NEAR(tau_subspace(R, Q.leftCols(r)), -0.5 * r * (r - 1) / 2, 1e-12);
}

TEST(TauSubspace, BasisRotationInvariant) {
  Rng rng = make_rng(6, 0);
  const CurvatureTensor R = random_curvature_tensor(rng, 6);
  const MatrixXd Q = random_orthogonal(rng, 6);
  const MatrixXd L = Q.leftCols(3);
  const MatrixXd inner = random_orthogonal(rng, 3);
  EXPECT_NEAR(tau_subspace(R, L * inner), tau_subspace(R, L), 1e-10);
}

TEST(TauSubspace, RejectsNonOrthonormal) {
  const CurvatureTensor R = CurvatureTensor::constant_curvature(3, 1.0);
  MatrixXd B = MatrixXd::Identity(3, 2);
  B(0, 1) = 0.1;
  EXPECT_THROW(tau_subspace(R, B), NotOrthonormal);
}

TEST(RotateTensor, IdentityAndIsotropy) {
  Rng rng = make_rng(8, 0);
  const CurvatureTensor R = random_curvature_tensor(rng, 4);
  EXPECT_EQ(rotate_tensor(R, MatrixXd::Identity(4, 4)).max_abs_difference(R), 0.0);
  const CurvatureTensor C = CurvatureTensor::constant_curvature(4, 2.0);
  EXPECT_LT(rotate_tensor(C, random_orthogonal(rng, 4)).max_abs_difference(C), 1e-13);
}

TEST(RotateTensor, RoundTrip) {
  Rng rng = make_rng(9, 0);
  const CurvatureTensor R = random_curvature_tensor(rng, 5);
  const MatrixXd Q = random_orthogonal(rng, 5);
  EXPECT_LT(rotate_tensor(rotate_tensor(R, Q), Q.transpose()).max_abs_difference(R), 1e-12);
}

TEST(RotateTensor, RejectsNonOrthogonal) {
  const CurvatureTensor R = CurvatureTensor::constant_curvature(3, 1.0);
  EXPECT_THROW(rotate_tensor(R, 2.0 * MatrixXd::Identity(3, 3)), NotOrthonormal);
}

TEST(CurvatureTensor, ConstructedTensorsHaveRiemannSymmetries) {
  Rng rng = make_rng(10, 0);
  for (int n = 2; n <= 6; ++n) {
    EXPECT_LT(random_curvature_tensor(rng, n).symmetry_defect(), 1e-12);
    EXPECT_LT(gauss_curvature(LagrangianPointData(0.3, random_cubic(rng, n))).symmetry_defect(), 1e-12);
  }
}

TEST(CurvatureTensor, TauIsHalfRicciTrace) {
  Rng rng = make_rng(11, 0);
  const CurvatureTensor R = random_curvature_tensor(rng, 5);
  double ric = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) ric += R(i, j, j, i);
  EXPECT_NEAR(scalar_tau(R), 0.5 * ric, 1e-12);
}
