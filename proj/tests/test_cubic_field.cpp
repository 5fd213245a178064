#include <gtest/gtest.h>

#include <vector>

#include "chendelta/cubic_field.hpp"
#include "chendelta/exotic_s3.hpp"
#include "chendelta/random.hpp"

using namespace chendelta;

namespace {

ChartBox unit_box(int n) { return {VectorXd::Constant(n, -1.0), VectorXd::Constant(n, 1.0)}; }

}  // namespace

TEST(Compatibility, ConstantFlatFieldIsCompatible) {
  Rng rng = make_rng(30, 0);
  const CubicForm h = random_cubic(rng, 3);
  const CubicField f = constant_flat_field(3, frame_tensor_from_cubic(h), unit_box(3));
  // The Gauss residual is nonzero for a generic constant form; (i) and (ii)
  // vanish regardless.
  const std::vector<VectorXd> pts{VectorXd::Zero(3), VectorXd::Constant(3, 0.3)};
  const CompatibilityReport r = compatibility_report(f, 0.0, pts);
  EXPECT_LT(r.cubic_symmetry, 1e-8);
  EXPECT_LT(r.codazzi_symmetry, 1e-8);
  EXPECT_EQ(r.points, 2);
}

TEST(Compatibility, ZeroFieldFlatAllThree) {
  const CubicField f = constant_flat_field(3, FrameTensor::Zero(27), unit_box(3));
  const CompatibilityReport r = compatibility_at(f, 0.0, VectorXd::Zero(3));
  EXPECT_LT(r.cubic_symmetry, 1e-8);
  EXPECT_LT(r.codazzi_symmetry, 1e-8);
  EXPECT_LT(r.gauss_residual, 1e-8);
}

TEST(Compatibility, ExoticFieldPasses) {
  const CubicField f = exotic_s3_field();
  const std::vector<VectorXd> pts{VectorXd::Zero(3), Eigen::Vector3d(0.2, -0.1, 0.3),
                                  Eigen::Vector3d(-0.4, 0.35, -0.2)};
  const CompatibilityReport r = compatibility_report(f, 1.0, pts);
  EXPECT_LT(r.cubic_symmetry, 1e-6);
  EXPECT_LT(r.codazzi_symmetry, 1e-6);
  EXPECT_LT(r.gauss_residual, 1e-6);
  EXPECT_NEAR(r.intrinsic_tau, 1.0 / 3, 1e-6);
}

TEST(Compatibility, AsymmetricPerturbationDetected) {
  CubicField f = exotic_s3_field();
  const auto base = f.alpha;
  f.alpha = [base](const VectorXd& x) {
    FrameTensor a = base(x);
    a[ft(3, 0, 1, 2)] += 1e-3;  // alpha(X_2, X_3) gains an X_1 part, alpha(X_3, X_2) does not
    return a;
  };
  const CompatibilityReport r = compatibility_at(f, 1.0, VectorXd::Zero(3));
  EXPECT_GE(r.cubic_symmetry, 1e-4);
}

TEST(Compatibility, OutsideDomainRejected) {
  const CubicField f = exotic_s3_field();
  EXPECT_THROW(compatibility_at(f, 1.0, VectorXd::Constant(3, 0.5)), DomainError);
}

TEST(Compatibility, StepUnderflowRejected) {
  CubicField f = constant_flat_field(2, FrameTensor::Zero(8), unit_box(2));
  f.step = 1e-300;
  EXPECT_THROW(compatibility_at(f, 0.0, VectorXd::Zero(2)), DomainError);
}

TEST(FieldPointData, ExoticConstantForm) {
  const CubicField f = exotic_s3_field();
  const double l = 2 / std::sqrt(3.0);
  for (const VectorXd& x : {VectorXd(VectorXd::Zero(3)), VectorXd(Eigen::Vector3d(0.3, 0.1, -0.2))}) {
    const FieldPointData pd = field_point_data(f, x);
    EXPECT_NEAR(pd.h(0, 0, 0), l, 1e-12);
    EXPECT_NEAR(pd.h(0, 1, 1), -l, 1e-12);
    EXPECT_NEAR(pd.h(2, 2, 2), 0.0, 1e-12);
    EXPECT_NEAR(pd.h(0, 0, 2), 0.0, 1e-12);
    EXPECT_LT(symmetry_deviation(pd.raw), 1e-12);
  }
}
