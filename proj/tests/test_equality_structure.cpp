#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "chendelta/cubic_form.hpp"
#include "chendelta/delta_opt.hpp"
#include "chendelta/equality_structure.hpp"
#include "chendelta/inequality.hpp"
#include "chendelta/random.hpp"

using namespace chendelta;

TEST(Synthesis, ImprovedMatchesGraphFormAtOrigin) {
  const LagrangianPointData d =
      synthesize_equality_data(DeltaTuple(5, {2}), Variant::IMPROVED, 1.0, std::nullopt);
  EXPECT_EQ(d.h(0, 0, 2), 0.75);
  EXPECT_EQ(d.h(1, 1, 2), 0.75);
  EXPECT_EQ(d.h(2, 2, 2), 3.0);
  EXPECT_EQ(d.h(2, 3, 3), 1.0);
  EXPECT_EQ(d.h(2, 4, 4), 1.0);
  EXPECT_EQ(d.h.coefficients().size(), 5u);
}

TEST(Synthesis, RoundTripsThroughDetection) {
  struct Case {
    DeltaTuple t;
    Variant v;
  };
  const std::vector<Case> cases{
      {DeltaTuple(5, {2}), Variant::IMPROVED},  {DeltaTuple(9, {4, 4}), Variant::IMPROVED},
      {DeltaTuple(5, {2, 2}), Variant::HIGH_A}, {DeltaTuple(7, {2, 2, 2}), Variant::HIGH_A},
      {DeltaTuple(4, {2, 2}), Variant::OLD},    {DeltaTuple(6, {3}), Variant::OLD}};
  for (const auto& [t, v] : cases) {
    const LagrangianPointData d = synthesize_equality_data(t, v, 0.7, 11);
    const EqualityStructure st =
        detect_equality_structure(d.h, t, v, MatrixXd::Identity(t.n(), t.n()), 1e-12);
    EXPECT_TRUE(st.passed) << to_string(v) << " " << t.str() << " dev " << st.deviation;
    if (v == Variant::IMPROVED) {
      ASSERT_TRUE(st.lambda.has_value());
      EXPECT_NEAR(*st.lambda, 0.7, 1e-15);
    }
  }
}

TEST(Synthesis, EqualitySlackAndMeanCurvature) {
  const EvaluateOptions opt{.delta = {.restarts = 16}};
  {
    const DeltaTuple t(5, {2});
    const LagrangianPointData d = synthesize_equality_data(t, Variant::IMPROVED, 1.0, 4, 0.0, 0.3);
    const InequalityReport r = evaluate(d, Variant::IMPROVED, t, opt);
    EXPECT_GT(r.h2, 0.0);
    EXPECT_LE(std::abs(r.slack), 1e-9);
  }
  {
    const DeltaTuple t(5, {2, 2});
    const LagrangianPointData d = synthesize_equality_data(t, Variant::HIGH_A, 0.0, 4);
    EXPECT_EQ(mean_curvature(d.h).squared, 0.0);
    const InequalityReport r = evaluate(d, Variant::HIGH_A, t, opt);
    EXPECT_LE(std::abs(r.slack), 1e-9);
  }
}

TEST(Detection, ExoticFirstPattern) {
  const EqualityStructure st = detect_equality_structure(
      exotic_s3_cubic(), DeltaTuple(3, {2}), Variant::FIRST, MatrixXd::Identity(3, 3));
  EXPECT_TRUE(st.passed);
  ASSERT_TRUE(st.lambda.has_value());
  EXPECT_NEAR(*st.lambda, 2 / std::sqrt(3.0), 1e-14);
}

TEST(Detection, FirstPatternFoundAfterInPlaneRotation) {
  Rng rng = make_rng(50, 0);
  MatrixXd R = MatrixXd::Identity(3, 3);
  const double th = 0.37;
  R(0, 0) = std::cos(th), R(0, 1) = -std::sin(th), R(1, 0) = std::sin(th), R(1, 1) = std::cos(th);
  const CubicForm rotated = rotate_cubic(exotic_s3_cubic(), R.transpose());
  const EqualityStructure st = detect_equality_structure(rotated, DeltaTuple(3, {2}), Variant::FIRST,
                                                         MatrixXd::Identity(3, 3));
  EXPECT_TRUE(st.passed) << st.deviation;
}

TEST(Detection, RandomDenseFormFails) {
  Rng rng = make_rng(51, 0);
  const CubicForm h = random_cubic(rng, 5);
  const DeltaTuple t(5, {2});
  for (Variant v : {Variant::OLD, Variant::IMPROVED, Variant::FIRST}) {
    const EqualityStructure st = detect_equality_structure(h, t, v, MatrixXd::Identity(5, 5));
    EXPECT_FALSE(st.passed);
    EXPECT_GT(st.deviation, 0.1) << to_string(v);
  }
}

TEST(Detection, ImprovedInRotatedFrameViaOptimizer) {
  const DeltaTuple t(5, {2});
  const LagrangianPointData base = synthesize_equality_data(t, Variant::IMPROVED, 1.0, std::nullopt);
  Rng rng = make_rng(52, 0);
  const MatrixXd Q = random_orthogonal(rng, 5);
  const CubicForm h = rotate_cubic(base.h, Q);
  const DeltaResult d = delta_invariant(gauss_curvature(LagrangianPointData(0.0, h)), t);
  const EqualityStructure st = detect_equality_structure(h, t, Variant::IMPROVED, d.config.frame, 1e-6);
  EXPECT_TRUE(st.passed) << st.deviation;
  EXPECT_NEAR(std::abs(*st.lambda), 1.0, 1e-6);
}

TEST(Detection, BadInputsRejected) {
  const CubicForm h(4);
  EXPECT_THROW(detect_equality_structure(h, DeltaTuple(4, {2}), Variant::OPREA, MatrixXd::Identity(4, 4)),
               InvalidArgument);
  EXPECT_THROW(detect_equality_structure(h, DeltaTuple(5, {2}), Variant::OLD, MatrixXd::Identity(4, 4)),
               InvalidArgument);
  EXPECT_THROW(detect_equality_structure(h, DeltaTuple(4, {2}), Variant::OLD, 2 * MatrixXd::Identity(4, 4)),
               NotOrthonormal);
}

// Every totally symmetric cubic whose shape operators have the OLD equality
// shape diag(A^r_1, ..., A^r_k, mu_r I), trace A^r_j = mu_r, is minimal. The
// pattern is linear in (h, mu), so this is a statement about the null space
// of the constraint matrix.
TEST(OldEqualityPattern, ForcesMinimality) {
  for (int n = 3; n <= 6; ++n)
    for (const auto& t : enumerate_tuples(n)) {
      std::map<Triple, int> var;
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
          for (int c = b; c < n; ++c) var.emplace(Triple{a, b, c}, int(var.size()));
      const int nh = int(var.size()), unknowns = nh + n;  // then mu_0..mu_{n-1}
      const std::vector<int> grp = detail::column_groups(t);
      const int k = t.k();
      std::vector<VectorXd> rows;
      auto row = [&] { return VectorXd::Zero(unknowns).eval(); };
      for (int r = 0; r < n; ++r) {
        for (int j = 0; j < k; ++j) {
          VectorXd e = row();
          for (int B = 0; B < n; ++B)
            if (grp[B] == j) e[var.at(sorted_triple(r, B, B))] += 1.0;
          e[nh + r] = -1.0;
          rows.push_back(e);
        }
        for (int u = 0; u < n; ++u)
          if (grp[u] == k) {
            VectorXd e = row();
            e[var.at(sorted_triple(r, u, u))] += 1.0;
            e[nh + r] = -1.0;
            rows.push_back(e);
          }
        for (int B = 0; B < n; ++B)
          for (int C = B + 1; C < n; ++C)
            if (!(grp[B] < k && grp[B] == grp[C])) {
              VectorXd e = row();
              e[var.at(sorted_triple(r, B, C))] = 1.0;
              rows.push_back(e);
            }
      }
      MatrixXd M(rows.size(), unknowns);
      for (std::size_t i = 0; i < rows.size(); ++i) M.row(i) = rows[i].transpose();
      const Eigen::FullPivLU<MatrixXd> lu(M);
      const MatrixXd kernel = lu.kernel();
      for (int col = 0; col < kernel.cols(); ++col) {
        for (int r = 0; r < n; ++r) {
          double trace = 0.0;
          for (int B = 0; B < n; ++B) trace += kernel(var.at(sorted_triple(r, B, B)), col);
          EXPECT_NEAR(trace, 0.0, 1e-10) << "n=" << n << " " << t.str();
        }
      }
    }
}
