#pragma once

// Claim suites for the gallery examples. Each suite samples chart points,
// evaluates every claim at every point and records the worst value seen.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chendelta/cubic_field.hpp"
#include "chendelta/delta_opt.hpp"
#include "chendelta/equality_structure.hpp"
#include "chendelta/exotic_s3.hpp"
#include "chendelta/hyperplane_families.hpp"
#include "chendelta/immersion.hpp"
#include "chendelta/inequality.hpp"
#include "chendelta/legendrian.hpp"
#include "chendelta/oracles.hpp"
#include "chendelta/random.hpp"

namespace chendelta {

struct Claim {
  std::string name;
  std::string relation;  // "<=" (worst must not exceed bound) or ">=" (worst must reach it)
  double bound = 0.0;
  double worst = 0.0;
  int evaluations = 0;
  bool passed() const {
    if (evaluations == 0) return false;
    return relation == ">=" ? worst >= bound : worst <= bound;
  }
};

struct SampleRecord {
  VectorXd chart_point;
  VectorXcd ambient_point;  // empty for intrinsic examples
  double tau = 0.0;
  double h2 = 0.0;
  std::map<std::string, double> slack;  // per variant
};

struct VerifyReport {
  std::string example;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<Claim> claims;
  std::vector<SampleRecord> records;
  double seconds = 0.0;

  bool passed() const {
    for (const auto& c : claims)
      if (!c.passed()) return false;
    return !claims.empty();
  }
  const Claim* failing() const {
    for (const auto& c : claims)
      if (!c.passed()) return &c;
    return nullptr;
  }
  const Claim& claim(const std::string& name) const {
    for (const auto& c : claims)
      if (c.name == name) return c;
    throw InvalidArgument("no claim named '" + name + "'");
  }
};

namespace detail {

class ClaimBook {
 public:
  // Upper-bound claim: records max(value).
  void at_most(const std::string& name, double value, double bound) {
    Claim& c = get(name, "<=", bound, -std::numeric_limits<double>::infinity());
    c.worst = std::max(c.worst, std::isnan(value) ? std::numeric_limits<double>::infinity() : value);
    ++c.evaluations;
  }
  // Lower-bound claim: records min(value).
  void at_least(const std::string& name, double value, double bound) {
    Claim& c = get(name, ">=", bound, std::numeric_limits<double>::infinity());
    c.worst = std::min(c.worst, std::isnan(value) ? -std::numeric_limits<double>::infinity() : value);
    ++c.evaluations;
  }
  std::vector<Claim> take() { return std::move(claims_); }

 private:
  Claim& get(const std::string& name, const char* rel, double bound, double init) {
    for (auto& c : claims_)
      if (c.name == name) return c;
    claims_.push_back(Claim{name, rel, bound, init, 0});
    return claims_.back();
  }
  std::vector<Claim> claims_;
};

inline VectorXd uniform_point(Rng& rng, const VectorXd& lo, const VectorXd& hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  VectorXd x(lo.size());
  for (int a = 0; a < lo.size(); ++a) x[a] = lo[a] + (hi[a] - lo[a]) * u(rng);
  return x;
}

inline VectorXd shrink(const VectorXd& lo, const VectorXd& hi, double frac, bool upper) {
  const VectorXd mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  return upper ? VectorXd(mid + frac * half) : VectorXd(mid - frac * half);
}

inline void check_samples(int samples) {
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
}

}  // namespace detail

// Berger-sphere example: intrinsic field and horizontal lift.
inline VerifyReport verify_exotic_s3(int samples, std::uint64_t seed,
                                     const DeltaOptions& dopt = {}) {
  detail::check_samples(samples);
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep{"exotic-s3", samples, seed};
  detail::ClaimBook book;
  const CubicField field = exotic_s3_field();
  const ImmersionChart lift = exotic_s3_lift();
  const DeltaTuple two(3, {2});
  Rng rng = make_rng(seed, 1);
  const VectorXd lo = VectorXd::Constant(3, -0.45), hi = VectorXd::Constant(3, 0.45);
  for (int s = 0; s < samples; ++s) {
    const VectorXd x = detail::uniform_point(rng, lo, hi);
    const FieldPointData pd = field_point_data(field, x);
    const LagrangianPointData data(1.0, pd.h, "exotic-s3");
    const CurvatureTensor R = gauss_curvature(data);
    const double tau = scalar_tau(R);
    const double h2 = mean_curvature(data.h).squared;
    book.at_most("tau = 1/3 (intrinsic)", std::abs(tau - 1.0 / 3.0), 1e-8);
    book.at_most("H^2 = 0", h2, 1e-10);

    const double oracle = oracle_delta_dim3(R);
    const DeltaResult d = delta_invariant(R, two, dopt);
    book.at_most("delta(2) = 2 (dim-3 oracle)", std::abs(oracle - 2.0), 1e-6);
    book.at_most("delta(2) optimizer = oracle", std::abs(d.value - oracle), 1e-6);
    const InequalityReport first = make_report(Variant::FIRST, two, 1.0, h2, d);
    book.at_most("first inequality equality |slack|", std::abs(first.slack), 1e-6);

    const CompatibilityReport cr = compatibility_at(field, 1.0, x);
    book.at_most("compatibility: cubic symmetry", cr.cubic_symmetry, 1e-6);
    book.at_most("compatibility: codazzi symmetry", cr.codazzi_symmetry, 1e-6);
    book.at_most("compatibility: gauss residual", cr.gauss_residual, 1e-6);

    const VectorXd xl = detail::uniform_point(rng, lo, hi);
    const InducedData lifted = induced_data_horizontal(lift, xl);
    const double tau_lift = tau_from_cubic(lifted.data);
    book.at_most("tau = 1/3 (horizontal lift)", std::abs(tau_lift - 1.0 / 3.0), 1e-4);
    book.at_most("lift horizontality", horizontality_residual(lift, xl), 1e-6);

    rep.records.push_back({x, {}, tau, h2, {{"first", first.slack}}});
  }
  rep.claims = book.take();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Graph of the cubic potential realizing the improved-inequality equality at
// the origin (n = 5, tuple (2), lambda = 1). The first sample is the origin;
// further samples check the Lagrangian and Gauss-path properties elsewhere.
inline VerifyReport verify_equality_graph(int samples, std::uint64_t seed,
                                          const DeltaOptions& dopt = {}) {
  detail::check_samples(samples);
  const auto t0 = std::chrono::steady_clock::now();
  constexpr int n = 5;
  VerifyReport rep{"graph-8.2", samples, seed};
  detail::ClaimBook book;
  const GraphPotential F = equality_graph_potential({2}, n, 1.0);
  const ChartBox box{VectorXd::Constant(n, -0.5), VectorXd::Constant(n, 0.5)};
  const ImmersionChart chart = graph_immersion(F, box, "graph-8.2");
  const DeltaTuple two(n, {2});
  Rng rng = make_rng(seed, 2);

  for (int s = 0; s < samples; ++s) {
    const VectorXd x = s == 0 ? VectorXd::Zero(n).eval()
                              : detail::uniform_point(rng, VectorXd::Constant(n, -0.3),
                                                      VectorXd::Constant(n, 0.3));
    const InducedData ind = induced_data_flat(chart, x);
    book.at_most("omega pullback", omega_pullback(chart, x), 1e-8);
    book.at_most("cubic symmetry of extraction", ind.symmetry_deviation, 1e-5);
    const double h2 = mean_curvature(ind.data.h).squared;
    const CurvatureTensor R = gauss_curvature(ind.data);
    SampleRecord rec{x, chart.eval(x), scalar_tau(R), h2, {}};
    if (s == 0) {
      // The induced metric at the origin is the identity, so the cubic form
      // equals the third derivatives of F there.
      const Tensor3 third = F.third(x);
      double worst = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) worst = std::max(worst, std::abs(ind.data.h(a, b, c) - third(a, b, c)));
      book.at_most("cubic form = third derivatives of F at 0", worst, 1e-6);
      book.at_most("H^2 = 1.69 at 0", std::abs(h2 - 1.69), 1e-6);
      const DeltaResult d = delta_invariant(R, two, dopt);
      book.at_most("delta(2) = 11.375 at 0", std::abs(d.value - 11.375), 1e-5);
      const InequalityReport imp = make_report(Variant::IMPROVED, two, 0.0, h2, d);
      book.at_most("improved inequality equality |slack| at 0", std::abs(imp.slack), 1e-6);
      book.at_least("H^2 > 0 at 0", h2, 1e-3);
      const EqualityStructure st =
          detect_equality_structure(ind.data.h, two, Variant::IMPROVED, d.config.frame, 1e-4);
      book.at_most("improved equality pattern at 0", st.deviation, 1e-4);
      rec.slack["improved"] = imp.slack;
    } else {
      const CompatibilityReport cr =
          compatibility_at(chart_cubic_field(chart), 0.0, x);
      book.at_most("gauss-path consistency", cr.gauss_residual, 1e-4);
    }
    rep.records.push_back(std::move(rec));
  }
  rep.claims = book.take();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Flat hyperplane family, n = 3, b = 1, Clifford Legendrian torus.
inline VerifyReport verify_flat_family(int samples, std::uint64_t seed,
                                       const DeltaOptions& dopt = {}, int n = 3, double b = 1.0) {
  detail::check_samples(samples);
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep{"thm-9.2", samples, seed};
  detail::ClaimBook book;
  const ImmersionChart chart = flat_family_chart(n, b, clifford_legendrian(n));
  const DeltaTuple hyper(n, {n - 1});
  Rng rng = make_rng(seed, 3);
  const VectorXd lo = detail::shrink(chart.domain.lo, chart.domain.hi, 0.9, false);
  const VectorXd hi = detail::shrink(chart.domain.lo, chart.domain.hi, 0.9, true);
  for (int s = 0; s < samples; ++s) {
    const VectorXd x = detail::uniform_point(rng, lo, hi);
    book.at_most("omega pullback", omega_pullback(chart, x), 1e-8);
    const InducedData ind = induced_data_flat(chart, x);
    const double h2 = mean_curvature(ind.data.h).squared;
    book.at_least("H^2 > 0", h2, 1e-6);
    const CurvatureTensor R = gauss_curvature(ind.data);
    const DeltaResult d = delta_invariant(R, hyper, dopt);
    const InequalityReport r = make_report(Variant::HYPERPLANE_FLAT, hyper, 0.0, h2, d);
    book.at_most("hyperplane-flat equality |slack|", std::abs(r.slack), 1e-4);
    rep.records.push_back({x, chart.eval(x), scalar_tau(R), h2, {{"hyperplane-flat", r.slack}}});
  }
  rep.claims = book.take();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

struct SphereFamilySetup {
  int n = 3;
  CurveState init{};
  double t_end = 0.5;
  double step = 1e-3;
  double coarse_step = 0.04;  // start of the step-halving study
};

// CP^n hyperplane family through the ODE, n = 3, init (0, 1, 0).
inline VerifyReport verify_sphere_family(int samples, std::uint64_t seed,
                                         const DeltaOptions& dopt = {},
                                         const SphereFamilySetup& setup = {}) {
  detail::check_samples(samples);
  const auto t0 = std::chrono::steady_clock::now();
  const int n = setup.n;
  VerifyReport rep{"thm-9.3", samples, seed};
  detail::ClaimBook book;
  const CurveTrajectory tr = integrate_curve_ode(n, setup.init, setup.t_end, setup.step);
  book.at_most("trajectory truncated", tr.truncated() ? 1.0 : 0.0, 0.0);
  book.at_most("ODE residual", curve_ode_residual(tr), 1e-9);
  const ConvergenceStudy cs = curve_ode_convergence(n, setup.init, setup.t_end, setup.coarse_step, 3);
  for (double p : cs.orders) {
    book.at_least("ODE order (step halving), lower", p, 3.5);
    book.at_most("ODE order (step halving), upper", p, 4.5);
  }
  const double span = tr.t_end() - tr.t_begin();
  const ImmersionChart chart =
      sphere_family_chart(tr, clifford_legendrian(n), tr.t_begin() + 0.05 * span, tr.t_end() - 0.05 * span);
  const DeltaTuple hyper(n, {n - 1});
  Rng rng = make_rng(seed, 4);
  const VectorXd lo = detail::shrink(chart.domain.lo, chart.domain.hi, 0.9, false);
  const VectorXd hi = detail::shrink(chart.domain.lo, chart.domain.hi, 0.9, true);
  for (int s = 0; s < samples; ++s) {
    const VectorXd x = detail::uniform_point(rng, lo, hi);
    const VectorXcd L = chart.eval(x);
    book.at_most("|L| = 1", std::abs(L.norm() - 1.0), 1e-10);
    book.at_most("horizontality", horizontality_residual(chart, x), 1e-6);
    const InducedData ind = induced_data_horizontal(chart, x);
    const double h2 = mean_curvature(ind.data.h).squared;
    book.at_least("H^2 > 0", h2, 1e-6);
    const CurvatureTensor R = gauss_curvature(ind.data);
    const DeltaResult d = delta_invariant(R, hyper, dopt);
    const InequalityReport r = make_report(Variant::HYPERPLANE_CP, hyper, 1.0, h2, d);
    book.at_most("hyperplane-cp equality |slack|", std::abs(r.slack), 1e-3);
    rep.records.push_back({x, L, scalar_tau(R), h2, {{"hyperplane-cp", r.slack}}});
  }
  rep.claims = book.take();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names{"exotic-s3", "graph-8.2", "thm-9.2", "thm-9.3"};
  return names;
}

inline VerifyReport run_verify(const std::string& example, int samples, std::uint64_t seed,
                               const DeltaOptions& dopt = {}) {
  if (example == "exotic-s3") return verify_exotic_s3(samples, seed, dopt);
  if (example == "graph-8.2") return verify_equality_graph(samples, seed, dopt);
  if (example == "thm-9.2") return verify_flat_family(samples, seed, dopt);
  if (example == "thm-9.3") return verify_sphere_family(samples, seed, dopt);
  throw InvalidArgument("unknown example '" + example + "'");
}

}  // namespace chendelta
