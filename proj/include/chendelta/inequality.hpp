#pragma once

// Curvature inequalities delta(n_1, ..., n_k) <= a H^2 + b c for Lagrangian
// submanifolds of complex space forms of holomorphic sectional curvature 4c.
//
//   OLD              a = n^2 (n + k - 1 - N) / (2 (n + k - N))
//   FIRST   (2)      a = n^2 (n - 2) / (2 (n - 1))
//   OPREA   (2)      a = n^2 (2n - 3) / (2 (2n + 3))
//   IMPROVED         a = n^2 (n - N + 3k - 1 - 6A) / (2 (n - N + 3k + 2 - 6A)),
//                    A <= 1/3, N < n
//   HIGH_A           a = n^2 (n - N + 3k - 3) / (2 (n - N + 3k)), A > 1/3, N < n
//   K1      (n_1)    a = n^2 (n_1 (n - n_1) + 2n - 2) / (2 (n_1 (n - n_1) + 2n + 3 n_1 + 4))
//   HYPERPLANE_FLAT  (n - 1), c = 0: a = n (n - 1) / 4
//   HYPERPLANE_CP    (n - 1), c = 1: a = n (n - 1) / 4
//
// with N = sum n_j, A = sum 1/(2 + n_j) and, for every variant,
// b = (n (n - 1) - sum n_j (n_j - 1)) / 2.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chendelta/cubic_form.hpp"
#include "chendelta/delta_opt.hpp"
#include "chendelta/delta_tuple.hpp"
#include "chendelta/error.hpp"

namespace chendelta {

enum class Variant { OLD, FIRST, OPREA, IMPROVED, HIGH_A, K1, HYPERPLANE_FLAT, HYPERPLANE_CP };

inline constexpr std::array<Variant, 8> kAllVariants = {
    Variant::OLD, Variant::FIRST,  Variant::OPREA,           Variant::IMPROVED,
    Variant::HIGH_A, Variant::K1,  Variant::HYPERPLANE_FLAT, Variant::HYPERPLANE_CP};

// Variants that apply to arbitrary Lagrangian data in any complex space form.
inline constexpr std::array<Variant, 6> kAuditVariants = {
    Variant::OLD, Variant::FIRST, Variant::OPREA, Variant::IMPROVED, Variant::HIGH_A, Variant::K1};

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::OLD: return "old";
    case Variant::FIRST: return "first";
    case Variant::OPREA: return "oprea";
    case Variant::IMPROVED: return "improved";
    case Variant::HIGH_A: return "high-a";
    case Variant::K1: return "k1";
    case Variant::HYPERPLANE_FLAT: return "hyperplane-flat";
    case Variant::HYPERPLANE_CP: return "hyperplane-cp";
  }
  return "?";
}

inline Variant parse_variant(std::string_view s) {
  for (Variant v : kAllVariants)
    if (to_string(v) == s) return v;
  throw InvalidArgument("unknown inequality variant '" + std::string(s) + "'");
}

// Why `v` does not apply to `t`, or nullopt when it does.
inline std::optional<std::string> inadmissibility(Variant v, const DeltaTuple& t) {
  const int n = t.n(), N = t.N(), k = t.k();
  const std::string name(to_string(v));
  const bool is_two = (k == 1 && t.parts()[0] == 2);
  const bool is_hyper = (k == 1 && t.parts()[0] == n - 1);
  switch (v) {
    case Variant::OLD: return std::nullopt;
    case Variant::FIRST:
    case Variant::OPREA:
      if (!is_two) return name + " needs the tuple (2), got " + t.str();
      return std::nullopt;
    case Variant::IMPROVED:
      if (N >= n) return name + " needs N < n";
      if (t.compare_A_with_third() > 0) return name + " needs A <= 1/3, tuple " + t.str() + " has A > 1/3";
      return std::nullopt;
    case Variant::HIGH_A:
      if (N >= n) return name + " needs N < n";
      if (t.compare_A_with_third() <= 0) return name + " needs A > 1/3, tuple " + t.str() + " has A <= 1/3";
      return std::nullopt;
    case Variant::K1:
      if (k != 1) return name + " needs a single part, got " + t.str();
      return std::nullopt;
    case Variant::HYPERPLANE_FLAT:
    case Variant::HYPERPLANE_CP:
      if (!is_hyper) return name + " needs the tuple (n-1), got " + t.str();
      return std::nullopt;
  }
  return std::nullopt;
}

inline bool admissible(Variant v, const DeltaTuple& t) { return !inadmissibility(v, t); }

struct Coefficients {
  double a;
  double b;
};

inline Coefficients coefficients(Variant v, const DeltaTuple& t) {
  if (auto why = inadmissibility(v, t)) throw AdmissibilityError(*why);
  const double n = t.n(), N = t.N(), k = t.k(), A = t.A();
  const double n2 = n * n;
  double a = 0.0;
  switch (v) {
    case Variant::OLD: a = n2 * (n + k - 1 - N) / (2 * (n + k - N)); break;
    case Variant::FIRST: a = n2 * (n - 2) / (2 * (n - 1)); break;
    case Variant::OPREA: a = n2 * (2 * n - 3) / (2 * (2 * n + 3)); break;
    case Variant::IMPROVED:
      a = n2 * (n - N + 3 * k - 1 - 6 * A) / (2 * (n - N + 3 * k + 2 - 6 * A));
      break;
    case Variant::HIGH_A: a = n2 * (n - N + 3 * k - 3) / (2 * (n - N + 3 * k)); break;
    case Variant::K1: {
      const double n1 = t.parts()[0];
      a = n2 * (n1 * (n - n1) + 2 * n - 2) / (2 * (n1 * (n - n1) + 2 * n + 3 * n1 + 4));
      break;
    }
    case Variant::HYPERPLANE_FLAT:
    case Variant::HYPERPLANE_CP: a = n * (n - 1) / 4; break;
  }
  return {a, t.b()};
}

// The improved inequality covering `t`: IMPROVED when A <= 1/3 (boundary
// included), HIGH_A otherwise. Tuples with N = n have none.
inline Variant select_improved(const DeltaTuple& t) {
  if (t.N() >= t.n()) {
    throw AdmissibilityError("tuple " + t.str() + " has N = n; only the old inequality applies");
  }
  return t.compare_A_with_third() <= 0 ? Variant::IMPROVED : Variant::HIGH_A;
}

struct InequalityReport {
  Variant variant;
  DeltaTuple tuple;
  double c = 0.0;
  double delta = 0.0;
  double h2 = 0.0;
  double a = 0.0, b = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - delta
  bool equality = false;
  DeltaDiagnostics diagnostics;

  int n() const { return tuple.n(); }
  // Soundness at the relative tolerance used by audits.
  bool sound(double rel_tol = 1e-9) const { return slack >= -rel_tol * (1.0 + std::abs(rhs)); }
};

struct EvaluateOptions {
  DeltaOptions delta;
  double eq_tol = 1e-6;
};

// Builds a report from an already computed delta (shared across variants).
inline InequalityReport make_report(Variant v, const DeltaTuple& t, double c, double h2,
                                    const DeltaResult& d, double eq_tol = 1e-6) {
  const Coefficients k = coefficients(v, t);
  if (v == Variant::HYPERPLANE_FLAT && c != 0.0) {
    throw AdmissibilityError("hyperplane-flat applies to c = 0 only");
  }
  if (v == Variant::HYPERPLANE_CP && c != 1.0) {
    throw AdmissibilityError("hyperplane-cp applies to c = 1 only");
  }
  InequalityReport r{v, t};
  r.c = c;
  r.delta = d.value;
  r.h2 = h2;
  r.a = k.a;
  r.b = k.b;
  r.rhs = k.a * h2 + k.b * c;
  r.slack = r.rhs - r.delta;
  r.equality = std::abs(r.slack) <= eq_tol;
  r.diagnostics = d.diagnostics;
  return r;
}

inline InequalityReport evaluate(const LagrangianPointData& data, Variant v,
                                 const DeltaTuple& t, const EvaluateOptions& opt = {}) {
  if (t.n() != data.n) throw InvalidArgument("tuple dimension does not match data");
  if (auto why = inadmissibility(v, t)) throw AdmissibilityError(*why);
  const DeltaResult d = delta_invariant(gauss_curvature(data), t, opt.delta);
  return make_report(v, t, data.c, mean_curvature(data.h).squared, d, opt.eq_tol);
}

}  // namespace chendelta
