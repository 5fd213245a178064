// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "chendelta/chendelta.hpp"

using namespace chendelta;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string worst_claims(const VerifyReport& r) {
  std::string s;
  for (const auto& c : r.claims) s += (s.empty() ? "" : ", ") + c.name + " " + num(c.worst);
  return s;
}

Outcome verify_suite(const std::string& example, int samples, double max_seconds) {
  Outcome o;
  const VerifyReport r = run_verify(example, samples, 0);
  if (const Claim* bad = r.failing()) {
    o.require(false, "claim '" + bad->name + "' worst " + num(bad->worst) + " vs " + bad->relation +
                         " " + num(bad->bound));
  }
  for (const auto& c : r.claims) o.require(c.evaluations > 0, "claim '" + c.name + "' never evaluated");
  o.require(r.seconds <= max_seconds, "runtime " + num(r.seconds) + " s over " + num(max_seconds) + " s");
  if (o.pass) o.detail = worst_claims(r);
  return o;
}

Outcome exotic_s3() { return verify_suite("exotic-s3", 100, 10.0); }

Outcome equality_graph() { return verify_suite("graph-8.2", 1, 5.0); }

Outcome soundness_sweep() {
  Outcome o;
  const std::filesystem::path out = std::filesystem::temp_directory_path() / "chendelta_acceptance_audit.json";
  const std::string cmd = std::string(CHENDELTA_CLI) + " audit --n 3..6 --count 1000 --seed 42 --out " +
                          out.string();
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "audit exit status " + std::to_string(status));
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  ojson j;
  try {
    j = ojson::parse(ss.str());
  } catch (const std::exception& e) {
    o.require(false, std::string("unreadable audit output: ") + e.what());
    return o;
  }
  double worst = INFINITY;
  int pairings = 0;
  for (const auto& a : j["audits"])
    for (const auto& e : a["entries"]) {
      ++pairings;
      const double rel = e["min_relative_slack"].get<double>();
      worst = std::min(worst, rel);
      o.require(e["evaluations"].get<int>() == 1000,
                "n=" + std::to_string(a["n"].get<int>()) + " " + e["variant"].get<std::string>() +
                    " evaluated " + std::to_string(e["evaluations"].get<int>()) + " times");
      o.require(rel >= -1e-9, "n=" + std::to_string(a["n"].get<int>()) + " " +
                                  e["variant"].get<std::string>() + " relative slack " + num(rel));
    }
  o.require(pairings > 0, "no pairings audited");
  o.require(secs <= 300.0, "runtime " + num(secs) + " s over 300 s");
  if (o.pass) {
    o.detail = std::to_string(pairings) + " pairings, min relative slack " + num(worst) + ", " +
               num(secs) + " s";
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  Rng rng = make_rng(2024, 0);
  double worst3 = 0.0;
  for (int i = 0; i < 200; ++i) {
    const CurvatureTensor R = random_curvature_tensor(rng, 3);
    worst3 = std::max(worst3, std::abs(delta_invariant(R, DeltaTuple(3, {2})).value - oracle_delta_dim3(R)));
  }
  o.require(worst3 <= 1e-6, "dim-3 oracle difference " + num(worst3));
  // Unit-norm tensors keep the grid spacing error on the same scale for
  // every sample; tuples cycle through all of S(4).
  const std::vector<DeltaTuple> tuples = enumerate_tuples(4);
  double worst4 = 0.0;
  for (int i = 0; i < 50; ++i) {
    const CurvatureTensor R = random_unit_curvature_tensor(rng, 4);
    const DeltaTuple& t = tuples[i % tuples.size()];
    worst4 = std::max(worst4, std::abs(delta_invariant(R, t).value - oracle_delta_grid(R, t, 40)));
  }
  o.require(worst4 <= 5e-3, "grid oracle difference " + num(worst4));
  o.detail = "dim-3 " + num(worst3) + ", grid " + num(worst4);
  return o;
}

Outcome coefficient_identities() {
  Outcome o;
  int checks = 0;
  for (int n = 4; n <= 10; ++n)
    for (int n1 = 2; n1 < n; ++n1) {
      const DeltaTuple t(n, {n1});
      const double d = std::abs(coefficients(Variant::K1, t).a - coefficients(Variant::IMPROVED, t).a);
      ++checks;
      o.require(d <= 1e-14, "K1 vs IMPROVED at n=" + std::to_string(n) + " " + t.str() + ": " + num(d));
    }
  for (int n = 3; n <= 10; ++n) {
    for (const auto& t : enumerate_tuples(n)) {
      if (t.N() >= n) continue;
      const double imp = coefficients(select_improved(t), t).a, old = coefficients(Variant::OLD, t).a;
      ++checks;
      o.require(imp <= old, "improved above old at n=" + std::to_string(n) + " " + t.str());
    }
    const DeltaTuple two(n, {2});
    ++checks;
    o.require(coefficients(Variant::OPREA, two).a < coefficients(Variant::FIRST, two).a,
              "OPREA not below FIRST at n=" + std::to_string(n));
  }
  if (o.pass) o.detail = std::to_string(checks) + " comparisons";
  return o;
}

Outcome equality_synthesis() {
  Outcome o;
  struct Case {
    Variant v;
    DeltaTuple t;
  };
  const std::vector<Case> cases{{Variant::OLD, DeltaTuple(4, {2, 2})},
                                {Variant::OLD, DeltaTuple(5, {3})},
                                {Variant::IMPROVED, DeltaTuple(5, {2})},
                                {Variant::IMPROVED, DeltaTuple(9, {4, 4})},
                                {Variant::HIGH_A, DeltaTuple(5, {2, 2})},
                                {Variant::HIGH_A, DeltaTuple(7, {2, 2, 2})}};
  double worst_slack = 0.0;
  for (const auto& [v, t] : cases) {
    const std::string tag = std::string(to_string(v)) + " " + t.str();
    const LagrangianPointData d = synthesize_equality_data(t, v, 1.0, 7);
    const EqualityStructure st = detect_equality_structure(d.h, t, v, MatrixXd::Identity(t.n(), t.n()), 1e-12);
    o.require(st.passed, tag + " pattern deviation " + num(st.deviation));
    const InequalityReport r = evaluate(d, v, t);
    worst_slack = std::max(worst_slack, std::abs(r.slack));
    o.require(std::abs(r.slack) <= 1e-9, tag + " slack " + num(r.slack));
    const double h2 = mean_curvature(d.h).squared;
    if (v == Variant::HIGH_A) o.require(h2 == 0.0, tag + " H^2 = " + num(h2));
    if (v == Variant::IMPROVED) o.require(h2 > 0.0, tag + " H^2 = 0");
  }
  o.detail = std::to_string(cases.size()) + " cases, worst |slack| " + num(worst_slack);
  return o;
}

Outcome flat_family() { return verify_suite("thm-9.2", 50, 30.0); }

Outcome sphere_family() { return verify_suite("thm-9.3", 20, 120.0); }

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exotic S^3 reproduction", exotic_s3},
      {"equality graph at the origin", equality_graph},
      {"soundness sweep n = 3..6", soundness_sweep},
      {"oracle equivalence", oracle_equivalence},
      {"coefficient identities", coefficient_identities},
      {"equality synthesis round-trips", equality_synthesis},
      {"flat hyperplane family", flat_family},
      {"CP^n hyperplane family", sphere_family}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu: %s [%.1f s]%s%s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), secs, o.detail.empty() ? "" : " - ", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
