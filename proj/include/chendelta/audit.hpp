#pragma once

// Soundness sweep: random Lagrangian point data against every applicable
// inequality.
//
// Sample s draws from the stream (seed, s): c uniform on [-1, 1], then every
// independent cubic coefficient (sorted triple) from N(0, 1). delta is
// computed once per tuple and shared by the variants covering it.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "chendelta/cubic_form.hpp"
#include "chendelta/delta_opt.hpp"
#include "chendelta/delta_tuple.hpp"
#include "chendelta/inequality.hpp"
#include "chendelta/random.hpp"

namespace chendelta {

struct AuditOptions {
  int n = 3;
  int count = 100;
  std::uint64_t seed = 0;
  std::vector<Variant> variants{kAuditVariants.begin(), kAuditVariants.end()};
  DeltaOptions delta{.restarts = 8};
  double rel_tol = 1e-9;
};

struct AuditEntry {
  Variant variant;
  DeltaTuple tuple;
  double min_slack = std::numeric_limits<double>::infinity();
  // min of slack / (1 + |rhs|)
  double min_relative_slack = std::numeric_limits<double>::infinity();
  int worst_sample = -1;
  int evaluations = 0;
  int failures = 0;
  int unconverged = 0;
};

struct AuditSummary {
  int n = 0;
  int count = 0;
  std::uint64_t seed = 0;
  std::vector<AuditEntry> entries;
  bool sound() const {
    for (const auto& e : entries)
      if (e.failures > 0) return false;
    return true;
  }
};

inline LagrangianPointData audit_sample(int n, std::uint64_t seed, int s) {
  Rng rng = make_rng(seed, std::uint64_t(s));
  std::uniform_real_distribution<double> uc(-1.0, 1.0);
  const double c = uc(rng);
  return LagrangianPointData(c, random_cubic(rng, n), "audit");
}

// `on_report`, when set, sees every individual report (sample index first).
inline AuditSummary run_audit(
    const AuditOptions& opt,
    const std::function<void(int, const InequalityReport&)>& on_report = {}) {
  if (opt.n < 3) throw InvalidArgument("audit needs n >= 3");
  if (opt.count < 1) throw InvalidArgument("audit count must be >= 1");
  AuditSummary sum;
  sum.n = opt.n;
  sum.count = opt.count;
  sum.seed = opt.seed;
  const auto tuples = enumerate_tuples(opt.n);
  struct Job {
    DeltaTuple tuple;
    std::vector<std::size_t> entry;  // indices into sum.entries
    std::vector<Variant> variants;
  };
  std::vector<Job> jobs;
  for (const auto& t : tuples) {
    Job j{t, {}, {}};
    for (Variant v : opt.variants) {
      if (!admissible(v, t)) continue;
      j.entry.push_back(sum.entries.size());
      j.variants.push_back(v);
      sum.entries.push_back(AuditEntry{v, t});
    }
    if (!j.variants.empty()) jobs.push_back(std::move(j));
  }
  for (int s = 0; s < opt.count; ++s) {
    const LagrangianPointData data = audit_sample(opt.n, opt.seed, s);
    const CurvatureTensor R = gauss_curvature(data);
    const double h2 = mean_curvature(data.h).squared;
    for (const auto& job : jobs) {
      DeltaOptions dopt = opt.delta;
      dopt.seed = opt.delta.seed ^ (std::uint64_t(s) * 0x9E3779B97F4A7C15ull);
      const DeltaResult d = delta_invariant(R, job.tuple, dopt);
      for (std::size_t i = 0; i < job.variants.size(); ++i) {
        const InequalityReport r = make_report(job.variants[i], job.tuple, data.c, h2, d);
        AuditEntry& e = sum.entries[job.entry[i]];
        ++e.evaluations;
        const double rel = r.slack / (1.0 + std::abs(r.rhs));
        if (r.slack < e.min_slack) e.min_slack = r.slack;
        if (rel < e.min_relative_slack) {
          e.min_relative_slack = rel;
          e.worst_sample = s;
        }
        if (!r.sound(opt.rel_tol)) ++e.failures;
        if (!d.diagnostics.converged) ++e.unconverged;
        if (on_report) on_report(s, r);
      }
    }
  }
  return sum;
}

}  // namespace chendelta
