// chendelta: verification runs, delta on user data, soundness audits.
//
// Exit codes: 0 success, 1 claim or soundness failure, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chendelta/chendelta.hpp"

namespace {

using namespace chendelta;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Output {
  std::string format = "json";
  std::string path;
};

void emit(const Output& out, const std::string& text) {
  if (out.path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + out.path + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

void add_output_options(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", out.path, "Write the report to this file instead of stdout");
}

void add_delta_options(CLI::App* cmd, DeltaOptions& d) {
  cmd->add_option("--restarts", d.restarts, "Optimizer restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iterations", d.max_iterations, "Iteration cap per restart descent")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", d.threads, "Worker threads for restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

// "3..6" or "4".
std::vector<int> parse_n_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int n = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {n};
    }
    const std::string lo_s = s.substr(0, dots), hi_s = s.substr(dots + 2);
    const int lo = std::stoi(lo_s, &used);
    if (used != lo_s.size()) throw std::invalid_argument(s);
    const int hi = std::stoi(hi_s, &used);
    if (used != hi_s.size()) throw std::invalid_argument(s);
    if (hi < lo) throw InvalidArgument("empty dimension range '" + s + "'");
    std::vector<int> ns;
    for (int n = lo; n <= hi; ++n) ns.push_back(n);
    return ns;
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad dimension '" + s + "', expected N or LO..HI");
  }
}

std::vector<Variant> parse_variant_list(const std::string& s) {
  std::vector<Variant> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Variant v = parse_variant(item);
    bool in_audit = false;
    for (Variant a : kAuditVariants) in_audit = in_audit || a == v;
    if (!in_audit) throw InvalidArgument("variant '" + item + "' is not part of the audit set");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("no variants given");
  return out;
}

int run_verify_cmd(const std::string& example, int samples, std::uint64_t seed,
                   const DeltaOptions& dopt, const Output& out) {
  const VerifyReport rep = run_verify(example, samples, seed, dopt);
  emit(out, out.format == "csv" ? sample_csv(rep) : dump_json(verify_json(rep)));
  if (const Claim* bad = rep.failing()) {
    std::fprintf(stderr, "claim failed: %s (worst %s, bound %s %s)\n", bad->name.c_str(),
                 format_number(bad->worst).c_str(), bad->relation.c_str(),
                 format_number(bad->bound).c_str());
    return kFailure;
  }
  return kOk;
}

int run_delta_cmd(const std::string& input, const std::string& tuple_spec,
                  const std::string& variant_spec, const EvaluateOptions& eopt,
                  const Output& out) {
  const LagrangianPointData data = load_point_data(input);
  const DeltaTuple t = parse_tuple(data.n, tuple_spec);

  std::vector<Variant> variants;
  if (variant_spec == "auto") {
    for (Variant v : kAuditVariants)
      if (admissible(v, t)) variants.push_back(v);
  } else {
    const Variant v = parse_variant(variant_spec);
    if (auto why = inadmissibility(v, t)) throw AdmissibilityError(*why);
    variants.push_back(v);
  }

  const DeltaResult d =
      delta_invariant(gauss_curvature(data), t, eopt.delta);
  const double h2 = mean_curvature(data.h).squared;
  std::vector<InequalityReport> reports;
  for (Variant v : variants) reports.push_back(make_report(v, t, data.c, h2, d, eopt.eq_tol));

  if (out.format == "csv") {
    std::string text = csv_header() + "\n";
    for (const auto& r : reports) text += csv_row(r) + "\n";
    emit(out, text);
  } else {
    ojson j = delta_json(d, t);
    j["c"] = data.c;
    j["h2"] = h2;
    ojson rs = ojson::array();
    for (const auto& r : reports) rs.push_back(report_json(r));
    j["reports"] = rs;
    emit(out, dump_json(j));
  }
  if (!d.diagnostics.converged) std::fprintf(stderr, "warning: optimizer did not converge\n");
  return kOk;
}

int run_audit_cmd(const std::string& n_spec, const AuditOptions& base, const Output& out) {
  const std::vector<int> ns = parse_n_range(n_spec);
  for (int n : ns)
    if (n < 3 || n > 6) throw InvalidArgument("audit supports 3 <= n <= 6, got " + std::to_string(n));
  if (base.count < 1) throw InvalidArgument("count must be >= 1");

  std::vector<AuditSummary> sums;
  for (int n : ns) {
    AuditOptions o = base;
    o.n = n;
    sums.push_back(run_audit(o));
  }

  bool sound = true;
  for (const auto& s : sums) sound = sound && s.sound();
  if (out.format == "csv") {
    std::string text =
        "n,variant,tuple,evaluations,min_slack,min_relative_slack,worst_sample,failures,unconverged\n";
    for (const auto& s : sums)
      for (const auto& e : s.entries) {
        std::string parts;
        for (std::size_t i = 0; i < e.tuple.parts().size(); ++i)
          parts += (i ? "," : "") + std::to_string(e.tuple.parts()[i]);
        text += std::to_string(s.n) + "," + std::string(to_string(e.variant)) + ",\"" + parts +
                "\"," + std::to_string(e.evaluations) + "," + format_number(e.min_slack) + "," +
                format_number(e.min_relative_slack) + "," + std::to_string(e.worst_sample) + "," +
                std::to_string(e.failures) + "," + std::to_string(e.unconverged) + "\n";
      }
    emit(out, text);
  } else {
    ojson j;
    j["sound"] = sound;
    j["rel_tol"] = base.rel_tol;
    ojson arr = ojson::array();
    for (const auto& s : sums) arr.push_back(audit_json(s));
    j["audits"] = arr;
    emit(out, dump_json(j));
  }
  if (!sound) {
    for (const auto& s : sums)
      for (const auto& e : s.entries)
        if (e.failures > 0) {
          std::fprintf(stderr, "unsound: n=%d %s %s min relative slack %s\n", s.n,
                       std::string(to_string(e.variant)).c_str(), e.tuple.str().c_str(),
                       format_number(e.min_relative_slack).c_str());
        }
    return kFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delta-invariant inequalities for Lagrangian submanifolds of complex space forms"};
  app.require_subcommand(1);

  // verify
  std::string example;
  int samples = 20;
  std::uint64_t verify_seed = 0;
  DeltaOptions verify_delta;
  Output verify_out;
  auto* verify = app.add_subcommand("verify", "Run the claim suite of a gallery example");
  verify->add_option("example", example, "exotic-s3 | graph-8.2 | thm-9.2 | thm-9.3")->required();
  verify->add_option("--samples", samples, "Chart points to sample")->capture_default_str();
  verify->add_option("--seed", verify_seed, "Sampling seed")->capture_default_str();
  verify->add_option("--restarts", verify_delta.restarts, "Optimizer restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output_options(verify, verify_out);

  // delta
  std::string input, tuple_spec, variant_spec = "auto";
  EvaluateOptions eopt;
  Output delta_out;
  auto* delta = app.add_subcommand("delta", "Compute delta and inequality reports for point data");
  delta->add_option("--input", input, "Point data JSON {n, c, h}")->required();
  delta->add_option("--tuple", tuple_spec, "Tuple, e.g. 2,3")->required();
  delta->add_option("--variant", variant_spec, "old|first|oprea|improved|high-a|k1|auto")
      ->capture_default_str();
  delta->add_option("--eq-tol", eopt.eq_tol, "Tolerance of the equality flag")->capture_default_str();
  delta->add_option("--seed", eopt.delta.seed, "Seed for the optimizer restarts")
      ->capture_default_str();
  add_delta_options(delta, eopt.delta);
  add_output_options(delta, delta_out);

  // audit
  std::string n_spec = "3";
  std::string variants_spec;
  AuditOptions aopt;
  Output audit_out;
  auto* audit = app.add_subcommand("audit", "Soundness sweep over random point data");
  audit->add_option("--n", n_spec, "Dimension N or range LO..HI (3..6)")->capture_default_str();
  audit->add_option("--count", aopt.count, "Random samples per dimension")->capture_default_str();
  audit->add_option("--variants", variants_spec, "Comma-separated subset (default: all)");
  audit->add_option("--rel-tol", aopt.rel_tol, "Allowed slack / (1 + |rhs|) below zero")
      ->capture_default_str();
  audit->add_option("--seed", aopt.seed, "Seed of the random point data")->capture_default_str();
  add_delta_options(audit, aopt.delta);
  add_output_options(audit, audit_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return run_verify_cmd(example, samples, verify_seed, verify_delta, verify_out);
    if (*delta) return run_delta_cmd(input, tuple_spec, variant_spec, eopt, delta_out);
    if (*audit) {
      if (!variants_spec.empty()) aopt.variants = parse_variant_list(variants_spec);
      return run_audit_cmd(n_spec, aopt, audit_out);
    }
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kUsage;
}
