#pragma once

// JSON input of point data, JSON/CSV output of reports.
//
// Input schema: {"n": int, "c": real, "h": [[A, B, C, value], ...]} with
// 1-based indices. Numbers are written with 17 significant digits so that
// doubles round-trip exactly and equal runs produce identical bytes.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "chendelta/audit.hpp"
#include "chendelta/cubic_form.hpp"
#include "chendelta/delta_opt.hpp"
#include "chendelta/error.hpp"
#include "chendelta/inequality.hpp"
#include "chendelta/verify.hpp"

namespace chendelta {

using ojson = nlohmann::ordered_json;

// Malformed input file. `line` is 1-based, 0 when unknown.
class InputError : public InvalidArgument {
 public:
  InputError(const std::string& what, int line)
      : InvalidArgument(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline LagrangianPointData parse_point_data(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + int(std::count(text.begin(), text.begin() + long(upto ? upto - 1 : 0), '\n'));
    throw InputError(std::string("malformed JSON: ") + e.what(), line);
  }
  if (!j.is_object()) throw InputError("top level must be an object", 0);
  for (const char* key : {"n", "c", "h"})
    if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'", 0);
  if (!j["n"].is_number_integer()) throw InputError("field 'n' must be an integer", 0);
  if (!j["c"].is_number()) throw InputError("field 'c' must be a number", 0);
  if (!j["h"].is_array()) throw InputError("field 'h' must be an array", 0);
  const int n = j["n"].get<int>();
  if (n < 2) throw InputError("field 'n' must be >= 2", 0);
  std::vector<RawCoefficient> raw;
  for (std::size_t i = 0; i < j["h"].size(); ++i) {
    const auto& e = j["h"][i];
    const std::string where = "field 'h' entry " + std::to_string(i);
    if (!e.is_array() || e.size() != 4) throw InputError(where + " must be [A, B, C, value]", 0);
    for (int k = 0; k < 3; ++k)
      if (!e[k].is_number_integer()) throw InputError(where + " has a non-integer index", 0);
    if (!e[3].is_number()) throw InputError(where + " has a non-numeric value", 0);
    raw.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<double>()});
  }
  CubicForm h = validate_cubic(n, raw);
  return LagrangianPointData(j["c"].get<double>(), std::move(h));
}

inline LagrangianPointData load_point_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_point_data(ss.str());
}

inline ojson point_data_json(const LagrangianPointData& d) {
  ojson j;
  j["n"] = d.n;
  j["c"] = d.c;
  ojson h = ojson::array();
  for (const auto& [t, v] : d.h.coefficients()) h.push_back({t[0] + 1, t[1] + 1, t[2] + 1, v});
  j["h"] = h;
  return j;
}

inline std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

// indent < 0 means single-line output with spaces after separators, used
// for arrays inside an indented document.
inline void dump_rec(const ojson& j, std::string& out, int indent, int level) {
  const int width = std::max(indent, 0);
  const std::string pad(std::size_t(width) * (level + 1), ' ');
  const std::string close(std::size_t(width) * level, ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += indent < 0 ? std::string(", ") : std::string(",") + nl;
        first = false;
        out += pad + ojson(it.key()).dump() + (indent != 0 ? ": " : ":");
        dump_rec(it.value(), out, indent, level + 1);
      }
      out += nl + close + "}";
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      bool has_object = false;
      for (const auto& e : j) has_object = has_object || e.is_object();
      if (has_object && indent > 0) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
          out += pad;
          dump_rec(j[i], out, indent, level + 1);
          out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close + "]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += indent != 0 ? ", " : ",";
        first = false;
        dump_rec(e, out, indent != 0 ? -1 : 0, 0);
      }
      out += "]";
      return;
    }
    case ojson::value_t::number_float: out += format_number(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

}  // namespace detail

// Objects are indented, arrays of scalars kept on one line, floats at 17 digits.
inline std::string dump_json(const ojson& j, int indent = 2) {
  std::string out;
  detail::dump_rec(j, out, indent, 0);
  return out;
}

inline ojson tuple_json(const DeltaTuple& t) {
  ojson a = ojson::array();
  for (int p : t.parts()) a.push_back(p);
  return a;
}

inline ojson diagnostics_json(const DeltaDiagnostics& d) {
  ojson j;
  j["restarts"] = d.restarts;
  j["gap"] = d.gap ? ojson(*d.gap) : ojson(nullptr);
  j["converged"] = d.converged;
  j["converged_restarts"] = d.converged_restarts;
  j["iterations"] = d.iterations;
  return j;
}

inline ojson report_json(const InequalityReport& r) {
  ojson j;
  j["variant"] = std::string(to_string(r.variant));
  j["tuple"] = tuple_json(r.tuple);
  j["n"] = r.n();
  j["c"] = r.c;
  j["delta"] = r.delta;
  j["h2"] = r.h2;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["equality"] = r.equality;
  j["diagnostics"] = diagnostics_json(r.diagnostics);
  return j;
}

inline ojson delta_json(const DeltaResult& d, const DeltaTuple& t) {
  ojson j;
  j["tuple"] = tuple_json(t);
  j["n"] = t.n();
  j["delta"] = d.value;
  j["tau"] = d.tau;
  j["inf"] = d.inf;
  ojson cfg;
  ojson blocks = ojson::array();
  for (const auto& b : d.config.blocks) {
    ojson bl = ojson::array();
    for (int c : b) {
      ojson col = ojson::array();
      for (int r = 0; r < d.config.frame.rows(); ++r) col.push_back(d.config.frame(r, c));
      bl.push_back(col);
    }
    blocks.push_back(bl);
  }
  cfg["blocks"] = blocks;
  j["argmin"] = cfg;
  j["diagnostics"] = diagnostics_json(d.diagnostics);
  return j;
}

inline ojson verify_json(const VerifyReport& r) {
  ojson j;
  j["example"] = r.example;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  ojson claims = ojson::array();
  for (const auto& c : r.claims) {
    ojson cj;
    cj["claim"] = c.name;
    cj["relation"] = c.relation;
    cj["bound"] = c.bound;
    cj["worst"] = c.worst;
    cj["evaluations"] = c.evaluations;
    cj["passed"] = c.passed();
    claims.push_back(cj);
  }
  j["claims"] = claims;
  return j;
}

inline ojson audit_json(const AuditSummary& s) {
  ojson j;
  j["n"] = s.n;
  j["count"] = s.count;
  j["seed"] = s.seed;
  j["sound"] = s.sound();
  ojson es = ojson::array();
  for (const auto& e : s.entries) {
    ojson ej;
    ej["variant"] = std::string(to_string(e.variant));
    ej["tuple"] = tuple_json(e.tuple);
    ej["min_slack"] = e.min_slack;
    ej["min_relative_slack"] = e.min_relative_slack;
    ej["worst_sample"] = e.worst_sample;
    ej["evaluations"] = e.evaluations;
    ej["failures"] = e.failures;
    ej["unconverged"] = e.unconverged;
    es.push_back(ej);
  }
  j["entries"] = es;
  return j;
}

inline std::string csv_header() { return "variant,tuple,n,c,delta,h2,rhs,slack,equality"; }

inline std::string csv_row(const InequalityReport& r) {
  std::string parts;
  for (std::size_t i = 0; i < r.tuple.parts().size(); ++i)
    parts += (i ? "," : "") + std::to_string(r.tuple.parts()[i]);
  return std::string(to_string(r.variant)) + ",\"" + parts + "\"," + std::to_string(r.n()) + "," +
         format_number(r.c) + "," + format_number(r.delta) + "," + format_number(r.h2) + "," +
         format_number(r.rhs) + "," + format_number(r.slack) + "," +
         (r.equality ? "true" : "false");
}

// Per-sample export of a verify run.
inline std::string sample_csv(const VerifyReport& r) {
  std::ostringstream os;
  os << "example,sample,chart_point,ambient_point,tau,h2,slack\n";
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    const auto& rec = r.records[i];
    std::string cp, ap, sl;
    for (int a = 0; a < rec.chart_point.size(); ++a) cp += (a ? " " : "") + format_number(rec.chart_point[a]);
    for (int a = 0; a < rec.ambient_point.size(); ++a) {
      ap += (a ? " " : "") + format_number(rec.ambient_point[a].real()) + " " +
            format_number(rec.ambient_point[a].imag());
    }
    for (const auto& [k, v] : rec.slack) sl += (sl.empty() ? "" : " ") + k + "=" + format_number(v);
    os << r.example << ',' << i << ",\"" << cp << "\",\"" << ap << "\"," << format_number(rec.tau)
       << ',' << format_number(rec.h2) << ",\"" << sl << "\"\n";
  }
  return os.str();
}

}  // namespace chendelta
