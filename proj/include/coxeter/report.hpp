#pragma once

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "coxeter/boundary.hpp"
#include "coxeter/catalog.hpp"
#include "coxeter/verdict.hpp"

namespace coxeter::io {

inline constexpr const char* kToolVersion = "0.3.0";

enum class ReportKind {
  Verdict,
  Density,
  NorthSouth,
  Contraction,
  Minimality,
  Scrambled,
  DualPair,
  Classification,
  NormalForm,
  Ball,
};

inline const char* to_string(ReportKind k) {
  switch (k) {
    case ReportKind::Verdict: return "verdict";
    case ReportKind::Density: return "density";
    case ReportKind::NorthSouth: return "north_south";
    case ReportKind::Contraction: return "contraction";
    case ReportKind::Minimality: return "minimality";
    case ReportKind::Scrambled: return "scrambled";
    case ReportKind::DualPair: return "dual_pair";
    case ReportKind::Classification: return "classification";
    case ReportKind::NormalForm: return "normal_form";
    case ReportKind::Ball: return "ball";
  }
  return "?";
}

inline ReportKind report_kind_from_string(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(ReportKind::Ball); ++k)
    if (s == to_string(static_cast<ReportKind>(k))) return static_cast<ReportKind>(k);
  throw Error(ErrorKind::ParseError, "unknown report kind '" + s + "'");
}

/// One run: what went in, what came out, and every tolerance used.
struct Report {
  ReportKind kind = ReportKind::Verdict;
  json inputs = json::object();
  json outputs = json::object();
  std::string version = kToolVersion;
  std::map<std::string, double> tolerances;

  friend bool operator==(const Report&, const Report&) = default;
};

inline json to_json(const Report& r) {
  return json{{"kind", to_string(r.kind)},
              {"inputs", r.inputs},
              {"outputs", r.outputs},
              {"version", r.version},
              {"tolerances", r.tolerances}};
}

inline Report report_from_json(const json& j) {
  try {
    Report r;
    r.kind = report_kind_from_string(j.at("kind").get<std::string>());
    r.inputs = j.at("inputs");
    r.outputs = j.at("outputs");
    r.version = j.at("version").get<std::string>();
    r.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

/// Canonical text: two-space indentation, sorted keys, trailing newline.
inline std::string serialize(const Report& r) { return to_json(r).dump(2) + "\n"; }

inline Report parse_report(const std::string& text) {
  try {
    return report_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

// ---------------------------------------------------------------------------
// Value encoders shared by the CLI and tests

inline json classification_to_json(const ComponentClassification& c) {
  return json{{"generators", c.generators},
              {"kind", to_string(c.type.kind)},
              {"name", c.type.name},
              {"signature", {c.signature.n_plus, c.signature.n_zero, c.signature.n_minus}}};
}

inline json verdict_to_json(const RankOneVerdict& v) {
  json comps = json::array();
  for (const auto& c : v.components) comps.push_back(classification_to_json(c));
  json conds = json::array();
  for (const auto& c : v.conditions)
    conds.push_back(json{{"index", c.index},
                         {"statement", c.statement},
                         {"truth", to_string(c.truth)},
                         {"basis", to_string(c.basis)}});
  return json{{"verdict", to_string(v.verdict)},
              {"tilde_S", v.tilde_S},
              {"components", comps},
              {"conditions", conds},
              {"narrative", v.narrative}};
}

inline json element_to_json(const GroupElement& g) {
  return json{{"word", g.normal_form}, {"length", g.length()}};
}

inline json points_to_json(std::span<const boundary::BoundaryPoint> pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(p.theta);
  return out;
}

inline json arc_to_json(const boundary::Arc& a) {
  return json{{"start", a.start}, {"extent", a.extent}, {"closed", a.closed}};
}

}  // namespace coxeter::io
