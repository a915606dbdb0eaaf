// JSON-lines and CSV forms of parameter tuples, check reports and sweep
// summaries.
//
// A parameter line looks like
//   {"field":"13","a":"1","b":"1","c":"0","u":"1","v":"12","r":1,"d":6,"phi":"1:1","rule":"Thm2"}
// with elements and φ in their text formats; "rule" is optional.
#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "ppq/check.hpp"
#include "ppq/field.hpp"
#include "ppq/poly.hpp"
#include "ppq/rules.hpp"
#include "ppq/sweep.hpp"

namespace ppq {

using nlohmann::json;

inline json params_to_json(const FamilyParams& P, std::optional<RuleId> rule = std::nullopt) {
  const FieldCtx& F = P.F();
  json j = {{"field", F.spec()},   {"a", F.format(P.a)}, {"b", F.format(P.b)}, {"c", F.format(P.c)},
            {"u", F.format(P.u)},  {"v", F.format(P.v)}, {"r", P.r},           {"d", P.d},
            {"phi", format_poly(F, P.phi)}};
  if (rule) j["rule"] = std::string(rule_name(*rule));
  return j;
}

struct ParsedParams {
  FamilyParams params;
  std::optional<RuleId> rule;
};

/// Accepts the parameter-line format. `field` may be supplied by the caller
/// when the line omits it; defaults: a = b = 1, c = u = v = 0, r = d = 1,
/// phi = 1.
inline ParsedParams params_from_json(const json& j, FieldPtr field = nullptr) {
  if (!j.is_object()) throw std::invalid_argument("parameter line is not a JSON object");
  if (j.contains("field")) {
    const std::string spec = j["field"].is_string() ? j["field"].get<std::string>() : j["field"].dump();
    field = build_field(spec);
  }
  if (!field) throw std::invalid_argument("parameter line has no field");
  const FieldCtx& F = *field;
  auto elem = [&](const char* k, const char* dflt) {
    if (!j.contains(k)) return F.parse(dflt);
    const auto& v = j[k];
    return F.parse(v.is_string() ? v.get<std::string>() : v.dump());
  };
  auto integer = [&](const char* k) -> std::uint64_t {
    if (!j.contains(k)) return 1;
    const auto& v = j[k];
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      throw std::invalid_argument(std::string("'") + k + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
  };
  const Poly phi = j.contains("phi") ? parse_poly(F, j["phi"].get<std::string>()) : Poly::constant(F.one());
  ParsedParams out{FamilyParams::make(field, elem("a", "1"), elem("b", "1"), elem("c", "0"), elem("u", "0"),
                                      elem("v", "0"), integer("r"), integer("d"), phi),
                   std::nullopt};
  if (j.contains("rule") && !j["rule"].is_null()) {
    out.rule = parse_rule(j["rule"].get<std::string>());
    if (!out.rule) throw std::invalid_argument("unknown rule '" + j["rule"].get<std::string>() + "'");
  }
  return out;
}

inline json verdict_json(std::optional<bool> pp) {
  if (!pp) return nullptr;
  return *pp ? "PP" : "NotPP";
}

inline json report_to_json(const CheckReport& r) {
  json j;
  j["field"] = r.params.F().spec();
  j["params"] = params_to_json(r.params);
  j["rule"] = r.rule ? json(std::string(rule_name(*r.rule))) : json(nullptr);
  if (r.rule) {
    j["hypotheses_ok"] = r.eval.hypotheses.ok;
    j["failed_clause"] = r.eval.hypotheses.ok ? json(nullptr) : json(std::string(r.eval.hypotheses.failed_clause));
    j["reduced_condition"] = r.eval.reduced_condition ? json(*r.eval.reduced_condition) : json(nullptr);
    j["predicted"] = std::string(verdict_name(r.eval.predicted));
  } else {
    j["hypotheses_ok"] = nullptr;
    j["failed_clause"] = nullptr;
    j["reduced_condition"] = nullptr;
    j["predicted"] = nullptr;
  }
  j["brute_force"] = verdict_json(r.brute_force);
  j["agree"] = r.agree;
  j["elapsed_us"] = r.elapsed_us;
  if (r.cpp) j["cpp"] = *r.cpp;
  return j;
}

inline json summary_to_json(const SweepSummary& S, bool timings = false) {
  json per_rule = json::object();
  for (const auto& [id, t] : S.per_rule)
    per_rule[std::string(rule_name(id))] = {{"hypotheses_satisfied", t.hypotheses_satisfied},
                                            {"agreements", t.agreements},
                                            {"disagreements", t.disagreements},
                                            {"predicted_pp", t.predicted_pp},
                                            {"predicted_not_pp", t.predicted_not_pp}};
  json dis = json::array();
  for (const auto& r : S.disagreement_reports) dis.push_back(report_to_json(r));
  json j = {{"tuples", S.tuples},
            {"hypotheses_satisfied", S.hypotheses_satisfied},
            {"agreements", S.agreements},
            {"disagreements", S.disagreements},
            {"per_rule", per_rule},
            {"disagreement_reports", dis}};
  if (timings) j["wall_ms"] = S.wall_ms;
  return j;
}

inline constexpr const char* kCsvHeader =
    "field,a,b,c,u,v,r,d,phi,rule,hypotheses_ok,failed_clause,reduced_condition,predicted,brute_force,agree,elapsed_us";

namespace detail {
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}
}  // namespace detail

inline std::string report_to_csv(const CheckReport& r) {
  const FieldCtx& F = r.params.F();
  const auto& P = r.params;
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  std::string out;
  auto put = [&](const std::string& s) {
    if (!out.empty()) out += ',';
    out += detail::csv_field(s);
  };
  put(F.spec());
  put(F.format(P.a));
  put(F.format(P.b));
  put(F.format(P.c));
  put(F.format(P.u));
  put(F.format(P.v));
  put(std::to_string(P.r));
  put(std::to_string(P.d));
  put(format_poly(F, P.phi));
  put(r.rule ? std::string(rule_name(*r.rule)) : "");
  put(r.rule ? b(r.eval.hypotheses.ok) : "");
  put(std::string(r.eval.hypotheses.failed_clause));
  put(r.eval.reduced_condition ? b(*r.eval.reduced_condition) : "");
  put(r.rule ? std::string(verdict_name(r.eval.predicted)) : "");
  put(r.brute_force ? (*r.brute_force ? "PP" : "NotPP") : "");
  put(b(r.agree));
  put(std::to_string(r.elapsed_us));
  return out;
}

}  // namespace ppq
