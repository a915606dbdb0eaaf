#include <cstdint>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "ppq/report.hpp"

using namespace ppq;

namespace {

// Splits one CSV record, honouring quotes.
std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  return out;
}

}  // namespace

TEST(Report, ParamsRoundTrip) {
  const auto j = json::parse(R"({"field":"13","a":"1","b":"1","c":"0","u":"1","v":"12","r":5,"d":6,"phi":"2:1, 0:[3,1]","rule":"Thm2"})");
  const auto p = params_from_json(j);
  EXPECT_EQ(p.rule, RuleId::Thm2);
  EXPECT_EQ(p.params.r, 5u);
  EXPECT_EQ(p.params.d, 6u);
  EXPECT_EQ(p.params.v, p.params.F().neg(p.params.F().one()));
  EXPECT_EQ(params_to_json(p.params, p.rule), j);

  std::mt19937_64 rng(51);
  const auto F = build_field("3^2");
  for (int t = 0; t < 200; ++t) {
    auto any = [&] { return F->element(rng() % F->size()); };
    const auto P = FamilyParams::make(F, any(), any(), any(), any(), any(), 1 + rng() % 9, 8, Poly({any(), any(), any()}));
    const json line = params_to_json(P);
    const auto back = params_from_json(json::parse(line.dump()));
    ASSERT_EQ(params_to_json(back.params), line);
    ASSERT_EQ(back.params.phi_reduced, P.phi_reduced);
    ASSERT_FALSE(back.rule);
  }
}

TEST(Report, ParamsDefaultsAndErrors) {
  const auto F = build_field("5");
  const auto p = params_from_json(json::parse("{}"), F);
  EXPECT_EQ(p.params.a, F->one());
  EXPECT_EQ(p.params.b, F->one());
  EXPECT_TRUE(p.params.c.is_zero() && p.params.u.is_zero() && p.params.v.is_zero());
  EXPECT_EQ(p.params.r, 1u);
  EXPECT_EQ(p.params.d, 1u);
  EXPECT_EQ(p.params.phi, Poly::constant(F->one()));
  // A numeric field spec and numeric element values are accepted too.
  EXPECT_EQ(params_from_json(json::parse(R"({"field":7,"u":3})")).params.u.rep(), build_field("7")->from_int(3).rep());

  EXPECT_THROW(params_from_json(json::parse("[1]"), F), std::invalid_argument);
  EXPECT_THROW(params_from_json(json::parse("{}")), std::invalid_argument);
  EXPECT_THROW(params_from_json(json::parse(R"({"r":-1})"), F), std::invalid_argument);
  EXPECT_THROW(params_from_json(json::parse(R"({"r":"1"})"), F), std::invalid_argument);
  EXPECT_THROW(params_from_json(json::parse(R"({"d":7})"), F), std::invalid_argument);
  EXPECT_THROW(params_from_json(json::parse(R"({"rule":"Thm99"})"), F), std::invalid_argument);
  EXPECT_THROW(params_from_json(json::parse(R"({"a":"[1,2,3]"})"), F), std::invalid_argument);
  EXPECT_THROW(params_from_json(json::parse(R"({"field":"4"})")), std::invalid_argument);
}

TEST(Report, CheckReportJson) {
  const auto F = build_field("11");
  // The q = 11, d = 15 instance with φ = 1: x^3 permutes U_5.
  const auto P = FamilyParams::make(F, F->one(), F->neg(F->one()), F->zero(), F->one(), F->one(), 3, 15,
                                    Poly::constant(F->one()));
  const auto rep = run_check(P, RuleId::Thm9, CheckMode::Both);
  const json j = report_to_json(rep);
  EXPECT_EQ(j["field"], "11");
  EXPECT_EQ(j["rule"], "Thm9");
  EXPECT_EQ(j["hypotheses_ok"], true);
  EXPECT_TRUE(j["failed_clause"].is_null());
  EXPECT_EQ(j["reduced_condition"], true);
  EXPECT_EQ(j["predicted"], "PP");
  EXPECT_EQ(j["brute_force"], "PP");
  EXPECT_EQ(j["agree"], true);
  EXPECT_FALSE(j.contains("cpp"));
  EXPECT_EQ(j["params"], params_to_json(P));

  const auto bad = run_check(P, RuleId::Cor5, CheckMode::Both);
  const json jb = report_to_json(bad);
  EXPECT_EQ(jb["hypotheses_ok"], false);
  EXPECT_EQ(jb["failed_clause"], "p = 2");
  EXPECT_EQ(jb["predicted"], "NotApplicable");
  EXPECT_TRUE(jb["reduced_condition"].is_null());
  EXPECT_TRUE(jb.contains("cpp"));  // the complete-mapping rule always checks f + x

  const json jn = report_to_json(run_check(P, std::nullopt, CheckMode::Brute));
  EXPECT_TRUE(jn["rule"].is_null());
  EXPECT_TRUE(jn["predicted"].is_null());
  EXPECT_EQ(jn["brute_force"], "PP");

  const json jr = report_to_json(run_check(P, RuleId::Thm9, CheckMode::Rule));
  EXPECT_TRUE(jr["brute_force"].is_null());
  EXPECT_EQ(jr["agree"], true);
}

TEST(Report, AgreementSemantics) {
  Evaluation pp{{true, {}}, true, Verdict::PP}, notpp{{true, {}}, false, Verdict::NotPP}, na{};
  EXPECT_TRUE(agreement(RuleId::Thm1, pp, true, std::nullopt));
  EXPECT_FALSE(agreement(RuleId::Thm1, pp, false, std::nullopt));
  EXPECT_FALSE(agreement(RuleId::Thm1, notpp, true, std::nullopt));
  EXPECT_TRUE(agreement(RuleId::Thm1, na, true, std::nullopt));
  EXPECT_TRUE(agreement(RuleId::Thm1, pp, std::nullopt, std::nullopt));
  EXPECT_TRUE(agreement(RuleId::Cor5, pp, true, true));
  EXPECT_FALSE(agreement(RuleId::Cor5, pp, true, false));
  EXPECT_FALSE(agreement(RuleId::Cor5, pp, false, false));
  EXPECT_TRUE(agreement(RuleId::Cor5, na, false, false));
}

TEST(Report, SummaryJson) {
  const auto F = build_field("3");
  const Grid grid(F, parse_grid("a = 1"));
  SweepOptions opt;
  opt.rules = {RuleId::Thm1, RuleId::Thm3, RuleId::Cor5};
  const auto S = run_sweep(grid, opt);
  const json j = summary_to_json(S);
  EXPECT_EQ(j["tuples"], S.tuples);
  EXPECT_EQ(j["agreements"].get<std::uint64_t>() + j["disagreements"].get<std::uint64_t>(),
            j["hypotheses_satisfied"].get<std::uint64_t>());
  EXPECT_EQ(j["per_rule"]["Cor5"]["hypotheses_satisfied"], 0);
  EXPECT_EQ(j["per_rule"]["Thm1"]["hypotheses_satisfied"], S.tuples);
  for (const auto& [name, t] : j["per_rule"].items())
    EXPECT_EQ(t["agreements"].get<std::uint64_t>() + t["disagreements"].get<std::uint64_t>(),
              t["hypotheses_satisfied"].get<std::uint64_t>())
        << name;
  EXPECT_TRUE(j["disagreement_reports"].empty());
  EXPECT_FALSE(j.contains("wall_ms"));
  EXPECT_TRUE(summary_to_json(S, true).contains("wall_ms"));
}

TEST(Report, Csv) {
  const auto header = csv_split(kCsvHeader);
  EXPECT_EQ(header.size(), 17u);
  EXPECT_EQ(header.front(), "field");
  EXPECT_EQ(header.back(), "elapsed_us");

  const auto F = build_field("13");
  const auto P = FamilyParams::make(F, F->one(), F->one(), F->zero(), F->one(), F->neg(F->one()), 1, 6,
                                    parse_poly(*F, "2:1, 1:[0,1]"));
  const auto row = csv_split(report_to_csv(run_check(P, RuleId::Thm2, CheckMode::Both)));
  ASSERT_EQ(row.size(), header.size());
  EXPECT_EQ(row[0], "13");
  EXPECT_EQ(row[5], "12");
  EXPECT_EQ(row[8], "2:1, 1:[0,1]");
  EXPECT_EQ(row[9], "Thm2");
  EXPECT_EQ(row[10], "true");
  EXPECT_EQ(row[11], "");
  EXPECT_EQ(row[15], "true");
  EXPECT_EQ(row[14], brute_force_pp(P) ? "PP" : "NotPP");
  EXPECT_EQ(row[13], predict(RuleId::Thm2, P) == Verdict::PP ? "PP" : "NotPP");

  EXPECT_EQ(detail::csv_field("a\"b"), "\"a\"\"b\"");
  EXPECT_EQ(detail::csv_field("plain"), "plain");
}
