// One prediction checked against the brute-force oracle.
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "ppq/families.hpp"
#include "ppq/rules.hpp"

namespace ppq {

enum class CheckMode { Brute, Rule, Both };

struct CheckReport {
  FamilyParams params;
  std::optional<RuleId> rule;  // absent for a brute-force-only check
  Evaluation eval;
  std::optional<bool> brute_force;  // f is a PP; absent in rule-only mode
  std::optional<bool> cpp;          // f and f + x are PPs; only when asked for
  bool agree = true;
  std::uint64_t elapsed_us = 0;
};

/// Whether a prediction is consistent with what brute force observed.
/// Only a PP/NotPP claim can disagree; a sufficient-only rule claims only
/// PP (and for the complete-mapping rule, that f + x is a PP as well).
inline bool agreement(RuleId id, const Evaluation& ev, std::optional<bool> brute, std::optional<bool> cpp) {
  if (!brute || ev.predicted == Verdict::NotApplicable) return true;
  if (rule_semantics(id) == Semantics::SufficientOnly)
    return ev.predicted != Verdict::PP || (*brute && cpp.value_or(true));
  return (ev.predicted == Verdict::PP) == *brute;
}

/// The complete-mapping rule is checked on both f and f + x.
inline bool rule_claims_cpp(RuleId id) { return id == RuleId::Cor5; }

inline CheckReport run_check(const FamilyParams& P, std::optional<RuleId> rule, CheckMode mode, bool want_cpp = false) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport rep{P, rule, {}, {}, {}, true, 0};
  if (rule && mode != CheckMode::Brute) rep.eval = evaluate(*rule, P);
  if (mode != CheckMode::Rule) {
    OccupancySet scratch;
    const auto ev = make_evaluator(P);
    rep.brute_force = ev.is_pp(P.u, P.v, scratch);
    if (want_cpp || (rule && rule_claims_cpp(*rule))) rep.cpp = *rep.brute_force && ev.is_pp(P.u, P.F().add(P.v, P.F().one()), scratch);
  }
  if (rule) rep.agree = agreement(*rule, rep.eval, rep.brute_force, rep.cpp);
  rep.elapsed_us = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count());
  return rep;
}

}  // namespace ppq
