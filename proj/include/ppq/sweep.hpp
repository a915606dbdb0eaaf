// Cross-validation and search over a parameter grid.
//
// Work is split into tasks: one outer grid point each (exhaustive mode) or
// a block of samples (budget mode). Workers pull task indices from a shared
// counter and write into a per-task slot; slots are merged in index order,
// so the result does not depend on the number of workers.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <iterator>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "ppq/check.hpp"
#include "ppq/grid.hpp"
#include "ppq/rules.hpp"

namespace ppq {

struct SweepOptions {
  std::vector<RuleId> rules;
  unsigned workers = 1;
  std::optional<std::uint64_t> budget;  // sample this many tuples instead of enumerating
  std::uint64_t seed = 0;
  bool keep_reports = false;  // keep every check whose hypotheses hold
  bool timings = false;       // fill elapsed_us; off keeps output reproducible
  bool search = false;        // collect confirmed PPs
  bool cpp = false;           // search for complete PPs instead
};

struct RuleTally {
  std::uint64_t hypotheses_satisfied = 0, agreements = 0, disagreements = 0;
  std::uint64_t predicted_pp = 0, predicted_not_pp = 0;

  RuleTally& operator+=(const RuleTally& o) {
    hypotheses_satisfied += o.hypotheses_satisfied;
    agreements += o.agreements;
    disagreements += o.disagreements;
    predicted_pp += o.predicted_pp;
    predicted_not_pp += o.predicted_not_pp;
    return *this;
  }
};

struct SweepSummary {
  std::uint64_t tuples = 0;
  std::uint64_t hypotheses_satisfied = 0;  // (tuple, rule) pairs
  std::uint64_t agreements = 0, disagreements = 0;
  std::vector<std::pair<RuleId, RuleTally>> per_rule;
  std::vector<CheckReport> disagreement_reports;
  std::vector<CheckReport> reports;
  std::vector<CheckReport> found;
  double wall_ms = 0;
};

/// Stable mixing of (seed, index) into an RNG seed.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace detail {

struct TaskResult {
  std::uint64_t tuples = 0;
  std::vector<RuleTally> tally;
  std::vector<CheckReport> disagreements, reports, found;
};

inline std::optional<Decomposition> abc_decomposition(const FamilyParams& P) {
  if (P.a.is_zero() || P.b.is_zero()) return std::nullopt;
  return decompose(P.F(), P.a, P.b, P.c);
}

class TupleChecker {
 public:
  TupleChecker(const SweepOptions& opt, TaskResult& out) : opt_(opt), out_(out) {
    out_.tally.resize(opt.rules.size());
  }

  /// Call before run() with an evaluator that may reuse a previous one's address.
  void forget_row() { row_.clear(); }

  /// `dec` is decompose(a, b, c) when a, b are nonzero, else nullopt.
  void run(const FamilyParams& P, const FamilyEvaluator& ev, const std::optional<Decomposition>& dec) {
    std::chrono::steady_clock::time_point t0;
    if (opt_.timings) t0 = std::chrono::steady_clock::now();
    ++out_.tuples;
    const RuleCtx ctx(P, dec);
    std::optional<bool> brute, cpp;
    auto get_brute = [&] {
      if (!brute) brute = ev.is_pp_row(row_for(ev, P.u), P.v, scratch_);
      return *brute;
    };
    auto get_cpp = [&] {
      if (!cpp) cpp = get_brute() && ev.is_pp_row(row_for(ev, P.u), P.F().add(P.v, P.F().one()), scratch_);
      return *cpp;
    };
    bool emitted = false;
    pending_.clear();
    for (std::size_t k = 0; k < opt_.rules.size(); ++k) {
      const RuleId id = opt_.rules[k];
      Evaluation e = evaluate(id, ctx);
      if (!e.hypotheses.ok) continue;
      RuleTally& t = out_.tally[k];
      ++t.hypotheses_satisfied;
      if (e.predicted == Verdict::PP) ++t.predicted_pp;
      if (e.predicted == Verdict::NotPP) ++t.predicted_not_pp;
      get_brute();
      if (rule_claims_cpp(id) || opt_.cpp) get_cpp();
      const bool ok = agreement(id, e, brute, cpp);
      ok ? ++t.agreements : ++t.disagreements;
      const bool confirmed = e.predicted == Verdict::PP && *brute && (!opt_.cpp || *cpp);
      if (!ok || opt_.keep_reports || (opt_.search && confirmed && !emitted)) {
        pending_.push_back({id, std::move(e), ok, confirmed && !emitted && opt_.search});
        if (pending_.back().emit) emitted = true;
      }
    }
    if (opt_.search && opt_.rules.empty() && (opt_.cpp ? get_cpp() : get_brute())) {
      out_.found.push_back(CheckReport{P, std::nullopt, {}, brute, cpp, true, 0});
    }
    if (pending_.empty()) return;
    const std::uint64_t us =
        opt_.timings ? static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(
                                                      std::chrono::steady_clock::now() - t0)
                                                      .count())
                     : 0;
    for (auto& p : pending_) {
      CheckReport rep{P, p.id, std::move(p.eval), brute, cpp, p.ok, us};
      if (!p.ok) out_.disagreements.push_back(rep);
      if (p.emit) out_.found.push_back(rep);
      if (opt_.keep_reports) out_.reports.push_back(std::move(rep));
    }
  }

 private:
  struct Pending {
    RuleId id;
    Evaluation eval;
    bool ok;
    bool emit;
  };
  // Inner loops run v fastest, so one cached row per (evaluator, u) suffices.
  const std::vector<FieldElem>& row_for(const FamilyEvaluator& ev, FieldElem u) {
    if (row_ev_ != &ev || row_u_ != u || row_.empty()) {
      ev.row(u, row_);
      row_ev_ = &ev;
      row_u_ = u;
    }
    return row_;
  }

  const SweepOptions& opt_;
  TaskResult& out_;
  OccupancySet scratch_;
  std::vector<FieldElem> row_;
  const FamilyEvaluator* row_ev_ = nullptr;
  FieldElem row_u_;
  std::vector<Pending> pending_;
};

template <class Fn>
void run_tasks(std::size_t count, unsigned workers, Fn&& task) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

inline SweepSummary run_sweep(const Grid& grid, const SweepOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const FieldCtx& F = *grid.field();
  std::vector<detail::TaskResult> results;

  if (opt.budget) {
    constexpr std::uint64_t kBlock = 16;
    const std::uint64_t n = *opt.budget;
    const std::size_t tasks = static_cast<std::size_t>((n + kBlock - 1) / kBlock);
    results.resize(tasks);
    detail::run_tasks(tasks, opt.workers, [&](std::size_t t) {
      detail::TupleChecker checker(opt, results[t]);
      for (std::uint64_t i = t * kBlock; i < std::min(n, (t + 1) * kBlock); ++i) {
        std::mt19937_64 rng(sample_seed(opt.seed, i));
        // A few redraws for grids whose dependent sets can come up empty.
        for (int attempt = 0; attempt < 64; ++attempt) {
          if (auto P = grid.sample(rng)) {
            checker.forget_row();
            checker.run(*P, make_evaluator(*P), detail::abc_decomposition(*P));
            break;
          }
        }
      }
    });
  } else {
    const auto outer = grid.outer_points();
    results.resize(outer.size());
    detail::run_tasks(outer.size(), opt.workers, [&](std::size_t t) {
      const OuterPoint& o = outer[t];
      FamilyParams P = grid.params(o, F.zero(), F.zero());
      const FamilyEvaluator ev = make_evaluator(P);
      const auto dec = detail::abc_decomposition(P);
      detail::TupleChecker checker(opt, results[t]);
      for (const auto& [u, v] : grid.inner_points(o)) {
        P.u = u;
        P.v = v;
        checker.run(P, ev, dec);
      }
    });
  }

  SweepSummary S;
  S.per_rule.reserve(opt.rules.size());
  for (auto id : opt.rules) S.per_rule.push_back({id, {}});
  for (auto& r : results) {
    S.tuples += r.tuples;
    for (std::size_t k = 0; k < r.tally.size(); ++k) S.per_rule[k].second += r.tally[k];
    std::move(r.disagreements.begin(), r.disagreements.end(), std::back_inserter(S.disagreement_reports));
    std::move(r.reports.begin(), r.reports.end(), std::back_inserter(S.reports));
    std::move(r.found.begin(), r.found.end(), std::back_inserter(S.found));
  }
  for (const auto& [_, t] : S.per_rule) {
    S.hypotheses_satisfied += t.hypotheses_satisfied;
    S.agreements += t.agreements;
    S.disagreements += t.disagreements;
  }
  S.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return S;
}

}  // namespace ppq
