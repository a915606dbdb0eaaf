// ppq: verify single instances, cross-validate rules against brute force
// over grids, search for PPs/CPPs, and print small tables.
//
// Exit codes: 0 success / all agree, 1 at least one disagreement,
// 2 invalid input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppq/ppq.hpp"

namespace {

using namespace ppq;

constexpr int kAgree = 0, kDisagree = 1, kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<RuleId> parse_rules(const std::string& text) {
  std::vector<RuleId> out;
  if (text == "all" || text == "ALL") return {kAllRules.begin(), kAllRules.end()};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = std::string(detail::trim(item));
    if (t.empty()) continue;
    const auto id = parse_rule(t);
    if (!id) throw InputError("unknown rule '" + t + "'");
    out.push_back(*id);
  }
  if (out.empty()) throw InputError("empty rule list");
  return out;
}

CheckMode parse_mode(const std::string& m) {
  if (m == "brute") return CheckMode::Brute;
  if (m == "rule") return CheckMode::Rule;
  if (m == "both") return CheckMode::Both;
  throw InputError("mode must be brute, rule or both");
}

std::string slurp_if_file(const std::string& arg, bool& was_file) {
  std::ifstream in(arg);
  was_file = static_cast<bool>(in);
  if (!was_file) return arg;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Writer {
 public:
  explicit Writer(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw InputError("cannot open '" + path + "' for writing");
  }
  explicit operator bool() const { return file_.is_open(); }
  std::ostream& out() { return file_; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string field, params, rule = "all", mode = "both", poly;
  std::string a = "1", b = "1", c = "0", u = "0", v = "0", phi = "0:1";
  std::uint64_t r = 1, d = 1;
  bool cpp = false;
};

int run_verify(const VerifyArgs& A) {
  FieldPtr F = A.field.empty() ? nullptr : build_field(A.field);

  if (!A.poly.empty()) {
    if (!F) throw InputError("--poly needs --field");
    const Poly P = parse_poly(*F, A.poly);
    const bool pp = is_permutation(*F, func_table(*F, P));
    json j = {{"field", F->spec()}, {"poly", format_poly(*F, P)}, {"pp", pp}};
    if (A.cpp) j["cpp"] = is_complete_permutation(*F, P);
    std::cout << j.dump() << "\n";
    return kAgree;
  }

  std::vector<ParsedParams> tuples;
  if (!A.params.empty()) {
    bool file = false;
    const std::string text = slurp_if_file(A.params, file);
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (detail::trim(line).empty()) continue;
      tuples.push_back(params_from_json(json::parse(line), F));
    }
    if (tuples.empty()) throw InputError("no parameter lines in --params");
  } else {
    if (!F) throw InputError("--field is required");
    auto elem = [&](const std::string& s) { return eval_expr(*F, s); };
    tuples.push_back({FamilyParams::make(F, elem(A.a), elem(A.b), elem(A.c), elem(A.u), elem(A.v), A.r, A.d,
                                         parse_poly(*F, A.phi)),
                      std::nullopt});
  }

  const CheckMode mode = parse_mode(A.mode);
  bool all_agree = true;
  for (const auto& t : tuples) {
    // A rule on the parameter line wins over the --rule default.
    const bool explicit_rule = t.rule || A.rule != "all";
    const std::vector<RuleId> rules = t.rule ? std::vector<RuleId>{*t.rule} : parse_rules(A.rule);
    bool printed = false;
    for (RuleId id : rules) {
      if (!explicit_rule && !rule_hypotheses(id, t.params).ok) continue;
      const auto rep = run_check(t.params, id, mode, A.cpp);
      all_agree = all_agree && rep.agree;
      std::cout << report_to_json(rep).dump() << "\n";
      printed = true;
    }
    if (!printed) std::cout << report_to_json(run_check(t.params, std::nullopt, mode, A.cpp)).dump() << "\n";
  }
  return all_agree ? kAgree : kDisagree;
}

// ------------------------------------------------------- crossval / search

struct SweepArgs {
  std::string field, rule = "all", grid, json_path, csv_path;
  bool exhaustive = false, timings = false, cpp = false;
  std::optional<std::uint64_t> budget, limit;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

Grid make_grid(const SweepArgs& A) {
  if (A.field.empty()) throw InputError("--field is required");
  return Grid(build_field(A.field), load_grid(A.grid), A.exhaustive);
}

int run_crossval(const SweepArgs& A) {
  const Grid grid = make_grid(A);
  SweepOptions opt;
  opt.rules = parse_rules(A.rule);
  opt.workers = A.workers;
  opt.budget = A.budget;
  opt.seed = A.seed;
  opt.timings = A.timings;
  Writer json_out(A.json_path), csv_out(A.csv_path);
  opt.keep_reports = static_cast<bool>(json_out) || static_cast<bool>(csv_out);

  const SweepSummary S = run_sweep(grid, opt);
  if (json_out)
    for (const auto& r : S.reports) json_out.out() << report_to_json(r).dump() << "\n";
  if (csv_out) {
    csv_out.out() << kCsvHeader << "\n";
    for (const auto& r : S.reports) csv_out.out() << report_to_csv(r) << "\n";
  }
  std::cout << summary_to_json(S, A.timings).dump() << "\n";
  return S.disagreements == 0 ? kAgree : kDisagree;
}

int run_search(const SweepArgs& A) {
  const Grid grid = make_grid(A);
  SweepOptions opt;
  opt.rules = A.rule == "none" ? std::vector<RuleId>{} : parse_rules(A.rule);
  opt.workers = A.workers;
  opt.budget = A.budget;
  opt.seed = A.seed;
  opt.search = true;
  opt.cpp = A.cpp;
  if (A.limit && *A.limit == 0) return kAgree;

  const SweepSummary S = run_sweep(grid, opt);
  Writer json_out(A.json_path);
  std::uint64_t emitted = 0;
  for (const auto& r : S.found) {
    if (A.limit && emitted >= *A.limit) break;
    const std::string line = params_to_json(r.params, r.rule).dump();
    std::cout << line << "\n";
    if (json_out) json_out.out() << line << "\n";
    ++emitted;
  }
  return S.disagreements == 0 ? kAgree : kDisagree;
}

// ----------------------------------------------------------------- tables

struct TablesArgs {
  std::string field, what;
  std::optional<std::uint64_t> n;
  std::string a = "1", b = "1", c = "0";
};

int run_tables(const TablesArgs& A) {
  if (A.field.empty()) throw InputError("--field is required");
  const FieldPtr F = build_field(A.field);
  std::vector<FieldElem> out;
  if (A.what == "subfield") {
    out = F->subfield();
  } else if (A.what == "unity") {
    if (!A.n || *A.n == 0 || F->group_order() % *A.n != 0)
      throw InputError("unity needs N dividing q^2-1 = " + std::to_string(F->group_order()));
    out = F->roots_of_unity(*A.n);
  } else if (A.what == "S") {
    out = compute_S(*F, eval_expr(*F, A.a), eval_expr(*F, A.b), eval_expr(*F, A.c));
  } else if (A.what == "primitive") {
    std::cout << F->format(F->xi()) << "\n";
    return kAgree;
  } else {
    throw InputError("tables: expected subfield, unity N, S or primitive");
  }
  F->sort_canonical(out);
  std::string line;
  for (auto x : out) line += (line.empty() ? "" : ", ") + F->format(x);
  std::cout << line << "\n";
  return kAgree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation polynomials of the form (ax^q+bx+c)^r phi(...) + ux^q + vx over F_{q^2}"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check one parameter tuple (or a file of them)");
  verify->add_option("--field", va.field, "q as p or p^m");
  verify->add_option("--params", va.params, "JSON parameter line, or a file of them");
  verify->add_option("--rule", va.rule, "rule id, comma list, or all (applicable rules only)");
  verify->add_option("--mode", va.mode, "brute, rule or both");
  verify->add_option("--poly", va.poly, "check an arbitrary polynomial instead");
  verify->add_option("--a", va.a);
  verify->add_option("--b", va.b);
  verify->add_option("--c", va.c);
  verify->add_option("--u", va.u);
  verify->add_option("--v", va.v);
  verify->add_option("--r", va.r);
  verify->add_option("--d", va.d);
  verify->add_option("--phi", va.phi);
  verify->add_flag("--cpp", va.cpp, "also check f + x");

  SweepArgs ca, sa;
  auto add_sweep = [](CLI::App* cmd, SweepArgs& s) {
    cmd->add_option("--field", s.field, "q as p or p^m")->required();
    cmd->add_option("--rule", s.rule, "rule id, comma list, or all");
    cmd->add_option("--grid", s.grid, "grid file or inline grid text");
    cmd->add_flag("--exhaustive", s.exhaustive, "d and r default to every admissible value");
    cmd->add_option("--budget", s.budget, "sample this many tuples");
    cmd->add_option("--seed", s.seed, "sampling seed");
    cmd->add_option("--workers", s.workers, "worker threads");
    cmd->add_option("--json", s.json_path, "write JSON lines here");
  };
  auto* crossval = app.add_subcommand("crossval", "rule predictions against brute force over a grid");
  add_sweep(crossval, ca);
  crossval->add_option("--csv", ca.csv_path, "write the CSV projection here");
  crossval->add_flag("--timings", ca.timings, "record wall times (output is then not reproducible)");

  auto* search = app.add_subcommand("search", "emit tuples predicted and confirmed PP");
  add_sweep(search, sa);
  search->add_flag("--cpp", sa.cpp, "require f + x to be a PP too");
  search->add_option("--limit", sa.limit, "stop after this many results");

  TablesArgs ta;
  auto* tables = app.add_subcommand("tables", "print subfield, unity N, S or primitive");
  tables->add_option("what", ta.what)->required();
  tables->add_option("n", ta.n);
  tables->add_option("--field", ta.field)->required();
  tables->add_option("--a", ta.a);
  tables->add_option("--b", ta.b);
  tables->add_option("--c", ta.c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*verify) return run_verify(va);
    if (*crossval) return run_crossval(ca);
    if (*search) return run_search(sa);
    if (*tables) return run_tables(ta);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
