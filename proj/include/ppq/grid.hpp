// Parameter grids: which (a, b, c, u, v, r, d, φ) tuples a sweep visits.
//
// A grid is a list of key=value entries separated by ';' or newlines, with
// '#' starting a comment. Keys and their defaults:
//
//   d = 1          integers: "6", "1..27", "3,6,12", "divisors", "divisors:q-1"
//   r = 1          integers, "all" (1..q^2-1), "coprime:N" (1 <= r < N, gcd(r, N) = 1)
//   e = 0          auxiliary element, visible to later expressions
//   a = units
//   b = normeq     {b : b^{q+1} = a^{q+1}}
//   c = compat     {c : a c^q = b^q c}
//   phi = 0:1      poly-text alternatives separated by '|', "geometric", or
//                  "geometric:EXPR" (EXPR times 1 + x + ... + x^{d-1})
//   phiK = SET     per-coefficient alternative to phi
//   u = all
//   v = all
//
// Element sets are a shorthand (all, units, subfield, subfield-units,
// trace-zero, norm-one, normeq, compat), a comma list of expressions over
// the names bound so far, or "SET except SET".
//
// With exhaustive defaults d and r range over everything. Tuples are
// visited with d, r, e, a, b, c, φ in the outer loops and u, v inside.
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppq/arith.hpp"
#include "ppq/expr.hpp"
#include "ppq/families.hpp"
#include "ppq/field.hpp"
#include "ppq/poly.hpp"
#include "ppq/text.hpp"

namespace ppq {

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using GridSpec = std::map<std::string, std::string, std::less<>>;

inline GridSpec parse_grid(std::string_view text) {
  static const std::vector<std::string_view> known = {"d", "r", "e", "a", "b", "c", "phi", "u", "v"};
  GridSpec out;
  auto flush = [&](std::string_view entry) {
    entry = detail::trim(entry);
    if (entry.empty()) return;
    const auto eq = entry.find('=');
    if (eq == std::string_view::npos) throw GridError("grid entry '" + std::string(entry) + "' is not key=value");
    const std::string key(detail::trim(entry.substr(0, eq)));
    const std::string value(detail::trim(entry.substr(eq + 1)));
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok && key.size() > 3 && key.rfind("phi", 0) == 0) ok = detail::parse_int(std::string_view(key).substr(3)).has_value();
    if (!ok) throw GridError("unknown grid key '" + key + "'");
    if (value.empty()) throw GridError("grid key '" + key + "' has an empty value");
    if (!out.emplace(key, value).second) throw GridError("grid key '" + key + "' given twice");
  };
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = i;
    while (j < text.size() && text[j] != '\n') ++j;
    std::string_view ln = text.substr(i, j - i);
    if (const auto hash = ln.find('#'); hash != std::string_view::npos) ln = ln.substr(0, hash);
    // ';' separates entries, except inside brackets.
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t k = 0; k < ln.size(); ++k) {
      if (ln[k] == '[' || ln[k] == '(') ++depth;
      if (ln[k] == ']' || ln[k] == ')') --depth;
      if (ln[k] == ';' && depth == 0) {
        flush(ln.substr(start, k - start));
        start = k + 1;
      }
    }
    flush(ln.substr(start));
    i = j + 1;
  }
  if (out.count("phi"))
    for (const auto& [k, _] : out)
      if (k.size() > 3 && k.rfind("phi", 0) == 0) throw GridError("grid gives both phi and " + k);
  return out;
}

/// Reads `arg` as a file when one exists at that path, else as inline text.
inline GridSpec load_grid(const std::string& arg) {
  std::ifstream in(arg);
  if (in) {
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_grid(ss.str());
  }
  return parse_grid(arg);
}

/// Fixed part of a tuple: everything except (u, v).
struct OuterPoint {
  std::uint64_t d = 1, r = 1;
  FieldElem e, a, b, c;
  Poly phi;
};

class Grid {
 public:
  Grid(FieldPtr F, GridSpec spec, bool exhaustive = false) : F_(std::move(F)), spec_(std::move(spec)) {
    auto get = [&](const char* k, const char* dflt) {
      auto it = spec_.find(k);
      return it == spec_.end() ? std::string(dflt) : it->second;
    };
    d_values_ = int_set(get("d", exhaustive ? "divisors" : "1"), true);
    r_values_ = int_set(get("r", exhaustive ? "all" : "1"), false);
    for (auto d : d_values_)
      if (!arith::divides(d, F_->group_order()))
        throw GridError("d = " + std::to_string(d) + " does not divide q^2-1 = " + std::to_string(F_->group_order()));
    for (auto r : r_values_)
      if (r == 0) throw GridError("r must be positive");
    // Element sets may refer to earlier bindings, so they are evaluated per point.
    for (const char* k : {"e", "a", "b", "c", "u", "v"}) element_spec_[k] = get(k, default_for(k));
    for (const auto& [k, val] : spec_)
      if (k.size() > 3 && k.rfind("phi", 0) == 0) phi_coeff_specs_.emplace_back(std::stoul(k.substr(3)), val);
    std::sort(phi_coeff_specs_.begin(), phi_coeff_specs_.end());
    phi_spec_ = get("phi", "0:1");
  }

  const FieldPtr& field() const { return F_; }

  /// All outer points in visiting order.
  std::vector<OuterPoint> outer_points() const {
    std::vector<OuterPoint> out;
    for (auto d : d_values_)
      for (auto r : r_values_) {
        Bindings env;
        for (auto e : element_set("e", env)) {
          env["e"] = e;
          for (auto a : element_set("a", env)) {
            env["a"] = a;
            for (auto b : element_set("b", env)) {
              env["b"] = b;
              for (auto c : element_set("c", env)) {
                env["c"] = c;
                for (auto& phi : phi_set(d, env)) out.push_back({d, r, e, a, b, c, std::move(phi)});
              }
            }
          }
        }
      }
    return out;
  }

  /// (u, v) pairs for an outer point, in visiting order.
  std::vector<std::pair<FieldElem, FieldElem>> inner_points(const OuterPoint& o) const {
    Bindings env = bindings(o);
    std::vector<std::pair<FieldElem, FieldElem>> out;
    for (auto u : element_set("u", env)) {
      env["u"] = u;
      for (auto v : element_set("v", env)) out.emplace_back(u, v);
    }
    return out;
  }

  FamilyParams params(const OuterPoint& o, FieldElem u, FieldElem v) const {
    return FamilyParams::make(F_, o.a, o.b, o.c, u, v, o.r, o.d, o.phi);
  }

  /// Draws one tuple by choosing uniformly at every level; nullopt if some
  /// level comes up empty.
  template <class Rng>
  std::optional<FamilyParams> sample(Rng& rng) const {
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    if (d_values_.empty() || r_values_.empty()) return std::nullopt;
    OuterPoint o;
    o.d = d_values_[pick(d_values_.size())];
    o.r = r_values_[pick(r_values_.size())];
    Bindings env;
    for (const char* k : {"e", "a", "b", "c"}) {
      const auto s = element_set(k, env);
      if (s.empty()) return std::nullopt;
      env[k] = s[pick(s.size())];
    }
    o.e = env["e"], o.a = env["a"], o.b = env["b"], o.c = env["c"];
    auto phis = phi_set(o.d, env);
    if (phis.empty()) return std::nullopt;
    o.phi = phis[pick(phis.size())];
    const auto us = element_set("u", env);
    if (us.empty()) return std::nullopt;
    env["u"] = us[pick(us.size())];
    const auto vs = element_set("v", env);
    if (vs.empty()) return std::nullopt;
    return params(o, env["u"], vs[pick(vs.size())]);
  }

 private:
  static const char* default_for(std::string_view k) {
    if (k == "e") return "0";
    if (k == "a") return "units";
    if (k == "b") return "normeq";
    if (k == "c") return "compat";
    return "all";
  }

  static Bindings bindings(const OuterPoint& o) {
    return {{"e", o.e}, {"a", o.a}, {"b", o.b}, {"c", o.c}};
  }

  std::vector<std::uint64_t> int_set(const std::string& text, bool is_d) const {
    const std::uint64_t N = F_->group_order();
    std::vector<std::uint64_t> out;
    auto eval = [&](std::string_view s) -> std::int64_t {
      try {
        return eval_int_expr(*F_, s);
      } catch (const std::exception& ex) {
        throw GridError(ex.what());
      }
    };
    for (auto part : detail::split_top_level(text, ',')) {
      part = detail::trim(part);
      if (part == "all" || part == "divisors") {
        if (is_d || part == "divisors") {
          for (auto x : arith::divisors(N)) out.push_back(x);
        } else {
          for (std::uint64_t r = 1; r <= N; ++r) out.push_back(r);
        }
      } else if (part.rfind("divisors:", 0) == 0) {
        const auto n = eval(part.substr(9));
        if (n <= 0) throw GridError("divisors: needs a positive argument");
        for (auto x : arith::divisors(static_cast<std::uint64_t>(n))) out.push_back(x);
      } else if (part.rfind("coprime:", 0) == 0) {
        const auto n = eval(part.substr(8));
        if (n <= 0) throw GridError("coprime: needs a positive argument");
        for (std::int64_t r = 1; r < n; ++r)
          if (arith::gcd(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(n)) == 1)
            out.push_back(static_cast<std::uint64_t>(r));
      } else if (const auto dots = part.find(".."); dots != std::string_view::npos) {
        const auto lo = eval(part.substr(0, dots)), hi = eval(part.substr(dots + 2));
        if (lo < 0 || hi < lo) throw GridError("bad range '" + std::string(part) + "'");
        for (auto x = lo; x <= hi; ++x) out.push_back(static_cast<std::uint64_t>(x));
      } else {
        const auto x = eval(part);
        if (x < 0) throw GridError("negative value '" + std::string(part) + "'");
        out.push_back(static_cast<std::uint64_t>(x));
      }
    }
    return dedupe(std::move(out));
  }

  template <class T>
  static std::vector<T> dedupe(std::vector<T> v) {
    std::vector<T> out;
    for (auto& x : v)
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
    return out;
  }

  std::vector<FieldElem> element_set(const std::string& key, const Bindings& env) const {
    return element_set_text(element_spec_.at(key), key, env);
  }

  std::vector<FieldElem> element_set_text(std::string_view text, const std::string& key, const Bindings& env) const {
    const FieldCtx& F = *F_;
    text = detail::trim(text);
    if (const auto ex = text.find(" except "); ex != std::string_view::npos) {
      auto keep = element_set_text(text.substr(0, ex), key, env);
      const auto drop = element_set_text(text.substr(ex + 8), key, env);
      std::vector<FieldElem> out;
      for (auto x : keep)
        if (std::find(drop.begin(), drop.end(), x) == drop.end()) out.push_back(x);
      return out;
    }
    auto filter = [&](auto&& pred) {
      std::vector<FieldElem> out;
      for (auto x : F.elements())
        if (pred(x)) out.push_back(x);
      F.sort_canonical(out);
      return out;
    };
    auto need = [&](const char* name) {
      auto it = env.find(name);
      if (it == env.end()) throw GridError(std::string("'") + std::string(text) + "' for " + key + " needs " + name);
      return it->second;
    };
    if (text == "all") return filter([](FieldElem) { return true; });
    if (text == "units") return filter([](FieldElem x) { return !x.is_zero(); });
    if (text == "subfield") return filter([&](FieldElem x) { return F.in_subfield(x); });
    if (text == "subfield-units") return filter([&](FieldElem x) { return !x.is_zero() && F.in_subfield(x); });
    if (text == "trace-zero") return filter([&](FieldElem x) { return F.trace(x).is_zero(); });
    if (text == "norm-one") return filter([&](FieldElem x) { return F.norm(x) == F.one(); });
    if (text == "normeq") {
      const FieldElem na = F.norm(need("a"));
      return filter([&](FieldElem x) { return F.norm(x) == na; });
    }
    if (text == "compat") {
      const FieldElem a = need("a"), bq = F.frobenius(need("b"));
      return filter([&](FieldElem x) { return F.mul(a, F.frobenius(x)) == F.mul(bq, x); });
    }
    std::vector<FieldElem> out;
    for (auto part : detail::split_top_level(text, ',')) {
      try {
        out.push_back(eval_expr(F, part, env));
      } catch (const std::exception& ex) {
        throw GridError(std::string("grid key ") + key + ": " + ex.what());
      }
    }
    return dedupe(std::move(out));
  }

  std::vector<Poly> phi_set(std::uint64_t d, const Bindings& env) const {
    const FieldCtx& F = *F_;
    if (!phi_coeff_specs_.empty()) {
      std::size_t top = phi_coeff_specs_.back().first;
      std::vector<std::vector<FieldElem>> per(top + 1, std::vector<FieldElem>{F.zero()});
      for (const auto& [k, spec] : phi_coeff_specs_) per[k] = element_set_text(spec, "phi" + std::to_string(k), env);
      // Odometer over coefficients, lowest exponent varying slowest.
      std::vector<Poly> out;
      std::vector<std::size_t> idx(per.size(), 0);
      for (const auto& s : per)
        if (s.empty()) return out;
      for (;;) {
        std::vector<FieldElem> c(per.size());
        for (std::size_t i = 0; i < per.size(); ++i) c[i] = per[i][idx[i]];
        out.emplace_back(std::move(c));
        std::size_t i = per.size();
        while (i-- > 0) {
          if (++idx[i] < per[i].size()) break;
          idx[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
      }
      return out;
    }
    std::vector<Poly> out;
    for (auto alt : split_alternatives(phi_spec_)) {
      alt = detail::trim(alt);
      if (alt == "geometric" || alt.rfind("geometric:", 0) == 0) {
        FieldElem s = F.one();
        if (alt.size() > 9) {
          try {
            s = eval_expr(F, alt.substr(10), env);
          } catch (const std::exception& ex) {
            throw GridError(std::string("grid key phi: ") + ex.what());
          }
        }
        out.emplace_back(std::vector<FieldElem>(d, s));
        continue;
      }
      try {
        out.push_back(parse_poly(F, alt));
      } catch (const std::exception& ex) {
        throw GridError(std::string("grid key phi: ") + ex.what());
      }
    }
    return out;
  }

  static std::vector<std::string_view> split_alternatives(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
      if (i == s.size() || s[i] == '|') {
        out.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    return out;
  }

  FieldPtr F_;
  GridSpec spec_;
  std::vector<std::uint64_t> d_values_, r_values_;
  std::map<std::string, std::string, std::less<>> element_spec_;
  std::vector<std::pair<std::size_t, std::string>> phi_coeff_specs_;
  std::string phi_spec_;
};

}  // namespace ppq
