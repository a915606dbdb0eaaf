// Registry of the permutation criteria for the family: for each rule, its
// hypotheses (as an ordered list of named clauses), the reduced condition
// that decides it, and whether the criterion is an equivalence or only a
// sufficient condition.
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ppq/arith.hpp"
#include "ppq/families.hpp"
#include "ppq/field.hpp"
#include "ppq/poly.hpp"

namespace ppq {

enum class RuleId {
  Thm1, Thm2, Cor1, Cor2, Thm3, Thm4, Cor8, Thm5, Thm6, Cor9, Cor10, Thm7,
  Cor11, Cor12, Cor13, Thm8, Thm9, Cor3, Cor4, Cor5, Cor6, Cor7, Cor14, Cor15,
};

enum class Semantics { Iff, SufficientOnly };

enum class Verdict { PP, NotPP, NotApplicable };

inline constexpr std::array<RuleId, 24> kAllRules = {
    RuleId::Thm1,  RuleId::Thm2,  RuleId::Cor1,  RuleId::Cor2,  RuleId::Thm3,  RuleId::Thm4,
    RuleId::Cor8,  RuleId::Thm5,  RuleId::Thm6,  RuleId::Cor9,  RuleId::Cor10, RuleId::Thm7,
    RuleId::Cor11, RuleId::Cor12, RuleId::Cor13, RuleId::Thm8,  RuleId::Thm9,  RuleId::Cor3,
    RuleId::Cor4,  RuleId::Cor5,  RuleId::Cor6,  RuleId::Cor7,  RuleId::Cor14, RuleId::Cor15,
};

inline std::string_view rule_name(RuleId id) {
  static constexpr std::array<std::string_view, 24> names = {
      "Thm1", "Thm2", "Cor1",  "Cor2",  "Thm3", "Thm4", "Cor8", "Thm5", "Thm6", "Cor9",  "Cor10", "Thm7",
      "Cor11", "Cor12", "Cor13", "Thm8", "Thm9", "Cor3", "Cor4", "Cor5", "Cor6", "Cor7", "Cor14", "Cor15",
  };
  return names[static_cast<std::size_t>(id)];
}

/// Case-insensitive.
inline std::optional<RuleId> parse_rule(std::string_view s) {
  auto lower = [](std::string_view x) {
    std::string out(x);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return out;
  };
  const std::string key = lower(detail::trim(s));
  for (RuleId id : kAllRules)
    if (lower(rule_name(id)) == key) return id;
  return std::nullopt;
}

inline Semantics rule_semantics(RuleId id) { return id == RuleId::Cor5 ? Semantics::SufficientOnly : Semantics::Iff; }

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::PP: return "PP";
    case Verdict::NotPP: return "NotPP";
    case Verdict::NotApplicable: return "NotApplicable";
  }
  return "?";
}

inline std::optional<Verdict> parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::PP, Verdict::NotPP, Verdict::NotApplicable})
    if (verdict_name(v) == s) return v;
  return std::nullopt;
}

struct HypothesisResult {
  bool ok = true;
  std::string_view failed_clause;  // empty when ok
};

namespace detail {

/// Everything a clause or condition may look at, computed once.
struct RuleCtx {
  const FamilyParams& P;
  const FieldCtx& F;
  DerivedCoeffs D;
  std::uint64_t q;
  std::optional<Decomposition> dec;

  explicit RuleCtx(const FamilyParams& p) : P(p), F(p.F()), D(derive_coeffs(p)), q(p.F().q()) {
    if (!P.a.is_zero() && !P.b.is_zero()) dec = decompose(F, P.a, P.b, P.c);
  }
  /// `d` must be what decompose gives for this (a, b, c); sweeps hoist it.
  RuleCtx(const FamilyParams& p, std::optional<Decomposition> d)
      : P(p), F(p.F()), D(derive_coeffs(p)), q(p.F().q()), dec(d) {}

  FieldElem one() const { return F.one(); }
  FieldElem minus_one() const { return F.neg(F.one()); }
  FieldElem integer(std::int64_t k) const { return F.from_int(k); }
  bool in_Fq(FieldElem x) const { return F.in_subfield(x); }
  bool trace_zero(FieldElem x) const { return F.trace(x).is_zero(); }
  std::uint64_t d() const { return P.d; }
  bool d_divides_q_minus_1() const { return arith::divides(P.d, q - 1); }
  bool d_divides_q_plus_1() const { return arith::divides(P.d, q + 1); }
  std::uint64_t gcd_q1_d() const { return arith::gcd(q + 1, P.d); }

  const Poly& phi() const { return P.phi_reduced; }
  bool phi_is_one() const {
    const auto& c = phi().coeffs();
    return c.size() == 1 && c[0] == F.one();
  }
  bool phi_over_Fq() const {
    return std::all_of(phi().coeffs().begin(), phi().coeffs().end(), [&](FieldElem x) { return in_Fq(x); });
  }
  /// φ = e(1 + x + ... + x^{d-1}) for a single e; returns e.
  std::optional<FieldElem> phi_geometric_scale() const {
    const auto& c = phi().coeffs();
    if (c.size() != P.d) return std::nullopt;
    for (auto x : c)
      if (x != c[0]) return std::nullopt;
    return c[0];
  }
  /// φ = x^k with k in {1, 2}.
  std::optional<std::uint64_t> phi_monomial_k() const {
    const auto& c = phi().coeffs();
    if (c.size() < 2 || c.size() > 3 || c.back() != F.one()) return std::nullopt;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      if (!c[i].is_zero()) return std::nullopt;
    return c.size() - 1;
  }
  std::optional<FieldElem> K() const { return twist(P, D); }
};

/// Evaluates named clauses in order and keeps the first failure. Later
/// clauses are not evaluated once one fails, so they may rely on earlier
/// ones (e.g. decompose only after the base hypotheses).
class Clauses {
 public:
  template <class Pred>
  Clauses& operator()(std::string_view name, Pred&& pred) {
    if (res_.ok && !pred()) res_ = {false, name};
    return *this;
  }
  HypothesisResult result() const { return res_; }

 private:
  HypothesisResult res_;
};

inline Clauses& base_clauses(Clauses& cl, const RuleCtx& x) {
  const auto& P = x.P;
  const auto& F = x.F;
  return cl("ab != 0", [&] { return !P.a.is_zero() && !P.b.is_zero(); })
           ("a^(q+1) = b^(q+1)", [&] { return F.norm(P.a) == F.norm(P.b); })
           ("a c^q = b^q c", [&] { return F.mul(P.a, F.frobenius(P.c)) == F.mul(F.frobenius(P.b), P.c); });
}

inline Clauses& ruv_clauses(Clauses& cl, const RuleCtx& x) {
  return cl("u^(q+1) = v^(q+1) and gcd(r,(q^2-1)/d) = 1, or u^(q+1) != v^(q+1) and r = 1",
            [&] { return ruv_clause(x.P, x.D); });
}

inline Clauses& odd_divisor_clauses(Clauses& cl, const RuleCtx& x) {
  return cl("d >= 3", [&] { return x.d() >= 3; })("d odd", [&] { return x.d() % 2 == 1; })(
      "d | q-1", [&] { return x.d_divides_q_minus_1(); });
}

/// Thm6 shape: a = 1, b = ξ^{(q-1)jd/3}, c^q = b^q c, u = 0, v = -b,
/// r = 1, φ = x^k.
inline Clauses& cubic_shape_clauses(Clauses& cl, const RuleCtx& x) {
  const auto& P = x.P;
  const auto& F = x.F;
  cl("a = 1", [&] { return P.a == F.one(); })("b != 0", [&] { return !P.b.is_zero(); })(
      "b^(q+1) = 1", [&] { return F.norm(P.b) == F.one(); })(
      "c^q = b^q c", [&] { return F.frobenius(P.c) == F.mul(F.frobenius(P.b), P.c); });
  return cl("i = 0 mod d/3", [&] { return x.dec && x.dec->i % (x.d() / 3) == 0; })(
             "u = 0", [&] { return P.u.is_zero(); })("v = -b", [&] { return P.v == F.neg(P.b); })(
             "r = 1", [&] { return P.r == 1; })("phi = x^k, k in {1,2}", [&] { return x.phi_monomial_k().has_value(); });
}

/// Cor12 and Cor13 share everything but the (u, v) shape.
inline Clauses& scaled_geometric_clauses(Clauses& cl, const RuleCtx& x) {
  const auto& P = x.P;
  const auto& F = x.F;
  odd_divisor_clauses(cl, x)("a = 1", [&] { return P.a == F.one(); })(
      "b^(q+1) = 1", [&] { return F.norm(P.b) == F.one(); })(
      "c^q = b^q c", [&] { return F.frobenius(P.c) == F.mul(F.frobenius(P.b), P.c); })(
      "r = 1", [&] { return P.r == 1; })(
      "phi = e(1 + x + ... + x^(d-1))", [&] { return x.phi_geometric_scale().has_value(); });
  return cl("e in F_q, e != 0", [&] {
    const FieldElem e = *x.phi_geometric_scale();
    return !e.is_zero() && x.in_Fq(e);
  });
}

inline HypothesisResult hypotheses(RuleId id, const RuleCtx& x) {
  const auto& P = x.P;
  const auto& F = x.F;
  const auto& D = x.D;
  Clauses cl;
  auto shape = [&] { return x.dec && reduction_shape(F, *x.dec, P.d); };
  switch (id) {
    case RuleId::Thm1:
      base_clauses(cl, x);
      break;
    case RuleId::Thm2:
      base_clauses(cl, x)("i = 0 mod gcd(q+1,d)", shape);
      ruv_clauses(cl, x);
      break;
    case RuleId::Cor1:
      odd_divisor_clauses(cl, x);
      base_clauses(cl, x);
      ruv_clauses(cl, x);
      break;
    case RuleId::Cor2:
      cl("d >= 2", [&] { return x.d() >= 2; })("d even", [&] { return x.d() % 2 == 0; })(
          "d | q-1", [&] { return x.d_divides_q_minus_1(); });
      base_clauses(cl, x);
      ruv_clauses(cl, x);
      break;
    case RuleId::Thm3:
      base_clauses(cl, x)("phi = 1", [&] { return x.phi_is_one(); });
      break;
    case RuleId::Thm4:
      base_clauses(cl, x)("d | q+1", [&] { return x.d_divides_q_plus_1(); });
      break;
    case RuleId::Cor8:
      base_clauses(cl, x)("d | q+1", [&] { return x.d_divides_q_plus_1(); })("r = 1", [&] { return P.r == 1; });
      break;
    case RuleId::Thm5:
      cl("d = 0 mod 4", [&] { return x.d() % 4 == 0; })(
          "q+1 = d/2 mod d", [&] { return (x.q + 1) % x.d() == x.d() / 2; });
      base_clauses(cl, x)("i = 0 mod d/2", [&] { return x.dec && x.dec->i % (x.d() / 2) == 0; });
      ruv_clauses(cl, x)("deg phi <= 1", [&] { return x.phi().degree() <= 1; });
      break;
    case RuleId::Thm6:
      cl("3 | d", [&] { return x.d() % 3 == 0; })("gcd(q+1,d) = d/3", [&] { return x.gcd_q1_d() == x.d() / 3; });
      cubic_shape_clauses(cl, x);
      break;
    case RuleId::Cor9:
      cl("3 | q-1", [&] { return (x.q - 1) % 3 == 0; })("d = 3", [&] { return x.d() == 3; });
      cubic_shape_clauses(cl, x);
      break;
    case RuleId::Cor10:
      cl("q+1 = 2 mod 6", [&] { return (x.q + 1) % 6 == 2; })("d = 6", [&] { return x.d() == 6; });
      cubic_shape_clauses(cl, x);
      break;
    case RuleId::Thm7:
    case RuleId::Cor11:
      odd_divisor_clauses(cl, x);
      base_clauses(cl, x)("u^(q+1) != v^(q+1)", [&] { return !D.gap.is_zero(); })("r = 1", [&] { return P.r == 1; })(
          "phi = 1 + x + ... + x^(d-1)", [&] { return x.phi_geometric_scale() == F.one(); });
      if (id == RuleId::Cor11)
        cl("u = a, v = 0 or u = 0, v = -b", [&] {
          return (P.u == P.a && P.v.is_zero()) || (P.u.is_zero() && P.v == F.neg(P.b));
        });
      break;
    case RuleId::Cor12:
      cl("q odd", [&] { return F.p() != 2; });
      scaled_geometric_clauses(cl, x);
      cl("u = 1 - e", [&] { return P.u == F.sub(F.one(), *x.phi_geometric_scale()); })(
          "v = -b(1+e)", [&] { return P.v == F.neg(F.mul(P.b, F.add(F.one(), *x.phi_geometric_scale()))); });
      break;
    case RuleId::Cor13:
      scaled_geometric_clauses(cl, x);
      cl("e(1+2e) != 0", [&] {
        const FieldElem e = *x.phi_geometric_scale();
        return !F.add(F.one(), F.scale(2, e)).is_zero();
      })("u = -e", [&] { return P.u == F.neg(*x.phi_geometric_scale()); })(
          "v = -b(1+e)", [&] { return P.v == F.neg(F.mul(P.b, F.add(F.one(), *x.phi_geometric_scale()))); });
      break;
    case RuleId::Thm8:
      cl("phi in F_q[x]", [&] { return x.phi_over_Fq(); })("d | q-1", [&] { return x.d_divides_q_minus_1(); });
      base_clauses(cl, x)("B + A^(1-r) B^(qr) = 0", [&] {
        const auto K = x.K();
        return K && F.add(D.B, *K).is_zero();
      });
      break;
    case RuleId::Thm9:
      base_clauses(cl, x)("i = 0 mod gcd(q+1,d)", shape);
      ruv_clauses(cl, x)("phi in F_q[x]", [&] { return x.phi_over_Fq(); })(
          "u^(q+1) = v^(q+1)", [&] { return D.gap.is_zero(); });
      break;
    case RuleId::Cor3:
      cl("q odd", [&] { return F.p() != 2; })("a = 1", [&] { return P.a == F.one(); })(
          "b = 1", [&] { return P.b == F.one(); })("c in F_q", [&] { return x.in_Fq(P.c); })(
          "u in F_q", [&] { return x.in_Fq(P.u); })("v = -u", [&] { return P.v == F.neg(P.u); })(
          "phi = 1", [&] { return x.phi_is_one(); });
      break;
    case RuleId::Cor4:
      cl("a = 1", [&] { return P.a == F.one(); })("b = 1", [&] { return P.b == F.one(); })(
          "c in F_q", [&] { return x.in_Fq(P.c); })("u in F_q", [&] { return x.in_Fq(P.u); })(
          "trace(u - v) = 0", [&] { return x.trace_zero(F.sub(P.u, P.v)); })("phi = 1", [&] { return x.phi_is_one(); });
      break;
    case RuleId::Cor5:
      cl("p = 2", [&] { return F.p() == 2; })("a = 1", [&] { return P.a == F.one(); })(
          "b = 1", [&] { return P.b == F.one(); })("c in F_q", [&] { return x.in_Fq(P.c); })(
          "u in F_q", [&] { return x.in_Fq(P.u); })("v - u in F_q", [&] { return x.in_Fq(F.sub(P.v, P.u)); })(
          "v - u not in {0,1}", [&] {
            const FieldElem e = F.sub(P.v, P.u);
            return !e.is_zero() && e != F.one();
          })("phi = 1", [&] { return x.phi_is_one(); });
      break;
    case RuleId::Cor6:
      cl("a = 1", [&] { return P.a == F.one(); })("b = -1", [&] { return P.b == x.minus_one(); })(
          "c + c^q = 0", [&] { return x.trace_zero(P.c); })("(u+v)^q = (-1)^r (u+v)", [&] {
        const FieldElem s = F.add(P.u, P.v);
        return F.frobenius(s) == (P.r % 2 ? F.neg(s) : s);
      })("phi = 1", [&] { return x.phi_is_one(); });
      break;
    case RuleId::Cor7:
      cl("a = 1", [&] { return P.a == F.one(); })("b = -1", [&] { return P.b == x.minus_one(); })(
          "c + c^q = 0", [&] { return x.trace_zero(P.c); })("u^(q+1) = v^(q+1)", [&] { return D.gap.is_zero(); })(
          "phi = 1", [&] { return x.phi_is_one(); });
      break;
    case RuleId::Cor14:
      cl("phi in F_q[x]", [&] { return x.phi_over_Fq(); })("d | q-1", [&] { return x.d_divides_q_minus_1(); })(
          "a = 1", [&] { return P.a == F.one(); })("b = 1", [&] { return P.b == F.one(); })(
          "c in F_q", [&] { return x.in_Fq(P.c); })("u in F_q", [&] { return x.in_Fq(P.u); })(
          "trace(u - v) = 0", [&] { return x.trace_zero(F.sub(P.u, P.v)); });
      break;
    case RuleId::Cor15:
      cl("phi in F_q[x]", [&] { return x.phi_over_Fq(); })("d | q-1", [&] { return x.d_divides_q_minus_1(); })(
          "r even", [&] { return P.r % 2 == 0; })("a = 1", [&] { return P.a == F.one(); })(
          "b = -1", [&] { return P.b == x.minus_one(); })("c + c^q = 0", [&] { return x.trace_zero(P.c); })(
          "u in F_q", [&] { return x.in_Fq(P.u); })("v - u in F_q", [&] { return x.in_Fq(F.sub(P.v, P.u)); });
      break;
  }
  return cl.result();
}

/// The φ = 1 criterion on (A, B, gap): closed forms for the two degenerate
/// cases, otherwise g(x) = (B + K)x^r + gap·x on S.
inline std::optional<bool> constant_phi_test(const RuleCtx& x, FieldElem A, FieldElem B, FieldElem gap) {
  const auto& F = x.F;
  const auto K = twist(F, A, B, x.P.r);
  if (!K) return std::nullopt;
  const FieldElem BK = F.add(B, *K);
  if (BK.is_zero()) return !gap.is_zero();
  if (gap.is_zero()) return arith::gcd(x.P.r, x.q - 1) == 1;
  // g permutes S = {0} ∪ {ξ^{(q+1)j - i}} iff its values are distinct and land
  // in S; g(0) = 0, so the nonzero values must hit distinct cosets of F_q^*.
  thread_local OccupancySet seen;
  seen.reset(x.q + 1);
  const std::uint64_t N = F.group_order();
  const std::uint64_t i = x.dec->i;
  for (std::uint64_t j = 0; j + 1 < x.q; ++j) {
    const FieldElem s = F.xi_pow(static_cast<std::int64_t>((x.q + 1) * j) - static_cast<std::int64_t>(i));
    const auto l = F.log(F.add(F.mul(BK, F.pow(s, x.P.r)), F.mul(gap, s)));
    if (!l) return false;
    const std::uint64_t k = (*l + i) % N;
    if (k % (x.q + 1) != 0 || !seen.insert(k / (x.q + 1))) return false;
  }
  return true;
}

inline bool permutes_U(const RuleCtx& x, std::vector<FieldElem> domain) {
  const auto h = h_table(x.P, std::move(domain));
  return h && permutes_set(x.F, *h);
}

/// The pair ((ω^{kq} + ω^k - 1)^e, (ω^{2kq} + ω^{2k} - 1)^e) lies in
/// {(1, 1), (ω, ω^2)}, ω = ξ^{(q^2-1)/3}.
inline bool cubic_pair_test(const RuleCtx& x, bool frobenius_trivial, std::uint64_t e) {
  const auto& F = x.F;
  const std::uint64_t k = *x.phi_monomial_k();
  const FieldElem w = F.xi_pow(F.group_order() / 3);
  auto term = [&](std::uint64_t kk) {
    const FieldElem wk = F.pow(w, kk);
    const FieldElem wkq = frobenius_trivial ? wk : F.frobenius(wk);
    return F.pow(F.sub(F.add(wkq, wk), F.one()), e);
  };
  const FieldElem t1 = term(k), t2 = term(2 * k);
  return (t1 == F.one() && t2 == F.one()) || (t1 == w && t2 == F.mul(w, w));
}

inline std::optional<bool> reduced(RuleId id, const RuleCtx& x) {
  const auto& P = x.P;
  const auto& F = x.F;
  const auto& D = x.D;
  const std::uint64_t N = F.group_order();
  switch (id) {
    case RuleId::Thm1: {
      if (D.A.is_zero()) return false;
      const FieldElem K = *x.K();
      const auto g = FuncTable::tabulate(coset_S(F, x.dec->i), [&](FieldElem s) { return g_at(P, D, K, s); });
      return permutes_set(F, g);
    }
    case RuleId::Thm2:
    case RuleId::Cor1: {
      const auto h = h_table(P, F.roots_of_unity(D.n));
      if (!h) return std::nullopt;
      return permutes_set(F, *h);
    }
    case RuleId::Cor2: {
      std::vector<FieldElem> dom;
      if (x.dec->i % 2 == 0) {
        dom = F.roots_of_unity(P.d / 2);
      } else {
        for (auto w : F.roots_of_unity(P.d))
          if (F.pow(w, P.d / 2) != F.one()) dom.push_back(w);
      }
      const auto h = h_table(P, std::move(dom));
      if (!h) return std::nullopt;
      return permutes_set(F, *h);
    }
    case RuleId::Thm3:
      return constant_phi_test(x, D.A, D.B, D.gap);
    case RuleId::Thm4: {
      const FieldElem pd = eval(F, P.phi_reduced, *D.delta);
      if (pd.is_zero()) return !D.gap.is_zero();
      // ū = u/φ(δ), v̄ = v/φ(δ) scale A, B, gap by φ(δ)^{-1}, φ(δ)^{-q}, φ(δ)^{-(q+1)}.
      return constant_phi_test(x, F.div(D.A, pd), F.div(D.B, F.frobenius(pd)), F.div(D.gap, F.norm(pd)));
    }
    case RuleId::Cor8: {
      const auto L = linearize(P);
      return F.norm(L.alpha) != F.norm(L.beta);
    }
    case RuleId::Thm5: {
      const auto K = x.K();
      if (!K) return std::nullopt;
      const FieldElem e0 = P.phi_reduced[0], e1 = P.phi_reduced[1];
      const FieldElem X = F.add(F.add(F.mul(D.B, e0), F.mul(*K, F.frobenius(e0))), D.gap);
      const FieldElem Y = F.add(F.mul(D.B, e1), F.mul(*K, F.frobenius(e1)));
      const FieldElem lhs = F.pow(F.sub(F.mul(X, X), F.mul(Y, Y)), D.m);
      return lhs == (P.r % 2 ? F.one() : x.minus_one());
    }
    case RuleId::Thm6:
      return cubic_pair_test(x, false, D.m);
    case RuleId::Cor9:
      return cubic_pair_test(x, true, N / 3);
    case RuleId::Cor10:
      return cubic_pair_test(x, true, N / 6);
    case RuleId::Thm7: {
      const FieldElem t = F.add(F.one(), F.div(F.mul(x.integer(static_cast<std::int64_t>(P.d % F.p())),
                                                     F.trace(D.B)),
                                               D.gap));
      return F.pow(t, D.m) == F.one();
    }
    case RuleId::Cor11: {
      const FieldElem two_d = x.integer(static_cast<std::int64_t>((2 * P.d) % F.p()));
      const FieldElem t = P.v.is_zero() ? F.add(F.one(), two_d) : F.sub(F.one(), two_d);
      return F.pow(t, D.m) == F.one();
    }
    case RuleId::Cor12:
      return F.pow(F.sub(F.one(), x.integer(static_cast<std::int64_t>(P.d % F.p()))), D.m) == F.one();
    case RuleId::Cor13: {
      const FieldElem e = *x.phi_geometric_scale();
      const FieldElem two_de = F.mul(x.integer(static_cast<std::int64_t>((2 * P.d) % F.p())), e);
      const FieldElem t = F.sub(F.one(), F.div(two_de, F.add(F.one(), F.scale(2, e))));
      return F.pow(t, D.m) == F.one();
    }
    case RuleId::Thm8:
      return !D.gap.is_zero();
    case RuleId::Thm9: {
      const auto K = x.K();
      if (!K) return std::nullopt;
      if (F.add(D.B, *K).is_zero()) return false;
      const auto t = FuncTable::tabulate(F.roots_of_unity(D.n), [&](FieldElem w) {
        return F.mul(F.pow(w, P.r), F.pow(eval(F, P.phi_reduced, w), D.m));
      });
      return permutes_set(F, t);
    }
    case RuleId::Cor3:
      return !P.u.is_zero() && arith::gcd(P.r, x.q - 1) == 1;
    case RuleId::Cor4:
    case RuleId::Cor14:
      return P.u != P.v;
    case RuleId::Cor5:
      return true;
    case RuleId::Cor6:
      return !D.gap.is_zero();
    case RuleId::Cor7: {
      const FieldElem s = F.add(P.u, P.v);
      return arith::gcd(P.r, x.q - 1) == 1 && F.frobenius(s) != (P.r % 2 ? F.neg(s) : s);
    }
    case RuleId::Cor15: {
      const FieldElem e = F.sub(P.v, P.u);
      return !F.mul(e, F.add(F.scale(2, P.u), e)).is_zero();
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Diagnostics name the first failing clause, in the order listed in the
/// registry above.
inline HypothesisResult rule_hypotheses(RuleId id, const FamilyParams& P) {
  return detail::hypotheses(id, detail::RuleCtx(P));
}

/// The rule's small-side criterion. nullopt when it involves A^{1-r} with
/// A = 0 and r >= 2. Throws std::logic_error if the hypotheses fail.
inline std::optional<bool> rule_reduced_condition(RuleId id, const FamilyParams& P) {
  const detail::RuleCtx x(P);
  const auto h = detail::hypotheses(id, x);
  if (!h.ok) throw std::logic_error(std::string(rule_name(id)) + ": hypotheses fail at '" + std::string(h.failed_clause) + "'");
  return detail::reduced(id, x);
}

struct Evaluation {
  HypothesisResult hypotheses;
  std::optional<bool> reduced_condition;  // absent if hypotheses fail or undefined
  Verdict predicted = Verdict::NotApplicable;
};

/// Several rules on one tuple can share a context.
inline Evaluation evaluate(RuleId id, const detail::RuleCtx& x) {
  Evaluation out;
  out.hypotheses = detail::hypotheses(id, x);
  if (!out.hypotheses.ok) return out;
  out.reduced_condition = detail::reduced(id, x);
  // Every rule's hypotheses contain the base ones, under which A = 0 forces
  // f to be constant on the fibers of θ.
  if (rule_semantics(id) == Semantics::Iff && x.D.A.is_zero()) {
    out.predicted = Verdict::NotPP;
  } else if (out.reduced_condition.value_or(false)) {
    out.predicted = Verdict::PP;
  } else {
    out.predicted = rule_semantics(id) == Semantics::SufficientOnly ? Verdict::NotApplicable : Verdict::NotPP;
  }
  return out;
}

inline Evaluation evaluate(RuleId id, const FamilyParams& P) { return evaluate(id, detail::RuleCtx(P)); }

inline Verdict predict(RuleId id, const FamilyParams& P) { return evaluate(id, P).predicted; }

/// The sufficient half of the geometric-φ criterion, which needs only
/// d >= 3 and d | q^2 - 1.
inline HypothesisResult theorem7_sufficient_hypotheses(const FamilyParams& P) {
  const detail::RuleCtx x(P);
  detail::Clauses cl;
  cl("d >= 3", [&] { return P.d >= 3; });
  detail::base_clauses(cl, x)("u^(q+1) != v^(q+1)", [&] { return !x.D.gap.is_zero(); })(
      "r = 1", [&] { return P.r == 1; })("phi = 1 + x + ... + x^(d-1)",
                                         [&] { return x.phi_geometric_scale() == P.F().one(); });
  return cl.result();
}

/// (1 + d(B + B^q)/(u^{q+1} - v^{q+1}))^m = 1; a PP whenever it holds and
/// the sufficient hypotheses do.
inline bool theorem7_condition(const FamilyParams& P) {
  return *detail::reduced(RuleId::Thm7, detail::RuleCtx(P));
}

}  // namespace ppq
