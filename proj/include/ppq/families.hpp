// The family f(x) = θ(x)^r φ(θ(x)^m) + u x^q + v x with θ(x) = a x^q + b x + c
// and m = (q^2-1)/d, together with its reduced maps g on S and h on U_n.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ppq/agw.hpp"
#include "ppq/arith.hpp"
#include "ppq/bitset.hpp"
#include "ppq/field.hpp"
#include "ppq/poly.hpp"

namespace ppq {

/// One member of the family. `phi` is kept as given for reporting;
/// `phi_reduced` has its exponents folded mod d and is what every
/// computation uses.
struct FamilyParams {
  FieldPtr field;
  FieldElem a, b, c, u, v;
  std::uint64_t r = 1;
  std::uint64_t d = 1;
  Poly phi;
  Poly phi_reduced;

  static FamilyParams make(FieldPtr F, FieldElem a, FieldElem b, FieldElem c, FieldElem u, FieldElem v,
                           std::uint64_t r, std::uint64_t d, Poly phi) {
    if (!F) throw std::invalid_argument("family: missing field");
    if (r < 1) throw std::invalid_argument("family: r must be positive");
    if (!arith::divides(d, F->group_order()))
      throw std::invalid_argument("family: d = " + std::to_string(d) + " does not divide q^2-1 = " +
                                  std::to_string(F->group_order()));
    FamilyParams P;
    P.field = std::move(F);
    P.a = a, P.b = b, P.c = c, P.u = u, P.v = v;
    P.r = r;
    P.d = d;
    P.phi_reduced = reduce_exponents(*P.field, phi, d);
    P.phi = std::move(phi);
    return P;
  }

  const FieldCtx& F() const { return *field; }
  std::uint64_t m() const { return field->group_order() / d; }
};

struct DerivedCoeffs {
  FieldElem A, B, C;
  FieldElem gap;  // u^{q+1} - v^{q+1}
  std::uint64_t m = 0, n = 0;
  std::optional<FieldElem> delta;  // (b^q/a)^{(q+1)/d}, only when d | q+1 and a != 0
};

inline DerivedCoeffs derive_coeffs(const FamilyParams& P) {
  const FieldCtx& F = P.F();
  DerivedCoeffs D;
  D.A = F.sub(F.mul(P.b, P.u), F.mul(P.a, P.v));
  D.B = F.sub(F.mul(P.a, F.frobenius(P.u)), F.mul(P.b, F.frobenius(P.v)));
  D.gap = F.sub(F.norm(P.u), F.norm(P.v));
  D.C = F.mul(D.gap, P.c);
  D.m = P.m();
  D.n = P.d / arith::gcd(std::uint64_t{F.q()} + 1, P.d);
  if (!P.a.is_zero() && arith::divides(P.d, std::uint64_t{F.q()} + 1))
    D.delta = F.pow(F.div(F.frobenius(P.b), P.a), (std::uint64_t{F.q()} + 1) / P.d);
  return D;
}

/// K = A^{1-r} B^{qr}. Undefined (nullopt) only when A = 0 and r >= 2.
inline std::optional<FieldElem> twist(const FieldCtx& F, FieldElem A, FieldElem B, std::uint64_t r) {
  const FieldElem Bqr = F.pow(B, std::uint64_t{F.q()} * r);
  if (r == 1) return Bqr;
  if (A.is_zero()) return std::nullopt;
  return F.mul(F.pow(F.inv(A), r - 1), Bqr);
}

inline std::optional<FieldElem> twist(const FamilyParams& P, const DerivedCoeffs& D) {
  return twist(P.F(), D.A, D.B, P.r);
}

inline FieldElem theta(const FieldCtx& F, FieldElem a, FieldElem b, FieldElem c, FieldElem x) {
  return F.add(F.add(F.mul(a, F.frobenius(x)), F.mul(b, x)), c);
}

/// Tabulates the part of f that does not involve u and v,
/// T(x) = θ(x)^r φ(θ(x)^m), so that a sweep over (u, v) costs one
/// table lookup per point.
class FamilyEvaluator {
 public:
  FamilyEvaluator(const FieldCtx& F, FieldElem a, FieldElem b, FieldElem c, std::uint64_t r, std::uint64_t d,
                  const Poly& phi_reduced)
      : F_(&F), core_(F.size()), frob_(F.size()) {
    const std::uint64_t N = F.group_order(), m = N / d;
    // θ^m is 0 or ξ^{jm}; φ only ever sees these d+1 values.
    std::vector<FieldElem> phi_at(d);
    for (std::uint64_t j = 0; j < d; ++j) phi_at[j] = eval(F, phi_reduced, F.xi_pow(static_cast<std::int64_t>(j * m)));
    const FieldElem phi0 = eval(F, phi_reduced, F.zero());
    for (std::uint32_t i = 0; i < F.size(); ++i) {
      const FieldElem x = F.element(i);
      frob_[i] = F.frobenius(x);
      const FieldElem t = F.add(F.add(F.mul(a, frob_[i]), F.mul(b, x)), c);
      if (t.is_zero()) {
        core_[i] = F.mul(F.pow(t, r), phi0);
      } else {
        const std::uint64_t k = *F.log(t);
        core_[i] = F.mul(F.pow(t, r), phi_at[k % d]);
      }
    }
  }

  FieldElem core(FieldElem x) const { return core_[x.rep()]; }

  FieldElem f(FieldElem x, FieldElem u, FieldElem v) const {
    return F_->add(core_[x.rep()], F_->add(F_->mul(u, frob_[x.rep()]), F_->mul(v, x)));
  }

  /// Brute-force bijectivity of f for this (u, v), stopping at the first
  /// collision. `scratch` is reused across calls.
  bool is_pp(FieldElem u, FieldElem v, OccupancySet& scratch) const {
    scratch.reset(F_->size());
    for (std::uint32_t i = 0; i < F_->size(); ++i)
      if (!scratch.insert(f(F_->element(i), u, v).rep())) return false;
    return true;
  }

  /// core(x) + u·x^q for every x, indexed by rep. A sweep over v reuses one
  /// row per u with is_pp_row.
  void row(FieldElem u, std::vector<FieldElem>& out) const {
    out.resize(F_->size());
    for (std::uint32_t i = 0; i < F_->size(); ++i) out[i] = F_->add(core_[i], F_->mul(u, frob_[i]));
  }

  /// Same answer as is_pp(u, v) given row(u). Rep i + 1 is ξ^i, so v·x walks
  /// the logs of v·ξ^i by increment instead of multiplying.
  bool is_pp_row(const std::vector<FieldElem>& row, FieldElem v, OccupancySet& scratch) const {
    const std::uint32_t size = F_->size(), N = F_->group_order();
    scratch.reset(size);
    scratch.insert(row[0].rep());
    if (v.is_zero()) {
      for (std::uint32_t i = 1; i < size; ++i)
        if (!scratch.insert(row[i].rep())) return false;
      return true;
    }
    std::uint32_t j = v.rep() - 1;
    if (const std::uint16_t* sum = F_->dense_add()) {
      for (std::uint32_t i = 1; i < size; ++i) {
        if (!scratch.insert(sum[std::size_t{row[i].rep()} * size + j + 1])) return false;
        if (++j == N) j = 0;
      }
      return true;
    }
    for (std::uint32_t i = 1; i < size; ++i) {
      if (!scratch.insert(F_->add(row[i], FieldElem::from_rep(j + 1)).rep())) return false;
      if (++j == N) j = 0;
    }
    return true;
  }

  /// f + x is also bijective.
  bool is_cpp(FieldElem u, FieldElem v, OccupancySet& scratch) const {
    if (!is_pp(u, v, scratch)) return false;
    return is_pp(u, F_->add(v, F_->one()), scratch);
  }

  FuncTable table(FieldElem u, FieldElem v) const {
    return FuncTable::tabulate(F_->elements(), [&](FieldElem x) { return f(x, u, v); });
  }

 private:
  const FieldCtx* F_;
  std::vector<FieldElem> core_, frob_;
};

inline FamilyEvaluator make_evaluator(const FamilyParams& P) {
  return FamilyEvaluator(P.F(), P.a, P.b, P.c, P.r, P.d, P.phi_reduced);
}

/// f over all of F_{q^2}, rep order.
inline FuncTable build_f(const FamilyParams& P) { return make_evaluator(P).table(P.u, P.v); }

inline bool brute_force_pp(const FamilyParams& P) {
  OccupancySet scratch;
  return make_evaluator(P).is_pp(P.u, P.v, scratch);
}

inline bool brute_force_cpp(const FamilyParams& P) {
  OccupancySet scratch;
  return make_evaluator(P).is_cpp(P.u, P.v, scratch);
}

/// The family written out as one polynomial, reduced mod x^{q^2} - x.
/// Exponent arithmetic only; slow, intended as an independent check on
/// build_f.
inline Poly expand_f(const FamilyParams& P) {
  const FieldCtx& F = P.F();
  const Poly th({P.c, P.b});  // c + b x, a x^q added below
  Poly theta_poly = add(F, th, Poly::monomial(P.a, F.q()));
  const Poly tm = pow_mod(F, theta_poly, P.m());
  const Poly core = mul_mod(F, pow_mod(F, theta_poly, P.r), compose_mod(F, P.phi, tm));
  return add(F, core, add(F, Poly::monomial(P.u, F.q()), Poly::monomial(P.v, 1)));
}

/// Image of θ in canonical order.
inline std::vector<FieldElem> compute_S(const FieldCtx& F, FieldElem a, FieldElem b, FieldElem c) {
  OccupancySet hit(F.size());
  std::vector<FieldElem> out;
  for (std::uint32_t i = 0; i < F.size(); ++i) {
    const FieldElem t = theta(F, a, b, c, F.element(i));
    if (hit.insert(t.rep())) out.push_back(t);
  }
  F.sort_canonical(out);
  return out;
}

inline std::vector<FieldElem> compute_S(const FamilyParams& P) { return compute_S(P.F(), P.a, P.b, P.c); }

/// ab != 0, a^{q+1} = b^{q+1}, a c^q = b^q c.
inline bool base_hypotheses(const FieldCtx& F, FieldElem a, FieldElem b, FieldElem c) {
  return !a.is_zero() && !b.is_zero() && F.norm(a) == F.norm(b) && F.mul(a, F.frobenius(c)) == F.mul(F.frobenius(b), c);
}

inline bool base_hypotheses(const FamilyParams& P) { return base_hypotheses(P.F(), P.a, P.b, P.c); }

struct Decomposition {
  std::uint64_t i;  // b = ξ^{(q-1)i} a^q, 0 <= i < q+1
  FieldElem e;      // c = ξ^{-i} e, e in F_q
};

/// Writes b and c relative to a; absent when the base hypotheses fail.
inline std::optional<Decomposition> decompose(const FieldCtx& F, FieldElem a, FieldElem b, FieldElem c) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("decompose: requires ab != 0");
  const std::uint64_t L = *F.log(F.div(b, F.frobenius(a)));
  if (L % (F.q() - 1) != 0) return std::nullopt;
  Decomposition D{L / (F.q() - 1), {}};
  D.e = F.mul(F.xi_pow(static_cast<std::int64_t>(D.i)), c);
  if (!F.in_subfield(D.e)) return std::nullopt;
  return D;
}

/// {ξ^{-i} e : e in F_q}, which is S under the base hypotheses; listed
/// as 0 followed by ξ^{(q+1)j - i}, j = 0..q-2.
inline std::vector<FieldElem> coset_S(const FieldCtx& F, std::uint64_t i) {
  std::vector<FieldElem> out{F.zero()};
  for (std::uint64_t j = 0; j + 1 < F.q(); ++j)
    out.push_back(F.xi_pow(static_cast<std::int64_t>((F.q() + 1) * j) - static_cast<std::int64_t>(i)));
  return out;
}

/// i ≡ 0 mod gcd(q+1, d), i.e. b = ξ^{(q-1)jd/n} a^q for some j.
inline bool reduction_shape(const FieldCtx& F, const Decomposition& D, std::uint64_t d) {
  return D.i % arith::gcd(std::uint64_t{F.q()} + 1, d) == 0;
}

/// g(s) = s^r[Bφ(s^m) + Kφ(s^m)^q] + (u^{q+1} - v^{q+1}) s with K = A^{1-r}B^{qr}.
inline FieldElem g_at(const FamilyParams& P, const DerivedCoeffs& D, FieldElem K, FieldElem s) {
  const FieldCtx& F = P.F();
  const FieldElem ph = eval(F, P.phi_reduced, F.pow(s, D.m));
  const FieldElem bracket = F.add(F.mul(D.B, ph), F.mul(K, F.frobenius(ph)));
  return F.add(F.mul(F.pow(s, P.r), bracket), F.mul(D.gap, s));
}

/// h(x) = x^r[Bφ(x) + Kφ(x)^q + u^{q+1} - v^{q+1}]^m.
inline FieldElem h_at(const FamilyParams& P, const DerivedCoeffs& D, FieldElem K, FieldElem x) {
  const FieldCtx& F = P.F();
  const FieldElem ph = eval(F, P.phi_reduced, x);
  const FieldElem bracket = F.add(F.add(F.mul(D.B, ph), F.mul(K, F.frobenius(ph))), D.gap);
  return F.mul(F.pow(x, P.r), F.pow(bracket, D.m));
}

/// g tabulated on S. Throws when the base hypotheses fail; nullopt when
/// A = 0 and r >= 2, where A^{1-r} does not exist.
inline std::optional<FuncTable> build_g(const FamilyParams& P) {
  if (!base_hypotheses(P)) throw std::invalid_argument("build_g: requires ab != 0, a^(q+1) = b^(q+1), ac^q = b^q c");
  const auto D = derive_coeffs(P);
  const auto K = twist(P, D);
  if (!K) return std::nullopt;
  return FuncTable::tabulate(compute_S(P), [&](FieldElem s) { return g_at(P, D, *K, s); });
}

/// h tabulated on an arbitrary domain (U_n, or U_d \ U_{d/2} for odd j).
inline std::optional<FuncTable> h_table(const FamilyParams& P, std::vector<FieldElem> domain) {
  const auto D = derive_coeffs(P);
  const auto K = twist(P, D);
  if (!K) return std::nullopt;
  return FuncTable::tabulate(std::move(domain), [&](FieldElem x) { return h_at(P, D, *K, x); });
}

/// The structural part of the second reduction: base hypotheses plus the
/// shape of b. The r, u, v clause is not needed for the sets themselves.
inline Decomposition require_reduction_shape(const FamilyParams& P, const char* who) {
  if (!base_hypotheses(P)) throw std::invalid_argument(std::string(who) + ": base hypotheses fail");
  const auto dec = decompose(P.F(), P.a, P.b, P.c);
  if (!reduction_shape(P.F(), *dec, P.d))
    throw std::invalid_argument(std::string(who) + ": i is not a multiple of gcd(q+1, d)");
  return *dec;
}

/// Second-reduction hypotheses on (r, u, v): u^{q+1} = v^{q+1} and
/// gcd(r, m) = 1, or u^{q+1} != v^{q+1} and r = 1.
inline bool ruv_clause(const FamilyParams& P, const DerivedCoeffs& D) {
  return D.gap.is_zero() ? arith::gcd(P.r, D.m) == 1 : P.r == 1;
}

/// h on U_n, n = d / gcd(q+1, d). Throws unless the second-reduction
/// hypotheses hold; nullopt when A^{1-r} is undefined.
inline std::optional<FuncTable> build_h(const FamilyParams& P) {
  require_reduction_shape(P, "build_h");
  const auto D = derive_coeffs(P);
  if (!ruv_clause(P, D)) throw std::invalid_argument("build_h: r, u, v clause fails");
  return h_table(P, P.F().roots_of_unity(D.n));
}

struct LambdaPartition {
  std::vector<FieldElem> image;                                    // canonical order
  std::vector<std::pair<FieldElem, std::vector<FieldElem>>> fibers;  // keyed by image point
};

/// λ(x) = x^m on S.
inline LambdaPartition lambda_partition(const FamilyParams& P) {
  require_reduction_shape(P, "lambda_partition");
  const FieldCtx& F = P.F();
  const auto lam = FuncTable::tabulate(compute_S(P), [&](FieldElem s) { return F.pow(s, P.m()); });
  LambdaPartition out;
  out.fibers = agw::fibers(lam);
  for (const auto& [y, _] : out.fibers) out.image.push_back(y);
  F.sort_canonical(out.image);
  return out;
}

struct Linearized {
  FieldElem alpha, beta, gamma;
};

/// For d | q+1 and r = 1, f agrees with αx^q + βx + γ on F_{q^2}.
inline Linearized linearize(const FamilyParams& P) {
  if (!base_hypotheses(P)) throw std::invalid_argument("linearize: base hypotheses fail");
  const FieldCtx& F = P.F();
  if (!arith::divides(P.d, std::uint64_t{F.q()} + 1)) throw std::invalid_argument("linearize: d does not divide q+1");
  if (P.r != 1) throw std::invalid_argument("linearize: requires r = 1");
  const FieldElem pd = eval(F, P.phi_reduced, *derive_coeffs(P).delta);
  return {F.add(F.mul(pd, P.a), P.u), F.add(F.mul(pd, P.b), P.v), F.mul(pd, P.c)};
}

inline Poly linearized_poly(const FieldCtx& F, const Linearized& L) {
  return add(F, Poly({L.gamma, L.beta}), Poly::monomial(L.alpha, F.q()));
}

/// The square θ̄∘f = g∘θ with θ̄ = Ax^q + Bx + C when A != 0. When A = 0,
/// f factors through θ as f = F∘θ with F(s) = s^rφ(s^m) + (u/a)(s - c), and
/// the square uses θ̄ = θ, g = θ∘F.
inline agw::Diagram<FieldElem> theorem1_diagram(const FamilyParams& P) {
  if (!base_hypotheses(P)) throw std::invalid_argument("theorem1_diagram: base hypotheses fail");
  const FieldCtx& F = P.F();
  const auto D = derive_coeffs(P);
  auto R = F.elements();
  auto S = compute_S(P);
  auto f = build_f(P);
  auto th = FuncTable::tabulate(R, [&](FieldElem x) { return theta(F, P.a, P.b, P.c, x); });
  if (!D.A.is_zero()) {
    auto tb = FuncTable::tabulate(R, [&](FieldElem x) { return theta(F, D.A, D.B, D.C, x); });
    auto S_bar = compute_S(F, D.A, D.B, D.C);
    auto g = *build_g(P);
    return agw::Diagram<FieldElem>(std::move(R), std::move(S), std::move(S_bar), std::move(f), std::move(th),
                                   std::move(tb), std::move(g));
  }
  const FieldElem ua = F.div(P.u, P.a);
  auto g = FuncTable::tabulate(S, [&](FieldElem s) {
    const FieldElem Fs = F.add(F.mul(F.pow(s, P.r), eval(F, P.phi_reduced, F.pow(s, D.m))), F.mul(ua, F.sub(s, P.c)));
    return theta(F, P.a, P.b, P.c, Fs);
  });
  auto S_bar = S;
  auto tb = th;
  return agw::Diagram<FieldElem>(std::move(R), std::move(S), std::move(S_bar), std::move(f), std::move(th),
                                 std::move(tb), std::move(g));
}

}  // namespace ppq
