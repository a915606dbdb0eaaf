// Dense polynomials over F_{q^2}, reduction modulo x^{q^2} - x, and the
// brute-force permutation oracles every criterion is checked against.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppq/bitset.hpp"
#include "ppq/field.hpp"
#include "ppq/finite_map.hpp"
#include "ppq/text.hpp"

namespace ppq {

/// Coefficient vector indexed by exponent, kept without trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<FieldElem> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(FieldElem c) { return Poly({c}); }
  static Poly monomial(FieldElem c, std::size_t e) {
    std::vector<FieldElem> v(e + 1);
    v[e] = c;
    return Poly(std::move(v));
  }

  /// -1 for the zero polynomial.
  std::ptrdiff_t degree() const { return static_cast<std::ptrdiff_t>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  FieldElem operator[](std::size_t e) const { return e < c_.size() ? c_[e] : FieldElem{}; }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  std::size_t term_count() const {
    return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](FieldElem c) { return !c.is_zero(); }));
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<FieldElem> c_;
};

/// Function table over F_{q^2} or over a designated subset of it.
using FuncTable = FiniteMap<FieldElem>;

inline Poly add(const FieldCtx& F, const Poly& P, const Poly& Q) {
  std::vector<FieldElem> out(std::max(P.coeffs().size(), Q.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.add(P[i], Q[i]);
  return Poly(std::move(out));
}

inline Poly sub(const FieldCtx& F, const Poly& P, const Poly& Q) {
  std::vector<FieldElem> out(std::max(P.coeffs().size(), Q.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.sub(P[i], Q[i]);
  return Poly(std::move(out));
}

inline Poly scale(const FieldCtx& F, FieldElem c, const Poly& P) {
  std::vector<FieldElem> out(P.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.mul(c, P[i]);
  return Poly(std::move(out));
}

inline Poly mul(const FieldCtx& F, const Poly& P, const Poly& Q) {
  if (P.is_zero() || Q.is_zero()) return {};
  std::vector<FieldElem> out(P.coeffs().size() + Q.coeffs().size() - 1);
  for (std::size_t i = 0; i < P.coeffs().size(); ++i) {
    if (P[i].is_zero()) continue;
    for (std::size_t j = 0; j < Q.coeffs().size(); ++j) out[i + j] = F.add(out[i + j], F.mul(P[i], Q[j]));
  }
  return Poly(std::move(out));
}

/// Horner's rule over the nonzero terms, stepping across zero runs with a
/// single power.
inline FieldElem eval(const FieldCtx& F, const Poly& P, FieldElem x) {
  const auto& c = P.coeffs();
  if (c.empty()) return F.zero();
  FieldElem acc = c.back();
  std::size_t gap = 0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    ++gap;
    if (c[i].is_zero()) continue;
    acc = F.add(F.mul(acc, F.pow(x, gap)), c[i]);
    gap = 0;
  }
  return F.mul(acc, F.pow(x, gap));
}

/// Folds exponents e >= q^2 to ((e-1) mod (q^2-1)) + 1; the result agrees
/// with P on every point of F_{q^2}.
inline Poly reduce_mod(const FieldCtx& F, const Poly& P) {
  const std::size_t qq = F.size(), n = F.group_order();
  if (P.coeffs().size() <= qq) return P;
  std::vector<FieldElem> out(qq);
  for (std::size_t e = 0; e < P.coeffs().size(); ++e) {
    if (P[e].is_zero()) continue;
    const std::size_t t = e < qq ? e : ((e - 1) % n) + 1;
    out[t] = F.add(out[t], P[e]);
  }
  return Poly(std::move(out));
}

inline Poly mul_mod(const FieldCtx& F, const Poly& P, const Poly& Q) { return reduce_mod(F, mul(F, P, Q)); }

inline Poly pow_mod(const FieldCtx& F, Poly base, std::uint64_t e) {
  Poly acc = Poly::constant(F.one());
  base = reduce_mod(F, base);
  while (e > 0) {
    if (e & 1) acc = mul_mod(F, acc, base);
    e >>= 1;
    if (e) base = mul_mod(F, base, base);
  }
  return acc;
}

/// outer(inner(x)) reduced modulo x^{q^2} - x.
inline Poly compose_mod(const FieldCtx& F, const Poly& outer, const Poly& inner) {
  Poly acc;
  for (std::size_t i = outer.coeffs().size(); i-- > 0;)
    acc = add(F, mul_mod(F, acc, inner), Poly::constant(outer[i]));
  return acc;
}

/// Reduces every exponent modulo d (x^k -> x^{k mod d}).
inline Poly reduce_exponents(const FieldCtx& F, const Poly& P, std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("exponent modulus must be positive");
  if (P.coeffs().size() <= d) return P;
  std::vector<FieldElem> out(d);
  for (std::size_t e = 0; e < P.coeffs().size(); ++e) out[e % d] = F.add(out[e % d], P[e]);
  return Poly(std::move(out));
}

inline FuncTable func_table(const FieldCtx& F, const Poly& P, std::vector<FieldElem> domain) {
  return FuncTable::tabulate(std::move(domain), [&](FieldElem x) { return eval(F, P, x); });
}

/// Table over the whole field, indexed by rep.
inline FuncTable func_table(const FieldCtx& F, const Poly& P) { return func_table(F, P, F.elements()); }

/// Bijectivity of x -> fn(x) on F_{q^2}, stopping at the first collision.
template <class Fn>
bool is_permutation_fn(const FieldCtx& F, Fn&& fn) {
  OccupancySet seen(F.size());
  for (std::uint32_t i = 0; i < F.size(); ++i)
    if (!seen.insert(fn(F.element(i)).rep())) return false;
  return true;
}

/// Requires a table whose domain is all of F_{q^2}.
inline bool is_permutation(const FieldCtx& F, const FuncTable& T) {
  if (T.domain.size() != F.size()) throw std::invalid_argument("is_permutation: domain is not the whole field");
  OccupancySet seen(F.size());
  for (auto y : T.values)
    if (!seen.insert(y.rep())) return false;
  return true;
}

/// True iff the table maps its domain onto itself.
inline bool permutes_set(const FieldCtx& F, const FuncTable& T) {
  OccupancySet in_domain(F.size()), hit(F.size());
  for (auto x : T.domain) in_domain.insert(x.rep());
  for (auto y : T.values)
    if (!in_domain.contains(y.rep()) || !hit.insert(y.rep())) return false;
  return true;
}

/// Adds the identity map to a whole-field table.
inline FuncTable plus_identity(const FieldCtx& F, const FuncTable& T) {
  FuncTable out = T;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] = F.add(out.values[i], out.domain[i]);
  return out;
}

inline bool is_complete_permutation(const FieldCtx& F, const FuncTable& T) {
  return is_permutation(F, T) && is_permutation(F, plus_identity(F, T));
}

/// f and f + x both permute F_{q^2}.
inline bool is_complete_permutation(const FieldCtx& F, const Poly& P) {
  return is_complete_permutation(F, func_table(F, P));
}

inline bool equal_as_functions(const FieldCtx& F, const FuncTable& T, const Poly& Q) {
  for (std::size_t i = 0; i < T.size(); ++i)
    if (T.values[i] != eval(F, Q, T.domain[i])) return false;
  return true;
}

inline bool equal_as_functions(const FieldCtx& F, const Poly& P, const Poly& Q) {
  for (std::uint32_t i = 0; i < F.size(); ++i) {
    const auto x = F.element(i);
    if (eval(F, P, x) != eval(F, Q, x)) return false;
  }
  return true;
}

/// "e:c" pairs separated by commas, highest exponent first; the zero
/// polynomial prints as "0:0".
inline std::string format_poly(const FieldCtx& F, const Poly& P) {
  if (P.is_zero()) return "0:0";
  std::string out;
  for (std::size_t e = P.coeffs().size(); e-- > 0;) {
    if (P[e].is_zero()) continue;
    if (!out.empty()) out += ", ";
    out += std::to_string(e) + ":" + F.format(P[e]);
  }
  return out;
}

/// Inverse of format_poly; repeated exponents are summed.
inline Poly parse_poly(const FieldCtx& F, std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) return {};
  std::vector<FieldElem> c;
  for (auto term : detail::split_top_level(text, ',')) {
    const auto colon = term.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("polynomial term '" + std::string(term) + "' is not exponent:coefficient");
    const auto e = detail::parse_int(term.substr(0, colon));
    if (!e || *e < 0) throw std::invalid_argument("bad exponent in term '" + std::string(term) + "'");
    const auto idx = static_cast<std::size_t>(*e);
    if (idx >= (std::size_t{1} << 24)) throw std::invalid_argument("exponent too large: " + std::to_string(idx));
    if (c.size() <= idx) c.resize(idx + 1);
    c[idx] = F.add(c[idx], F.parse(term.substr(colon + 1)));
  }
  return Poly(std::move(c));
}

}  // namespace ppq
