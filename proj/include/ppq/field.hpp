// Table-driven arithmetic in F_{q^2} = F_p[x]/(f), q = p^m.
//
// Elements are stored by discrete logarithm with respect to a fixed
// primitive element xi: rep 0 is zero, rep k+1 is xi^k. Multiplication is
// index addition, and addition goes through a Zech table
// Z(k) = log(1 + xi^k). The coefficient-vector view ("code") is only used
// for construction, parsing and printing.
//
// Construction is deterministic: the modulus is the first monic irreducible
// of degree 2m when coefficient vectors are compared low degree first, and
// xi is the first generator of the multiplicative group in that same order.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppq/arith.hpp"
#include "ppq/text.hpp"

namespace ppq {

class FieldElem {
 public:
  constexpr FieldElem() = default;
  static constexpr FieldElem from_rep(std::uint32_t rep) {
    FieldElem e;
    e.rep_ = rep;
    return e;
  }
  constexpr std::uint32_t rep() const { return rep_; }
  constexpr bool is_zero() const { return rep_ == 0; }
  friend constexpr bool operator==(FieldElem, FieldElem) = default;

 private:
  std::uint32_t rep_ = 0;
};

namespace detail {

// Polynomials over F_p as little-endian digit vectors. Only used while the
// tables are being built.
class PrimePolyRing {
 public:
  PrimePolyRing(std::uint32_t p, std::uint32_t n) : p_(p), n_(n) {}

  std::vector<std::uint32_t> digits(std::uint64_t code) const {
    std::vector<std::uint32_t> d(n_);
    for (auto& c : d) {
      c = static_cast<std::uint32_t>(code % p_);
      code /= p_;
    }
    return d;
  }

  std::uint64_t code(const std::vector<std::uint32_t>& d) const {
    std::uint64_t out = 0;
    for (std::size_t i = d.size(); i-- > 0;) out = out * p_ + d[i];
    return out;
  }

  // Remainder of `a` (any length) modulo monic `g` of degree deg(g).
  std::vector<std::uint32_t> rem(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& g) const {
    const std::size_t dg = g.size() - 1;
    for (std::size_t i = a.size(); i-- > dg;) {
      const std::uint32_t lead = a[i];
      if (lead == 0) continue;
      for (std::size_t j = 0; j <= dg; ++j) {
        const std::uint64_t sub = static_cast<std::uint64_t>(lead) * g[j] % p_;
        auto& t = a[i - dg + j];
        t = static_cast<std::uint32_t>((t + p_ - sub) % p_);
      }
    }
    a.resize(std::min(a.size(), dg));
    return a;
  }

  std::vector<std::uint32_t> mulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                    const std::vector<std::uint32_t>& g) const {
    std::vector<std::uint32_t> prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p_);
    }
    auto r = rem(std::move(prod), g);
    r.resize(n_, 0);
    return r;
  }

  std::vector<std::uint32_t> powmod(std::vector<std::uint32_t> base, std::uint64_t e,
                                    const std::vector<std::uint32_t>& g) const {
    std::vector<std::uint32_t> acc(n_, 0);
    acc[0] = 1;
    while (e > 0) {
      if (e & 1) acc = mulmod(acc, base, g);
      base = mulmod(base, base, g);
      e >>= 1;
    }
    return acc;
  }

  // Irreducible iff no monic factor of degree 1..n/2 divides it.
  bool irreducible(const std::vector<std::uint32_t>& f) const {
    const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t k = 1; k <= n / 2; ++k) {
      const std::uint64_t count = arith::ipow(p_, k);
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> g(k + 1);
        std::uint64_t t = idx;
        for (std::uint32_t i = 0; i < k; ++i) {
          g[i] = static_cast<std::uint32_t>(t % p_);
          t /= p_;
        }
        g[k] = 1;
        const auto r = rem(f, g);
        if (std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; })) return false;
      }
    }
    return true;
  }

 private:
  std::uint32_t p_, n_;
};

}  // namespace detail

/// Immutable description of F_{q^2} together with its log/exp/Zech tables.
/// Safe to share between threads once constructed.
class FieldCtx {
 public:
  static constexpr std::uint64_t kDefaultTableBound = std::uint64_t{1} << 16;
  static constexpr std::uint32_t kNoZech = 0xffffffffu;
  /// Fields this small also get a full rep-by-rep addition table.
  static constexpr std::uint32_t kDenseAddLimit = 256;

  FieldCtx(std::uint32_t p, std::uint32_t m, std::uint64_t table_bound = kDefaultTableBound) : p_(p), m_(m) {
    if (!arith::is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (m == 0) throw std::invalid_argument("extension degree must be positive");
    deg_ = 2 * m;
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < deg_; ++i) {
      size *= p;
      if (size > table_bound)
        throw std::invalid_argument("field of size " + std::to_string(p) + "^" + std::to_string(deg_) +
                                    " exceeds table bound " + std::to_string(table_bound));
    }
    size_ = static_cast<std::uint32_t>(size);
    order_ = size_ - 1;
    q_ = static_cast<std::uint32_t>(arith::ipow(p, m));
    build_tables();
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t q() const { return q_; }
  /// Number of elements, q^2.
  std::uint32_t size() const { return size_; }
  /// Order of the multiplicative group, q^2 - 1.
  std::uint32_t group_order() const { return order_; }
  /// Degree of F_{q^2} over the prime field.
  std::uint32_t degree() const { return deg_; }
  /// Monic defining polynomial, lowest coefficient first.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::string spec() const { return m_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(m_); }

  FieldElem zero() const { return {}; }
  FieldElem one() const { return FieldElem::from_rep(1); }
  FieldElem xi() const { return FieldElem::from_rep(2); }
  FieldElem xi_pow(std::int64_t k) const {
    return FieldElem::from_rep(static_cast<std::uint32_t>(arith::mod(k, order_)) + 1);
  }

  /// Element with the given rep; reps enumerate the field as 0..q^2-1.
  FieldElem element(std::uint32_t rep) const { return FieldElem::from_rep(rep); }

  std::vector<FieldElem> elements() const {
    std::vector<FieldElem> out(size_);
    for (std::uint32_t i = 0; i < size_; ++i) out[i] = FieldElem::from_rep(i);
    return out;
  }

  /// Discrete log base xi, absent for zero.
  std::optional<std::uint32_t> log(FieldElem x) const {
    if (x.is_zero()) return std::nullopt;
    return x.rep() - 1;
  }

  // Coefficient-vector view.
  std::uint32_t code(FieldElem x) const { return x.is_zero() ? 0 : exp_[x.rep() - 1]; }
  FieldElem from_code(std::uint32_t code) const {
    if (code >= size_) throw std::invalid_argument("coefficient code out of range");
    return code == 0 ? zero() : FieldElem::from_rep(log_[code] + 1);
  }
  std::vector<std::uint32_t> coeffs(FieldElem x) const { return detail::PrimePolyRing(p_, deg_).digits(code(x)); }
  FieldElem from_coeffs(std::span<const std::int64_t> c) const {
    if (c.size() > deg_) throw std::invalid_argument("too many coefficients for field of degree " + std::to_string(deg_));
    std::uint64_t out = 0;
    for (std::size_t i = c.size(); i-- > 0;) out = out * p_ + arith::mod(c[i], p_);
    return from_code(static_cast<std::uint32_t>(out));
  }
  /// Prime-field embedding of an integer.
  FieldElem from_int(std::int64_t k) const { return from_code(static_cast<std::uint32_t>(arith::mod(k, p_))); }

  FieldElem add(FieldElem x, FieldElem y) const {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const std::uint32_t a = x.rep() - 1, b = y.rep() - 1;
    const std::uint32_t diff = b >= a ? b - a : b + order_ - a;
    const std::uint32_t z = zech_[diff];
    if (z == kNoZech) return zero();
    std::uint32_t s = a + z;
    if (s >= order_) s -= order_;
    return FieldElem::from_rep(s + 1);
  }
  FieldElem neg(FieldElem x) const {
    if (x.is_zero()) return x;
    std::uint32_t s = x.rep() - 1 + neg_shift_;
    if (s >= order_) s -= order_;
    return FieldElem::from_rep(s + 1);
  }
  FieldElem sub(FieldElem x, FieldElem y) const { return add(x, neg(y)); }
  /// Row-major rep x rep sums, or null above kDenseAddLimit elements.
  const std::uint16_t* dense_add() const { return dense_add_.empty() ? nullptr : dense_add_.data(); }

  FieldElem mul(FieldElem x, FieldElem y) const {
    if (x.is_zero() || y.is_zero()) return zero();
    std::uint32_t s = x.rep() - 1 + y.rep() - 1;
    if (s >= order_) s -= order_;
    return FieldElem::from_rep(s + 1);
  }
  FieldElem inv(FieldElem x) const {
    if (x.is_zero()) throw std::domain_error("inverse of zero");
    const std::uint32_t l = x.rep() - 1;
    return FieldElem::from_rep((l == 0 ? 0 : order_ - l) + 1);
  }
  FieldElem div(FieldElem x, FieldElem y) const {
    if (y.is_zero()) throw std::domain_error("division by zero");
    return mul(x, inv(y));
  }
  /// x^e with 0^0 = 1.
  FieldElem pow(FieldElem x, std::uint64_t e) const {
    if (x.is_zero()) return e == 0 ? one() : zero();
    const std::uint64_t l = x.rep() - 1;
    return FieldElem::from_rep(static_cast<std::uint32_t>(l * (e % order_) % order_) + 1);
  }
  /// Scales by an integer through the prime-field embedding.
  FieldElem scale(std::int64_t k, FieldElem x) const { return mul(from_int(k), x); }

  FieldElem frobenius(FieldElem x) const { return pow(x, q_); }
  FieldElem norm(FieldElem x) const { return pow(x, std::uint64_t{q_} + 1); }
  FieldElem trace(FieldElem x) const { return add(x, frobenius(x)); }

  bool in_subfield(FieldElem x) const { return x.is_zero() || (x.rep() - 1) % (q_ + 1) == 0; }
  bool in_prime_field(FieldElem x) const { return code(x) < p_; }

  /// {0} followed by xi^{(q+1)j}, j = 1..q-1.
  std::vector<FieldElem> subfield() const {
    std::vector<FieldElem> out{zero()};
    for (std::uint32_t j = 1; j < q_; ++j) out.push_back(xi_pow(static_cast<std::int64_t>(q_ + 1) * j));
    return out;
  }

  /// U_n listed as xi^{k(q^2-1)/n}, k = 0..n-1.
  std::vector<FieldElem> roots_of_unity(std::uint64_t n) const {
    if (!arith::divides(n, order_))
      throw std::invalid_argument(std::to_string(n) + " does not divide q^2-1 = " + std::to_string(order_));
    std::vector<FieldElem> out;
    out.reserve(n);
    const std::uint64_t step = order_ / n;
    for (std::uint64_t k = 0; k < n; ++k) out.push_back(xi_pow(static_cast<std::int64_t>(k * step)));
    return out;
  }

  /// Sort key realizing the canonical order (coefficient vectors compared
  /// low degree first).
  std::uint32_t canonical_key(FieldElem x) const { return canon_key_[x.rep()]; }
  bool canonical_less(FieldElem x, FieldElem y) const { return canonical_key(x) < canonical_key(y); }
  void sort_canonical(std::vector<FieldElem>& v) const {
    std::sort(v.begin(), v.end(), [this](FieldElem x, FieldElem y) { return canonical_less(x, y); });
  }

  /// Prime-field elements print as integers, everything else as "[c0,c1,...]".
  std::string format(FieldElem x) const {
    const std::uint32_t c = code(x);
    if (c < p_) return std::to_string(c);
    std::string out = "[";
    const auto d = coeffs(x);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(d[i]);
    }
    return out + "]";
  }

  /// Accepts integers (reduced mod p), coefficient lists "[c0,c1,...]",
  /// and powers of the primitive element "xi" / "xi^k".
  FieldElem parse(std::string_view text) const {
    const std::string_view s = detail::trim(text);
    if (s.empty()) throw std::invalid_argument("empty field element");
    if (s.front() == '[') {
      if (s.back() != ']') throw std::invalid_argument("unterminated coefficient list: " + std::string(s));
      std::vector<std::int64_t> c;
      std::string_view body = s.substr(1, s.size() - 2);
      if (!detail::trim(body).empty()) {
        while (true) {
          const auto comma = body.find(',');
          const auto v = detail::parse_int(body.substr(0, comma));
          if (!v) throw std::invalid_argument("bad coefficient in " + std::string(s));
          c.push_back(*v);
          if (comma == std::string_view::npos) break;
          body.remove_prefix(comma + 1);
        }
      }
      return from_coeffs(c);
    }
    if (s.starts_with("xi")) {
      std::string_view rest = detail::trim(s.substr(2));
      if (rest.empty()) return xi();
      if (rest.front() != '^') throw std::invalid_argument("bad element: " + std::string(s));
      const auto k = detail::parse_int(rest.substr(1));
      if (!k) throw std::invalid_argument("bad exponent in " + std::string(s));
      return xi_pow(*k);
    }
    const auto v = detail::parse_int(s);
    if (!v) throw std::invalid_argument("bad field element: " + std::string(s));
    return from_int(*v);
  }

  const std::vector<std::uint32_t>& exp_table() const { return exp_; }
  const std::vector<std::uint32_t>& log_table() const { return log_; }
  const std::vector<std::uint32_t>& zech_table() const { return zech_; }

 private:
  void build_tables() {
    const detail::PrimePolyRing ring(p_, deg_);
    find_modulus(ring);

    // Enumerate candidates in canonical order: c0 is the most significant
    // digit of the enumeration index.
    auto canonical_to_code = [&](std::uint64_t key) {
      std::vector<std::uint32_t> d(deg_);
      for (std::uint32_t i = deg_; i-- > 0;) {
        d[i] = static_cast<std::uint32_t>(key % p_);
        key /= p_;
      }
      return ring.code(d);
    };

    const auto factors = arith::prime_factors(order_);
    std::vector<std::uint32_t> xi_digits;
    for (std::uint64_t key = 1; key < size_ && xi_digits.empty(); ++key) {
      const auto cand = ring.digits(canonical_to_code(key));
      bool generator = true;
      for (auto l : factors) {
        const auto t = ring.powmod(cand, order_ / l, modulus_);
        if (ring.code(t) == 1) {
          generator = false;
          break;
        }
      }
      if (generator) xi_digits = cand;
    }
    if (xi_digits.empty()) throw std::logic_error("no primitive element found");

    exp_.assign(order_, 0);
    log_.assign(size_, 0);
    std::vector<std::uint32_t> cur(deg_, 0);
    cur[0] = 1;
    std::vector<bool> seen(size_, false);
    for (std::uint32_t k = 0; k < order_; ++k) {
      const auto c = static_cast<std::uint32_t>(ring.code(cur));
      if (c == 0 || seen[c]) throw std::logic_error("primitive element has short order");
      seen[c] = true;
      exp_[k] = c;
      log_[c] = k;
      cur = ring.mulmod(cur, xi_digits, modulus_);
    }
    if (ring.code(cur) != 1) throw std::logic_error("primitive element order mismatch");

    // 1 + xi^k only touches the constant coefficient.
    zech_.assign(order_, kNoZech);
    for (std::uint32_t k = 0; k < order_; ++k) {
      const std::uint32_t c = exp_[k];
      const std::uint32_t c0 = c % p_;
      const std::uint32_t shifted = c - c0 + (c0 + 1) % p_;
      zech_[k] = shifted == 0 ? kNoZech : log_[shifted];
    }
    neg_shift_ = p_ == 2 ? 0 : order_ / 2;

    canon_key_.assign(size_, 0);
    for (std::uint32_t rep = 0; rep < size_; ++rep) {
      const auto d = ring.digits(rep == 0 ? 0 : exp_[rep - 1]);
      std::uint64_t key = 0;
      for (std::uint32_t i = 0; i < deg_; ++i) key = key * p_ + d[i];
      canon_key_[rep] = static_cast<std::uint32_t>(key);
    }

    if (size_ <= kDenseAddLimit) {
      dense_add_.resize(std::size_t{size_} * size_);
      for (std::uint32_t a = 0; a < size_; ++a)
        for (std::uint32_t b = 0; b < size_; ++b)
          dense_add_[std::size_t{a} * size_ + b] =
              static_cast<std::uint16_t>(add(FieldElem::from_rep(a), FieldElem::from_rep(b)).rep());
    }
  }

  void find_modulus(const detail::PrimePolyRing& ring) {
    const std::uint64_t count = arith::ipow(p_, deg_);
    for (std::uint64_t key = 0; key < count; ++key) {
      std::vector<std::uint32_t> f(deg_ + 1);
      std::uint64_t t = key;
      for (std::uint32_t i = deg_; i-- > 0;) {
        f[i] = static_cast<std::uint32_t>(t % p_);
        t /= p_;
      }
      f[deg_] = 1;
      if (f[0] == 0) continue;
      if (ring.irreducible(f)) {
        modulus_ = std::move(f);
        return;
      }
    }
    throw std::logic_error("no irreducible polynomial of degree " + std::to_string(deg_));
  }

  std::uint32_t p_, m_, q_ = 0, deg_ = 0, size_ = 0, order_ = 0, neg_shift_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_, log_, zech_, canon_key_;
  std::vector<std::uint16_t> dense_add_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

inline FieldPtr build_field(std::uint32_t p, std::uint32_t m, std::uint64_t bound = FieldCtx::kDefaultTableBound) {
  return std::make_shared<const FieldCtx>(p, m, bound);
}

/// Parses "p" or "p^m" (the subfield F_q, q = p^m).
inline std::pair<std::uint32_t, std::uint32_t> parse_field_spec(std::string_view spec) {
  spec = detail::trim(spec);
  const auto caret = spec.find('^');
  const auto p = detail::parse_int(spec.substr(0, caret));
  std::optional<std::int64_t> m = 1;
  if (caret != std::string_view::npos) m = detail::parse_int(spec.substr(caret + 1));
  if (!p || !m || *p < 2 || *m < 1 || *p > 0xffff || *m > 32)
    throw std::invalid_argument("bad field spec '" + std::string(spec) + "' (expected p or p^m)");
  return {static_cast<std::uint32_t>(*p), static_cast<std::uint32_t>(*m)};
}

inline FieldPtr build_field(std::string_view spec, std::uint64_t bound = FieldCtx::kDefaultTableBound) {
  const auto [p, m] = parse_field_spec(spec);
  return build_field(p, m, bound);
}

}  // namespace ppq

template <>
struct std::hash<ppq::FieldElem> {
  std::size_t operator()(ppq::FieldElem x) const noexcept { return x.rep(); }
};
