// Small integer helpers shared by the field and rule code.
#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace ppq::arith {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

/// Distinct prime factors in increasing order.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f != 0) continue;
    out.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> lo, hi;
  for (std::uint64_t f = 1; f * f <= n; ++f) {
    if (n % f != 0) continue;
    lo.push_back(f);
    if (f != n / f) hi.push_back(n / f);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

inline bool divides(std::uint64_t d, std::uint64_t n) { return d != 0 && n % d == 0; }

/// Non-negative residue of k modulo n (n > 0).
inline std::uint64_t mod(std::int64_t k, std::uint64_t n) {
  const auto sn = static_cast<std::int64_t>(n);
  const auto r = k % sn;
  return static_cast<std::uint64_t>(r < 0 ? r + sn : r);
}

}  // namespace ppq::arith
