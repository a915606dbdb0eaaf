#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "ppq/poly.hpp"

using namespace ppq;

namespace {

Poly random_poly(const FieldCtx& F, std::mt19937_64& rng, std::size_t max_terms, std::uint64_t max_exp) {
  std::vector<FieldElem> c(rng() % max_exp + 1);
  for (std::size_t t = 0; t < max_terms; ++t) c[rng() % c.size()] = F.element(rng() % F.size());
  return Poly(std::move(c));
}

// Naive evaluation by summing c_e * x^e with pow; Horner is what is tested.
FieldElem naive_eval(const FieldCtx& F, const Poly& P, FieldElem x) {
  FieldElem s = F.zero();
  for (std::size_t e = 0; e < P.coeffs().size(); ++e) s = F.add(s, F.mul(P[e], F.pow(x, e)));
  return s;
}

}  // namespace

TEST(Poly, EvalExamples) {
  const auto F = build_field("13");
  const auto two = F->from_int(2);
  EXPECT_EQ(eval(*F, Poly::monomial(F->one(), 1), two), two);
  EXPECT_EQ(eval(*F, Poly::constant(F->from_int(5)), two), F->from_int(5));
  EXPECT_EQ(eval(*F, Poly::monomial(F->one(), 28), two), F->from_int(3));
  EXPECT_EQ(eval(*F, Poly{}, two), F->zero());
}

TEST(Poly, HornerMatchesNaiveSum) {
  std::mt19937_64 rng(1);
  for (const char* spec : {"3", "2^2", "5"}) {
    const auto F = build_field(spec);
    for (int t = 0; t < 200; ++t) {
      const Poly P = random_poly(*F, rng, 6, 3 * F->size());
      for (auto x : F->elements()) ASSERT_EQ(eval(*F, P, x), naive_eval(*F, P, x));
    }
  }
}

TEST(Poly, ReduceModIsFunctionPreservingAndIdempotent) {
  std::mt19937_64 rng(2);
  for (const char* spec : {"2", "3", "2^2", "5"}) {
    const auto F = build_field(spec);
    const std::uint64_t Q = F->size();
    EXPECT_EQ(reduce_mod(*F, Poly::monomial(F->one(), Q)), Poly::monomial(F->one(), 1));
    for (int t = 0; t < 100; ++t) {
      const Poly P = random_poly(*F, rng, 8, 4 * Q);
      const Poly R = reduce_mod(*F, P);
      ASSERT_LT(R.degree(), static_cast<std::ptrdiff_t>(Q));
      ASSERT_EQ(reduce_mod(*F, R), R);
      ASSERT_TRUE(equal_as_functions(*F, P, R));
    }
    // x^r (x^{(q^2-1)/d})^d ≡ x^r for each divisor d.
    for (std::uint64_t d = 1; d < Q; ++d) {
      if ((Q - 1) % d) continue;
      for (std::uint64_t r = 1; r < 5; ++r) {
        const Poly P = Poly::monomial(F->one(), r + (Q - 1) / d * d);
        EXPECT_EQ(reduce_mod(*F, P), reduce_mod(*F, Poly::monomial(F->one(), r)));
      }
    }
  }
}

TEST(Poly, PowAndComposeModMatchPointwise) {
  std::mt19937_64 rng(3);
  const auto F = build_field("3");
  for (int t = 0; t < 50; ++t) {
    const Poly P = random_poly(*F, rng, 4, F->size());
    const Poly G = random_poly(*F, rng, 4, F->size());
    const std::uint64_t e = rng() % 1000;
    const Poly Pe = pow_mod(*F, P, e);
    const Poly C = compose_mod(*F, G, P);
    for (auto x : F->elements()) {
      ASSERT_EQ(eval(*F, Pe, x), F->pow(eval(*F, P, x), e));
      ASSERT_EQ(eval(*F, C, x), eval(*F, G, eval(*F, P, x)));
    }
  }
}

TEST(Poly, FuncTableExamples) {
  const auto F4 = build_field("2");
  const auto id = func_table(*F4, Poly::monomial(F4->one(), 1));
  for (std::size_t i = 0; i < id.size(); ++i) EXPECT_EQ(id.values[i], id.domain[i]);
  const auto cube = func_table(*F4, Poly::monomial(F4->one(), 3));
  for (std::size_t i = 0; i < cube.size(); ++i)
    EXPECT_EQ(cube.values[i], cube.domain[i].is_zero() ? F4->zero() : F4->one());

  // θ(x) = x^3 + x over F_9 has image F_3 (frozen by enumerating all 9 inputs).
  const auto F9 = build_field("3");
  const Poly theta = parse_poly(*F9, "3:1, 1:1");
  std::set<std::uint32_t> image, expect;
  for (auto y : func_table(*F9, theta).values) image.insert(y.rep());
  for (auto y : F9->subfield()) expect.insert(y.rep());
  EXPECT_EQ(image, expect);
  EXPECT_EQ(image.size(), 3u);
}

TEST(Poly, PermutationExamples) {
  const auto F4 = build_field("2");
  EXPECT_TRUE(is_permutation(*F4, func_table(*F4, Poly::monomial(F4->one(), 1))));
  EXPECT_FALSE(is_permutation(*F4, func_table(*F4, Poly::monomial(F4->one(), 3))));
  // (x^2 + x) + x^2 + v x = (1 + v)x for v outside F_2.
  for (auto v : F4->elements()) {
    if (F4->in_subfield(v)) continue;
    const Poly f = add(*F4, parse_poly(*F4, "2:1, 1:1"), add(*F4, parse_poly(*F4, "2:1"), Poly::monomial(v, 1)));
    EXPECT_TRUE(is_permutation(*F4, func_table(*F4, f))) << F4->format(v);
  }
}

TEST(Poly, CompletePermutationExamples) {
  const auto X = [](const FieldCtx& F) { return Poly::monomial(F.one(), 1); };
  for (const char* spec : {"3", "5", "7"}) {
    const auto F = build_field(spec);
    EXPECT_TRUE(is_complete_permutation(*F, X(*F))) << spec;
  }
  const auto F4 = build_field("2");
  EXPECT_FALSE(is_complete_permutation(*F4, X(*F4)));
  EXPECT_FALSE(is_complete_permutation(*F4, Poly::constant(F4->one())));
  // Complete-mapping family at q = 4: (x^4 + x) + e x with e in F_4 \ F_2.
  const auto F16 = build_field("2^2");
  for (auto e : F16->subfield()) {
    if (e.is_zero() || e == F16->one()) continue;
    const Poly f = add(*F16, parse_poly(*F16, "4:1, 1:1"), Poly::monomial(e, 1));
    EXPECT_TRUE(is_complete_permutation(*F16, f)) << F16->format(e);
  }
}

TEST(Poly, MonomialPermutationCriterion) {
  for (const char* spec : {"2", "3", "2^2", "5"}) {
    const auto F = build_field(spec);
    const std::uint64_t N = F->group_order();
    for (std::uint64_t k = 1; k <= N + 2; ++k) {
      const bool pp = is_permutation(*F, func_table(*F, Poly::monomial(F->one(), k)));
      ASSERT_EQ(pp, std::gcd(k, N) == 1) << spec << " k=" << k;
    }
  }
}

TEST(Poly, PermutesSet) {
  const auto F = build_field("13");
  const auto U = F->roots_of_unity(3);
  const auto w = U[1];
  EXPECT_TRUE(permutes_set(*F, FuncTable::tabulate(U, [&](FieldElem x) { return F->mul(w, x); })));
  EXPECT_TRUE(permutes_set(*F, FuncTable::tabulate(U, [&](FieldElem x) { return F->mul(x, x); })));
  EXPECT_FALSE(permutes_set(*F, FuncTable::tabulate(U, [&](FieldElem) { return F->one(); })));
  // Landing outside the domain is not a permutation of it.
  EXPECT_FALSE(permutes_set(*F, FuncTable::tabulate(U, [&](FieldElem x) { return F->mul(F->from_int(2), x); })));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const Poly P = random_poly(*F, rng, 3, 40);
    const auto T = func_table(*F, P);
    ASSERT_EQ(permutes_set(*F, T), is_permutation(*F, T));
    std::set<std::uint32_t> image;
    for (auto y : T.values) image.insert(y.rep());
    ASSERT_EQ(is_permutation(*F, T), image.size() == F->size());
  }
}

TEST(Poly, LinearizationAtQ5) {
  // (x^q - x + c)^{(q^2-1)/3+1} + x against α x^q + (1-α)x + αc,
  // α = (-1)^{(q+1)/3} = 1 at q = 5.
  const auto F = build_field("5");
  const std::uint64_t q = 5, e = (q * q - 1) / 3 + 1;
  const FieldElem alpha = F->one();
  for (auto c : F->elements()) {
    if (!F->trace(c).is_zero()) continue;
    const Poly inner = add(*F, parse_poly(*F, "5:1, 1:-1"), Poly::constant(c));
    const Poly f = add(*F, pow_mod(*F, inner, e), Poly::monomial(F->one(), 1));
    Poly lin = add(*F, Poly::monomial(alpha, q), Poly::monomial(F->sub(F->one(), alpha), 1));
    lin = add(*F, lin, Poly::constant(F->mul(alpha, c)));
    EXPECT_TRUE(equal_as_functions(*F, f, lin)) << F->format(c);
  }
  EXPECT_TRUE(equal_as_functions(*F, Poly::monomial(F->one(), 25), Poly::monomial(F->one(), 1)));
}

TEST(Poly, TextRoundTrip) {
  const auto F = build_field("13");
  const Poly P = parse_poly(*F, "28:1, 1:1, 0:[3,1]");
  EXPECT_EQ(format_poly(*F, P), "28:1, 1:1, 0:[3,1]");
  EXPECT_EQ(parse_poly(*F, format_poly(*F, P)), P);
  EXPECT_EQ(format_poly(*F, Poly{}), "0:0");
  EXPECT_EQ(parse_poly(*F, "0:0"), Poly{});
  EXPECT_EQ(parse_poly(*F, "1:1, 1:1"), Poly::monomial(F->from_int(2), 1));
  EXPECT_THROW(parse_poly(*F, "x^2"), std::invalid_argument);
  EXPECT_THROW(parse_poly(*F, "-1:3"), std::invalid_argument);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const Poly Q = random_poly(*F, rng, 5, 300);
    ASSERT_EQ(parse_poly(*F, format_poly(*F, Q)), Q);
  }
}

TEST(Poly, ReduceExponentsForTheInnerPolynomial) {
  // φ is only evaluated on U_d (θ^m for θ != 0); at θ = 0 the factor θ^r
  // kills it, so the value of the folded φ at 0 does not matter.
  const auto F = build_field("5");
  const std::uint64_t d = 6;
  const Poly phi = parse_poly(*F, "13:2, 7:1, 6:3, 0:1");
  const Poly red = reduce_exponents(*F, phi, d);
  EXPECT_LT(red.degree(), static_cast<std::ptrdiff_t>(d));
  for (auto x : F->roots_of_unity(d)) ASSERT_EQ(eval(*F, red, x), eval(*F, phi, x));
  EXPECT_EQ(reduce_exponents(*F, Poly::monomial(F->one(), 2), d), Poly::monomial(F->one(), 2));
}
