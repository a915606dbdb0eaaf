#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ppq/families.hpp"
#include "support/random_diagram.hpp"

using namespace ppq;
using ppq::testing::IntMap;

namespace {

agw::Diagram<int> identity_diagram(int n) {
  std::vector<int> R(n);
  for (int i = 0; i < n; ++i) R[i] = i;
  const IntMap id(R, R);
  return agw::Diagram<int>(R, R, R, id, id, id, id);
}

FamilyParams random_base_params(const FieldPtr& F, std::mt19937_64& rng) {
  const auto any = [&] { return F->element(rng() % F->size()); };
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 1; d <= F->group_order(); ++d)
    if (F->group_order() % d == 0) divisors.push_back(d);
  for (;;) {
    const FieldElem a = any(), b = any(), c = any();
    if (!base_hypotheses(*F, a, b, c)) continue;
    const std::uint64_t d = divisors[rng() % divisors.size()];
    std::vector<FieldElem> phi(rng() % 3 + 1);
    for (auto& x : phi) x = any();
    return FamilyParams::make(F, a, b, c, any(), any(), rng() % 4 + 1, d, Poly(phi));
  }
}

}  // namespace

TEST(Agw, IdentityDiagram) {
  const auto D = identity_diagram(5);
  EXPECT_TRUE(agw::check_commutes(D));
  const auto e = agw::agw_equivalence(D);
  EXPECT_TRUE(e.lhs);
  EXPECT_TRUE(e.rhs);
  EXPECT_TRUE(e.agree);
  for (const auto& [s, fib] : agw::fibers(D.theta)) {
    ASSERT_EQ(fib.size(), 1u);
    EXPECT_EQ(fib[0], s);
  }
}

TEST(Agw, SurjectivityAndFibers) {
  const std::vector<int> R{0, 1, 2, 3}, B{7, 8};
  const IntMap constant(R, {7, 7, 7, 7});
  EXPECT_FALSE(agw::surjective(constant, B));
  EXPECT_TRUE(agw::surjective(IntMap(R, R), R));
  const auto fib = agw::fibers(constant);
  ASSERT_EQ(fib.size(), 1u);
  EXPECT_EQ(fib[0].second, R);
  EXPECT_FALSE(agw::bijective(IntMap(R, {0, 1, 2, 2}), R));
  EXPECT_TRUE(agw::bijective(IntMap(R, {3, 2, 1, 0}), R));
}

TEST(Agw, ConstructionRejectsBadShapes) {
  const std::vector<int> R{0, 1, 2}, S{0, 1, 2}, S2{0, 1};
  const IntMap id(R, R);
  EXPECT_THROW(agw::Diagram<int>(R, S, S2, id, id, id, IntMap(S, {0, 1, 1})), std::invalid_argument);
  // θ leaves its codomain.
  EXPECT_THROW(agw::Diagram<int>(R, S, S, id, IntMap(R, {0, 1, 5}), id, id), std::invalid_argument);
  // f not total.
  EXPECT_THROW(agw::Diagram<int>(R, S, S, IntMap({0, 1}, {0, 1}), id, id, id), std::invalid_argument);
}

TEST(Agw, PreconditionViolationsAreReported) {
  auto D = identity_diagram(4);
  D.g.values = {1, 2, 3, 0};  // g + 1 mod 4
  EXPECT_FALSE(agw::check_commutes(D));
  try {
    agw::agw_equivalence(D);
    FAIL() << "expected PreconditionError";
  } catch (const agw::PreconditionError& e) {
    EXPECT_EQ(e.violation(), agw::Violation::NotCommutative);
  }

  // Constant θ onto a two-point S; θ̄ and g chosen so the square commutes.
  const std::vector<int> R{0, 1}, S{5, 6};
  const IntMap id(R, R), th(R, {5, 5}), g(S, {0, 1});
  const agw::Diagram<int> D2(R, S, R, id, th, IntMap(R, {0, 0}), g);
  ASSERT_TRUE(agw::check_commutes(D2));
  try {
    agw::agw_equivalence(D2);
    FAIL() << "expected PreconditionError";
  } catch (const agw::PreconditionError& e) {
    EXPECT_EQ(e.violation(), agw::Violation::ThetaNotSurjective);
  }
}

TEST(Agw, RandomDiagramsAgree) {
  std::mt19937_64 rng(11);
  int bijective = 0, not_bijective = 0;
  for (int t = 0; t < 2000; ++t) {
    const auto D = ppq::testing::random_diagram(rng);
    ASSERT_TRUE(agw::check_commutes(D));
    const auto e = agw::agw_equivalence(D);
    ASSERT_TRUE(e.agree) << "trial " << t;
    (e.lhs ? bijective : not_bijective)++;

    std::size_t total = 0;
    for (const auto& [_, fib] : agw::fibers(D.theta)) total += fib.size();
    ASSERT_EQ(total, D.R.size());

    // The sufficiency direction on its own.
    if (agw::injective_on_fibers(D.f, D.theta) && agw::bijective(D.g, D.S_bar)) {
      ASSERT_TRUE(agw::bijective(D.f, D.R));
    }
  }
  EXPECT_GT(bijective, 100);
  EXPECT_GT(not_bijective, 100);
}

TEST(Agw, FamilySquareCommutes) {
  std::mt19937_64 rng(12);
  for (const char* spec : {"2", "3", "2^2", "5"}) {
    const auto F = build_field(spec);
    for (int t = 0; t < 60; ++t) {
      const FamilyParams P = random_base_params(F, rng);
      const auto D = theorem1_diagram(P);
      ASSERT_TRUE(agw::check_commutes(D)) << spec;
      ASSERT_EQ(D.S.size(), F->q());
      for (const auto& [_, fib] : agw::fibers(D.theta)) ASSERT_EQ(fib.size(), F->q());
      const auto e = agw::agw_equivalence(D);
      ASSERT_TRUE(e.agree);
      ASSERT_EQ(e.lhs, brute_force_pp(P));
      if (derive_coeffs(P).A.is_zero()) {
        EXPECT_FALSE(e.lhs);
        EXPECT_FALSE(e.rhs);
      }
    }
  }
}

TEST(Agw, FamilySquareForAPermutation) {
  // q = 3, a = b = 1, c = 0, u = 0, v = -1, r = 1, φ = 1 collapses to x^3.
  const auto F = build_field("3");
  const auto P = FamilyParams::make(F, F->one(), F->one(), F->zero(), F->zero(), F->neg(F->one()), 1, 1,
                                    Poly::constant(F->one()));
  ASSERT_TRUE(brute_force_pp(P));
  const auto e = agw::agw_equivalence(theorem1_diagram(P));
  EXPECT_TRUE(e.lhs);
  EXPECT_TRUE(e.rhs);
  EXPECT_TRUE(e.agree);
}

TEST(Agw, FamilySquareWithVanishingA) {
  // u = v = 1 with a = b = 1 gives A = bu - av = 0.
  const auto F = build_field("5");
  const auto P = FamilyParams::make(F, F->one(), F->one(), F->zero(), F->one(), F->one(), 2, 4, parse_poly(*F, "1:1, 0:2"));
  ASSERT_TRUE(derive_coeffs(P).A.is_zero());
  const auto e = agw::agw_equivalence(theorem1_diagram(P));
  EXPECT_FALSE(e.lhs);
  EXPECT_FALSE(e.rhs);
  EXPECT_TRUE(e.agree);
}
