// Empirical check of the AGW criterion on explicit finite sets.
//
// Given a commutative square
//
//        f
//    R -----> R
//    |        |
//  θ |        | θ̄
//    v   g    v
//    S -----> S̄
//
// with θ, θ̄ surjective and #S = #S̄, f is bijective iff g is bijective and
// f is injective on every fiber of θ. Everything here works on value
// tables so arbitrary user maps can be checked.
#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ppq/finite_map.hpp"

namespace ppq::agw {

template <class T, class Hash = std::hash<T>>
using Map = FiniteMap<T, Hash>;

namespace detail {

template <class T, class Hash>
bool same_set(const std::vector<T>& a, const std::vector<T>& b) {
  const std::unordered_set<T, Hash> sa(a.begin(), a.end());
  if (sa.size() != a.size()) return false;
  if (a.size() != b.size()) return false;
  for (const auto& x : b)
    if (!sa.count(x)) return false;
  return true;
}

template <class T, class Hash>
void require_map(const Map<T, Hash>& m, const std::vector<T>& dom, const std::vector<T>& codom, const char* name) {
  if (!same_set<T, Hash>(m.domain, dom)) throw std::invalid_argument(std::string("diagram: ") + name + " is not total on its domain");
  const std::unordered_set<T, Hash> cod(codom.begin(), codom.end());
  for (const auto& y : m.values)
    if (!cod.count(y)) throw std::invalid_argument(std::string("diagram: ") + name + " leaves its codomain");
}

}  // namespace detail

/// R --f--> R, θ: R -> S, θ̄: R -> S̄, g: S -> S̄. Construction rejects
/// partial maps, values outside the stated codomain, and #S != #S̄.
template <class T, class Hash = std::hash<T>>
struct Diagram {
  std::vector<T> R, S, S_bar;
  Map<T, Hash> f, theta, theta_bar, g;

  Diagram(std::vector<T> r, std::vector<T> s, std::vector<T> s_bar, Map<T, Hash> f_, Map<T, Hash> theta_,
          Map<T, Hash> theta_bar_, Map<T, Hash> g_)
      : R(std::move(r)),
        S(std::move(s)),
        S_bar(std::move(s_bar)),
        f(std::move(f_)),
        theta(std::move(theta_)),
        theta_bar(std::move(theta_bar_)),
        g(std::move(g_)) {
    if (S.size() != S_bar.size()) throw std::invalid_argument("diagram: #S != #S_bar");
    detail::require_map(f, R, R, "f");
    detail::require_map(theta, R, S, "theta");
    detail::require_map(theta_bar, R, S_bar, "theta_bar");
    detail::require_map(g, S, S_bar, "g");
  }
};

template <class T, class Hash>
bool check_commutes(const Diagram<T, Hash>& D) {
  const MapLookup<T, Hash> tb(D.theta_bar), g(D.g);
  const MapLookup<T, Hash> f(D.f), th(D.theta);
  for (const auto& x : D.R)
    if (!(tb(f(x)) == g(th(x)))) return false;
  return true;
}

/// True iff the image of T is all of `codomain`.
template <class T, class Hash = std::hash<T>>
bool surjective(const Map<T, Hash>& T_, const std::vector<T>& codomain) {
  const auto img = T_.image();
  for (const auto& y : codomain)
    if (!img.count(y)) return false;
  return true;
}

template <class T, class Hash = std::hash<T>>
bool bijective(const Map<T, Hash>& T_, const std::vector<T>& codomain) {
  const auto img = T_.image();
  return img.size() == T_.size() && T_.size() == codomain.size() && surjective(T_, codomain);
}

/// Preimage of every attained value, in order of first appearance.
template <class T, class Hash = std::hash<T>>
std::vector<std::pair<T, std::vector<T>>> fibers(const Map<T, Hash>& theta) {
  std::vector<std::pair<T, std::vector<T>>> out;
  std::unordered_map<T, std::size_t, Hash> slot;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    auto [it, fresh] = slot.emplace(theta.values[i], out.size());
    if (fresh) out.push_back({theta.values[i], {}});
    out[it->second].second.push_back(theta.domain[i]);
  }
  return out;
}

template <class T, class Hash = std::hash<T>>
bool injective_on_fibers(const Map<T, Hash>& f, const Map<T, Hash>& theta) {
  const MapLookup<T, Hash> fl(f);
  for (const auto& [s, fiber] : fibers(theta)) {
    std::unordered_set<T, Hash> seen;
    for (const auto& x : fiber)
      if (!seen.insert(fl(x)).second) return false;
  }
  return true;
}

enum class Violation { NotCommutative, ThetaNotSurjective, ThetaBarNotSurjective };

inline const char* to_string(Violation v) {
  switch (v) {
    case Violation::NotCommutative: return "diagram is not commutative";
    case Violation::ThetaNotSurjective: return "theta is not surjective";
    case Violation::ThetaBarNotSurjective: return "theta_bar is not surjective";
  }
  return "?";
}

class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(Violation v) : std::runtime_error(to_string(v)), violation_(v) {}
  Violation violation() const { return violation_; }

 private:
  Violation violation_;
};

struct Equivalence {
  bool lhs;    // f bijective on R
  bool rhs;    // g bijective S -> S̄ and f injective on every fiber of θ
  bool agree;
};

/// Evaluates both sides independently. Throws PreconditionError when the
/// criterion does not apply.
template <class T, class Hash>
Equivalence agw_equivalence(const Diagram<T, Hash>& D) {
  if (!check_commutes(D)) throw PreconditionError(Violation::NotCommutative);
  if (!surjective(D.theta, D.S)) throw PreconditionError(Violation::ThetaNotSurjective);
  if (!surjective(D.theta_bar, D.S_bar)) throw PreconditionError(Violation::ThetaBarNotSurjective);
  Equivalence e{};
  e.lhs = bijective(D.f, D.R);
  e.rhs = bijective(D.g, D.S_bar) && injective_on_fibers(D.f, D.theta);
  e.agree = e.lhs == e.rhs;
  return e;
}

}  // namespace ppq::agw
