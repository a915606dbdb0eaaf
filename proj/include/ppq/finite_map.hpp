// Mappings between explicit finite sets, stored as value tables.
#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ppq {

/// A total map given by parallel `domain` / `values` vectors. The domain
/// is expected to be duplicate-free.
template <class T, class Hash = std::hash<T>>
struct FiniteMap {
  std::vector<T> domain;
  std::vector<T> values;

  FiniteMap() = default;
  FiniteMap(std::vector<T> dom, std::vector<T> vals) : domain(std::move(dom)), values(std::move(vals)) {
    if (domain.size() != values.size()) throw std::invalid_argument("finite map: domain/value size mismatch");
  }

  std::size_t size() const { return domain.size(); }

  std::unordered_set<T, Hash> image() const { return {values.begin(), values.end()}; }

  template <class Fn>
  static FiniteMap tabulate(std::vector<T> dom, Fn&& fn) {
    std::vector<T> vals;
    vals.reserve(dom.size());
    for (const auto& x : dom) vals.push_back(fn(x));
    return FiniteMap(std::move(dom), std::move(vals));
  }
};

/// Hash index over a map's domain for repeated point lookups.
template <class T, class Hash = std::hash<T>>
class MapLookup {
 public:
  explicit MapLookup(const FiniteMap<T, Hash>& m) : map_(&m) {
    index_.reserve(m.domain.size());
    for (std::size_t i = 0; i < m.domain.size(); ++i) index_.emplace(m.domain[i], i);
  }

  bool defined_at(const T& x) const { return index_.count(x) != 0; }

  const T& operator()(const T& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) throw std::out_of_range("finite map: value outside domain");
    return map_->values[it->second];
  }

 private:
  const FiniteMap<T, Hash>* map_;
  std::unordered_map<T, std::size_t, Hash> index_;
};

}  // namespace ppq
