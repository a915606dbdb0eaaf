// Dense occupancy bit-set used by every bijectivity check.
#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ppq {

/// Fixed-capacity set of small integers backed by 64-bit words. `insert`
/// reports whether the bit was previously clear, which is all a
/// permutation check needs.
class OccupancySet {
 public:
  OccupancySet() = default;
  explicit OccupancySet(std::size_t capacity) : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

  std::size_t capacity() const { return capacity_; }

  /// Returns false if `i` was already present.
  bool insert(std::size_t i) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    std::uint64_t& w = words_[i >> 6];
    const bool fresh = (w & mask) == 0;
    w |= mask;
    return fresh;
  }

  bool contains(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  /// Re-targets the set to a new capacity and clears it, reusing storage.
  void reset(std::size_t capacity) {
    capacity_ = capacity;
    words_.assign((capacity + 63) / 64, 0);
  }

 private:
  std::size_t capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace ppq
