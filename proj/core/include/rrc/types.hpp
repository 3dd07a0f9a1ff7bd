#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "rrc/rational.hpp"

namespace rrc {

// Element sets are bit-masks over a ground set of at most 64 indexed elements.
using Mask = std::uint64_t;

constexpr int kMaxGroundSet = 64;

inline constexpr Mask bit(int i) { return Mask{1} << i; }
inline constexpr bool has_bit(Mask m, int i) { return (m >> i) & 1; }
inline int popcount(Mask m) { return std::popcount(m); }

// Lowest set bit index; undefined for m == 0.
inline int lowest_bit(Mask m) { return std::countr_zero(m); }

// Visits set bits in ascending index order.
template <typename Fn>
inline void for_each_bit(Mask m, Fn&& fn) {
  while (m) {
    int i = std::countr_zero(m);
    fn(i);
    m &= m - 1;
  }
}

inline std::vector<int> mask_to_indices(Mask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(popcount(m)));
  for_each_bit(m, [&](int i) { out.push_back(i); });
  return out;
}

inline Mask indices_to_mask(const std::vector<int>& xs) {
  Mask m = 0;
  for (int x : xs) m |= bit(x);
  return m;
}

using Weights = std::vector<Rational>;

inline Rational set_weight(const Weights& w, Mask s) {
  Rational total;
  for_each_bit(s, [&](int i) { total += w[static_cast<std::size_t>(i)]; });
  return total;
}

// Which elements the adversary may interdict.  AnyElement is the default
// model: deleting an element outside the first stage removes it from the
// recourse pool.  FirstStageOnly restricts deletions to chosen elements (plus
// the empty interdiction); the two models coincide on many instances but not
// all, so both are exposed and small-instance tests record both values.
enum class InterdictionScope { AnyElement, FirstStageOnly };

// Sentinel for "no element" (empty interdiction / empty recourse).
constexpr int kNoElement = -1;

}  // namespace rrc
