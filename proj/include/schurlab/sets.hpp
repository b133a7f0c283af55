#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace schurlab {

/// Finite set of integers, kept sorted and duplicate-free.
using IntSet = std::vector<std::int64_t>;

inline IntSet make_set(std::vector<std::int64_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

inline bool contains(std::span<const std::int64_t> set, std::int64_t x) {
  return std::binary_search(set.begin(), set.end(), x);
}

inline IntSet intersect(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  IntSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace schurlab
