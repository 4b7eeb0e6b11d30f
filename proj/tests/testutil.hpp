#pragma once

// Shared helpers for the test suites: a deterministic rng, random input
// builders, and independent brute-force reference routines. Everything in
// here is reimplemented from scratch so it cannot share a bug with the
// library paths it checks.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "medsel/core.hpp"

namespace medsel::test {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0xa5a5a5a5deadbeefULL) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::int64_t below(std::int64_t bound) {
    return static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(bound));
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::uint64_t state_;
};

inline std::vector<Value> random_multiset(Rng& rng, Count n, Count size) {
  std::vector<Value> vals;
  vals.reserve(static_cast<std::size_t>(size));
  for (Count i = 0; i < size; ++i) vals.push_back(rng.range(1, n));
  std::sort(vals.begin(), vals.end());
  return vals;
}

inline std::vector<Value> random_distinct(Rng& rng, Count n, Count size) {
  std::vector<Value> pool(static_cast<std::size_t>(n));
  for (Count i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  for (Count i = 0; i < size; ++i) {
    const Count j = i + rng.below(n - i);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(size));
  std::sort(pool.begin(), pool.end());
  return pool;
}

/// 1-based order statistic by full sort.
inline Value kth_smallest(std::vector<Value> vals, Count k) {
  std::sort(vals.begin(), vals.end());
  return vals[static_cast<std::size_t>(k - 1)];
}

/// Reference median: ceil(size/2)-th smallest of the concatenation.
inline Value ref_median(const std::vector<std::vector<Value>>& parts) {
  std::vector<Value> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  const Count mid = (static_cast<Count>(all.size()) + 1) / 2;
  return kth_smallest(std::move(all), mid);
}

inline Value ref_median2(const MultisetSeq& a, const MultisetSeq& b) {
  return ref_median({a.values(), b.values()});
}

}  // namespace medsel::test
