#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "medsel/core.hpp"

namespace medsel {

/// A problem instance: universe bound plus one value sequence per player.
struct Instance {
  Count n = 1;
  int k = 0;
  std::vector<MultisetSeq> players;  // owners 1..k, sorted on load

  Count total_size() const;
};

/// Text format: line 1 `n=<int> k=<int>`, then one line per player,
/// `player <id>: v1 v2 v3 ...` (values may arrive unsorted).
Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
std::string format_instance(const Instance& inst);

Instance load_instance_file(const std::string& path);
void save_instance_file(const Instance& inst, const std::string& path);

/// Deterministic pseudo-random stream (splitmix64). Stable across
/// platforms, unlike the standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, bound) via rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi);
  /// Log-uniform in [1, cap]: sizes spread across magnitudes.
  Count log_uniform(Count cap);

 private:
  std::uint64_t state_;
};

enum class GenMode { kMultiset, kDisjointDense };

/// Seed-deterministic instance generator. kMultiset draws independent
/// multisets with log-uniform sizes up to the n^2 cap; kDisjointDense
/// partitions a random subset of [n] of size >= c*n among the players,
/// each receiving at least one element.
Instance gen_instance(std::uint64_t seed, Count n, int k, GenMode mode, const Ratio& c);

}  // namespace medsel
