#pragma once

#include <span>
#include <vector>

#include "medsel/channel.hpp"
#include "medsel/core.hpp"

namespace medsel {

/// Derived constants for the k-player approximation. halving_round_cap is
/// ceil(log2(2*q/c)) for alpha = p/q: the interval protocol never needs
/// more halving rounds than that once the density precondition holds.
struct ApproxParams {
  AlphaRatio alpha;
  Ratio c;
  int halving_round_cap = 0;
  Count t = 0;

  static ApproxParams derive(const AlphaRatio& alpha, const Ratio& c, Count t);
};

struct ApproxKRound {
  Value midpoint = 0;
  Count total_leq = 0;
  Value lo = 0, hi = 0;  // interval after the round (lo exclusive, hi inclusive)
};

struct ApproxKResult {
  Value value = 0;
  Transcript transcript;
  ApproxParams params{AlphaRatio(1, 4), Ratio(1, 1), 0, 0};
  std::vector<ApproxKRound> trace;
  Value final_lo = 0, final_hi = 0;
  /// Set when the target window was below one value: the result is the
  /// exact median and no report round takes place.
  bool exact_path = false;
  /// Player that posted the final element (0 on the exact path).
  PlayerId reporter = 0;
};

/// Interval halving by broadcast counts: each round every player posts how
/// many of its elements are <= the midpoint; all shrink the interval
/// identically until it is short enough that any member inside it is
/// mediocre, then players report in id order. Inputs must be pairwise
/// disjoint duplicate-free subsets of [1, n] with total size t >= c*n.
ApproxKResult approx_medk(std::span<const MultisetSeq> players, const Universe& u,
                          const AlphaRatio& alpha, const Ratio& c);

}  // namespace medsel
