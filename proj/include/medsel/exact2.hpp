#pragma once

#include <vector>

#include "medsel/channel.hpp"
#include "medsel/core.hpp"

namespace medsel {

// Per-round traces kept for instrumentation and property checks. They are
// derived from board contents only and never feed back into decisions.

struct Count2Round {
  Value midpoint = 0;
  Count below = 0, equal = 0, above = 0;  // the low-side player's counts
  std::int64_t verdict = 0;               // kSignalLess/Equal/Greater
  Value lo = 0, hi = 0;                   // interval after the round
};

struct Count2Result {
  Value value = 0;
  Transcript transcript;
  std::vector<Count2Round> trace;
};

struct Halve2Round {
  Value a_median = 0, b_median = 0;
  Count live_union = 0;  // |A' (+) B'| when the medians were posted
};

struct Halve2Result {
  Value value = 0;
  Transcript transcript;
  std::vector<Halve2Round> trace;
  Count padded_size = 0;  // per-player size after padding (power of two)
};

struct Interval2Round {
  Value probe = 0;  // the interval midpoint tested
  Value a_median = 0, b_median = 0;
  std::int64_t rel_a = 0, rel_b = 0;  // relation of each median to the probe
  Value lo = 0, hi = 0;               // interval after the round
  Count slice_len = 0;                // per-player live length after the round
};

struct Interval2Result {
  Value value = 0;
  Transcript transcript;
  std::vector<Interval2Round> trace;
  Count padded_size = 0;
  int tests = 0;  // signal rounds spent
};

/// Counting protocol: binary search over the value range; per round the
/// low-side player posts below/equal/above counts for the midpoint and the
/// other player answers with a trichotomy signal.
Count2Result median2_count(const MultisetSeq& a, const MultisetSeq& b, const Universe& u);

/// Median-halving protocol: both inputs are padded to a common power-of-two
/// size, then both post their live-slice medians each round and discard
/// opposite halves until the medians agree or the slices are singletons.
Halve2Result median2_halving(const MultisetSeq& a, const MultisetSeq& b, const Universe& u);

/// Interval protocol: keeps both live slices and a value interval; each
/// round both players signal how their slice median compares to the
/// interval midpoint, which either halves the slices or shrinks the
/// interval. Only the last round posts full values.
Interval2Result median2_interval(const MultisetSeq& a, const MultisetSeq& b, const Universe& u);

// Board-parameterized forms: the wrappers above run them on a fresh board;
// a replaying board re-checks a recorded run, and the k-player endgame
// embeds the interval protocol in its own transcript (skipping the
// size-exchange when cardinalities are already shared knowledge).
Value median2_count_on(Board& board, const MultisetSeq& a, const MultisetSeq& b,
                       const Universe& u, Count2Result* stats);
Value median2_halving_on(Board& board, const MultisetSeq& a, const MultisetSeq& b,
                         const Universe& u, Halve2Result* stats);
Value median2_interval_on(Board& board, const MultisetSeq& a, const MultisetSeq& b,
                          const Universe& u, bool announce_sizes, Interval2Result* stats);

}  // namespace medsel
