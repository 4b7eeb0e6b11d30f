#pragma once

#include <optional>
#include <vector>

#include "medsel/channel.hpp"
#include "medsel/core.hpp"

namespace medsel {

/// Constants for the constant-communication two-player protocol, fixed by
/// (alpha, c, n) and the two input sizes s <= m:
///   quantile_count h = ceil(2q / (q - 2p))        for alpha = p/q,
///   prefix_len     = ceil(log2(12h / c')) where 1/c' is 1/c rounded up to
///                    a power of two, plus one more bit when n itself is
///                    not a power of two (the embedding width rounds n up).
struct ConstParams {
  AlphaRatio alpha;
  Ratio c;
  Count quantile_count = 0;  // h
  int prefix_len = 0;        // compared prefix bits per round
  Count m = 0;               // common padded size
  Count s = 0;               // original smaller size
  Count t = 0;               // s + original larger size
  Count n = 0;
  Count n_pow2 = 0;
  int embed_width = 0;  // log2(4 * n_pow2); padded values use this width
  Count low_pads = 0, high_pads = 0;
};

struct QuantileSet {
  std::vector<Value> elements;  // the i*floor(m/h)-th elements, i = 1..h
  Count h = 0;
  Count gap_lower_bound = 0;  // floor(m/h); at least 4*n_pow2 / 2^prefix_len
};

/// Disjointness-preserving equalization: both inputs shift by +n, the
/// smaller one gains m - ceil((m+s)/2) fresh elements below and
/// ceil((m+s)/2) - s above, leaving a duplicate-free union inside [1, 3n]
/// whose median has rank m and equals the original median shifted by n.
/// Requires |a| <= |b| and disjoint duplicate-free inputs in [1, n].
std::tuple<MultisetSeq, MultisetSeq, ConstParams> pad_to_3n(const MultisetSeq& a,
                                                            const MultisetSeq& b,
                                                            const Universe& u,
                                                            const AlphaRatio& alpha,
                                                            const Ratio& c);

/// The h sample elements at sorted positions i*floor(m/h), i = 1..h.
/// Validates that their prefixes of length prefix_len are pairwise
/// distinct, which the quantile gap guarantees.
QuantileSet build_quantiles(const MultisetSeq& x, const ConstParams& params);

struct Approx2Round {
  Count live = 0;  // |Q'| when the round was played
  Value prefix_a = 0, prefix_b = 0;
  std::int64_t outcome = 0;  // comparison signal posted by the second player
};

struct Approx2Result {
  /// Per-player outputs in the caller's argument order, already shifted
  /// back to [1, n]. At least one is set.
  std::optional<Value> output_a, output_b;
  Transcript transcript;
  bool fallback = false;
  std::optional<ConstParams> params;
  std::vector<Approx2Round> trace;
  std::int64_t search_bits = 0;    // prefix + signal messages
  std::int64_t terminal_bits = 0;  // final value posts

  Value value() const { return output_a ? *output_a : *output_b; }
};

/// Mediocre-element search with communication independent of n: pads the
/// inputs, samples h quantiles per side, and binary-searches the median of
/// the two samples by comparing prefix_len-bit prefixes per round. Below
/// the size threshold n < 8*q^2/c it falls back to the exact interval
/// protocol. Every output is guaranteed to avoid the top and bottom
/// floor(alpha*t) of the original union.
///
/// Truncating an exact median protocol after a constant number of rounds
/// is not a substitute: one player's surviving window can end up holding
/// no in-window element at all, and the players have no way to tell whose
/// side is safe within O(1) bits. Sampling first sidesteps that, at the
/// price of the relaxed at-least-one-player output contract.
Approx2Result approx_med2(const MultisetSeq& a, const MultisetSeq& b, const Universe& u,
                          const AlphaRatio& alpha, const Ratio& c);

}  // namespace medsel
