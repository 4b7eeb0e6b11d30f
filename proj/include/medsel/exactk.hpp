#pragma once

#include <span>
#include <vector>

#include "medsel/channel.hpp"
#include "medsel/core.hpp"

namespace medsel {

enum class ParityRole { kLowerMedian, kUpperMedian, kOdd };

const char* to_string(ParityRole role);

/// One player's live state: a contiguous window into its sorted input plus
/// the median role assigned for the current round. Pruning only ever trims
/// the two ends of the window.
struct PlayerChain {
  PlayerId id = 0;
  std::span<const Value> sorted;
  Count lo = 0, hi = 0;
  ParityRole role = ParityRole::kOdd;

  Count size() const { return hi - lo; }
  /// Absolute index of the designated median under the current role.
  Count median_pos() const;
  Value designated_median() const { return sorted[static_cast<std::size_t>(median_pos())]; }
};

struct MedianEntry {
  Value value = 0;
  PlayerId player = 0;
};

/// Snapshot of one pruning round over the poset formed by the k sorted
/// chains plus the sorted-medians relations.
struct PrunePoset {
  std::vector<MedianEntry> medians;  // ascending by (value, player id)
  Count live_total = 0;              // sum of live sizes before the discard
  Count above_low_discard = 0;       // elements above the low side's highest discard
  Count below_high_discard = 0;      // elements below the high side's lowest discard
  PlayerId charged = 0;
  Count discard_count = 0;

  /// The feasibility bounds that make the discard median-preserving.
  bool bounds_hold() const;
};

/// Balanced lower/upper-median assignment: among the even-size chains in
/// ascending id order, the first ceil(x/2) use the lower median and the
/// rest the upper median; odd-size chains use their middle element.
std::vector<ParityRole> assign_median_roles(std::span<const PlayerChain> chains);

/// One pruning round over >= 3 nonempty chains with roles assigned:
/// the players holding the minimum and maximum designated medians each
/// discard ceil(min(a,b)/2) elements from the outer ends. Mutates the
/// chains and returns the poset snapshot.
PrunePoset prune_round(std::span<PlayerChain> chains);

struct MedianKOptions {
  /// Throw if a pruning round ever violates the poset bounds.
  bool check_prune_bounds = false;
};

struct MedianKRound {
  PrunePoset poset;
  std::int32_t board_round = 0;
  std::int32_t posts = 0;  // median updates posted this round
};

struct MedianKResult {
  Value value = 0;
  Transcript transcript;
  std::vector<MedianKRound> prune_rounds;
  int protocol_rounds = 0;
};

/// Exact median of the multiset sum of all players' inputs. Players whose
/// window empties drop out; at two survivors the interval protocol
/// finishes the job on the same board, at one the survivor posts its local
/// median.
MedianKResult mediank(std::span<const MultisetSeq> players, const Universe& u,
                      const MedianKOptions& opts = {});

}  // namespace medsel
