#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace medsel {

using Value = std::int64_t;
using Count = std::int64_t;
using PlayerId = std::int32_t;

/// Smallest e >= 0 with 2^e >= x (x >= 1; x == 0 is treated as 1).
int ceil_log2(std::uint64_t x);

/// Smallest e >= 0 with 2^e * den >= num, i.e. ceil(log2(num/den)) for
/// num/den >= 1 and 0 for num <= den.
int ceil_log2_ratio(std::uint64_t num, std::uint64_t den);

/// Smallest power of two >= x (x >= 1).
std::int64_t bit_ceil64(std::int64_t x);

/// Value domain. Inputs live in [1, n]; embed_bound may exceed n for
/// protocols that re-embed their inputs into a wider range.
struct Universe {
  Count n = 1;
  Count embed_bound = 1;
  int bit_width = 1;

  static Universe of(Count n);

  Value min_value() const { return 1; }
  Value max_value() const { return embed_bound; }
  /// Default per-player size cap: n^2.
  Count size_cap() const { return n * n; }
};

/// A player's input: a sorted nondecreasing sequence of integer values
/// (duplicates allowed) tagged with the owning player's id.
class MultisetSeq {
 public:
  MultisetSeq() = default;
  explicit MultisetSeq(std::vector<Value> values, PlayerId owner = 0);

  /// Wraps an already-sorted range (checked in debug only).
  static MultisetSeq from_sorted(std::span<const Value> sorted, PlayerId owner);

  Count size() const { return static_cast<Count>(values_.size()); }
  bool empty() const { return values_.empty(); }
  Value operator[](Count i) const { return values_[static_cast<std::size_t>(i)]; }
  Value front() const { return values_.front(); }
  Value back() const { return values_.back(); }
  const std::vector<Value>& values() const { return values_; }
  PlayerId owner() const { return owner_; }

  Count count_leq(Value v) const;
  Count count_less(Value v) const;
  bool contains(Value v) const;

 private:
  std::vector<Value> values_;
  PlayerId owner_ = 0;
};

/// Multiset sum (duplicates kept) of several sequences.
MultisetSeq multiset_sum(std::span<const MultisetSeq> parts);

/// Throws std::invalid_argument if any value falls outside [1, u.embed_bound]
/// or the sequence exceeds size_cap.
void validate_input_set(const MultisetSeq& x, const Universe& u, Count size_cap);

/// Ratio in (0, 1], used for the density parameter c.
struct Ratio {
  std::int64_t num = 1;
  std::int64_t den = 1;

  Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den);
  double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

/// Ratio in (0, 1/2): the mediocrity parameter. The denominator is kept
/// small (configurable cap) so derived protocol constants stay bounded.
struct AlphaRatio {
  std::int64_t num = 1;
  std::int64_t den = 4;

  static constexpr std::int64_t kDefaultDenCap = 64;
  AlphaRatio(std::int64_t num, std::int64_t den, std::int64_t den_cap = kDefaultDenCap);

  /// floor(alpha * t)
  Count floor_times(Count t) const { return num * t / den; }
  double approx() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

/// Exclusion window: a member qualifies when it is neither among the `top`
/// largest nor among the `bottom` smallest of a ground set of size
/// `ground_size`. No element qualifies unless top + bottom < ground_size.
struct MediocreSpec {
  Count top = 0;
  Count bottom = 0;
  Count ground_size = 0;

  /// The window that admits exactly the ceil(t/2)-th smallest of a
  /// duplicate-free set: top = floor(t/2), bottom = floor((t-1)/2).
  static MediocreSpec median_window(Count t);
};

/// below + equal + above == ground size.
struct RankInfo {
  Count below = 0;
  Count equal = 0;
  Count above = 0;
};

/// The ceil(|x|/2)-th smallest element counting multiplicity.
/// Throws std::invalid_argument("empty multiset") on empty input.
Value oracle_median(const MultisetSeq& x);

/// Exact below/equal/above counts of z over the ground multiset.
RankInfo oracle_rank(const MultisetSeq& ground, Value z);

/// True iff some rank position z can occupy among its duplicates lies in
/// (bottom, t - top]. Requires z to be a member of ground and
/// spec.ground_size == |ground|.
bool is_mediocre(const MultisetSeq& ground, Value z, const MediocreSpec& spec);

/// The number formed by the ell most significant bits of x written in
/// `width` bits. Requires 1 <= ell <= width and 0 <= x < 2^width.
Value prefix_bits(Value x, int ell, int width);

/// Predecessor and successor of member z by value; absent at the extremes.
std::pair<std::optional<Value>, std::optional<Value>> pred_succ(const MultisetSeq& sorted,
                                                                Value z);

/// Pads a so that the median of the result is the i-th smallest of a
/// (1-based). i < |a|/2 adds |a|-2i copies of min(a); i > |a|/2 adds
/// 2i-|a| copies of max(a); 2i == |a| returns a unchanged.
MultisetSeq reduce_selection_to_median(const MultisetSeq& a, Count i);

/// Pads each player's set to its target size with universe-min and
/// universe-max sentinels so the median of the overall union is unchanged.
/// With total deficit D and original union size T, adds
/// L = ceil((T+D)/2) - ceil(T/2) minima and D - L maxima, handed out to
/// players in order (minima first).
std::vector<MultisetSeq> pad_preserving_median(std::span<const MultisetSeq> players,
                                               std::span<const Count> targets,
                                               const Universe& u);

}  // namespace medsel
