#include "medsel/core.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace medsel {

int ceil_log2(std::uint64_t x) {
  if (x <= 1) return 0;
  return 64 - std::countl_zero(x - 1);
}

int ceil_log2_ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  int e = 0;
  std::uint64_t acc = den;
  while (acc < num) {
    acc <<= 1;
    ++e;
    if (e > 63) throw std::invalid_argument("ratio too large");
  }
  return e;
}

std::int64_t bit_ceil64(std::int64_t x) {
  if (x <= 1) return 1;
  if (x > (std::int64_t{1} << 62)) throw std::invalid_argument("bit_ceil64 overflow");
  return static_cast<std::int64_t>(std::bit_ceil(static_cast<std::uint64_t>(x)));
}

Universe Universe::of(Count n) {
  if (n < 1) throw std::invalid_argument("universe bound must be positive");
  Universe u;
  u.n = n;
  u.embed_bound = n;
  u.bit_width = std::max(1, ceil_log2(static_cast<std::uint64_t>(n)));
  return u;
}

MultisetSeq::MultisetSeq(std::vector<Value> values, PlayerId owner)
    : values_(std::move(values)), owner_(owner) {
  if (!std::is_sorted(values_.begin(), values_.end())) {
    std::sort(values_.begin(), values_.end());
  }
}

MultisetSeq MultisetSeq::from_sorted(std::span<const Value> sorted, PlayerId owner) {
  assert(std::is_sorted(sorted.begin(), sorted.end()));
  MultisetSeq out;
  out.values_.assign(sorted.begin(), sorted.end());
  out.owner_ = owner;
  return out;
}

Count MultisetSeq::count_leq(Value v) const {
  return std::upper_bound(values_.begin(), values_.end(), v) - values_.begin();
}

Count MultisetSeq::count_less(Value v) const {
  return std::lower_bound(values_.begin(), values_.end(), v) - values_.begin();
}

bool MultisetSeq::contains(Value v) const {
  return std::binary_search(values_.begin(), values_.end(), v);
}

MultisetSeq multiset_sum(std::span<const MultisetSeq> parts) {
  std::vector<Value> all;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.values().size();
  all.reserve(total);
  for (const auto& p : parts) {
    all.insert(all.end(), p.values().begin(), p.values().end());
  }
  return MultisetSeq(std::move(all));
}

void validate_input_set(const MultisetSeq& x, const Universe& u, Count size_cap) {
  if (x.size() > size_cap) throw std::invalid_argument("multiset exceeds size cap");
  if (!x.empty() && (x.front() < u.min_value() || x.back() > u.max_value())) {
    throw std::invalid_argument("value outside universe");
  }
}

Ratio::Ratio(std::int64_t num, std::int64_t den) : num(num), den(den) {
  if (num < 1 || den < 1 || num > den) {
    throw std::invalid_argument("ratio must lie in (0, 1]");
  }
}

std::string Ratio::str() const { return std::to_string(num) + "/" + std::to_string(den); }

AlphaRatio::AlphaRatio(std::int64_t num, std::int64_t den, std::int64_t den_cap)
    : num(num), den(den) {
  if (num < 1 || 2 * num >= den) {
    throw std::invalid_argument("alpha must lie in (0, 1/2)");
  }
  if (den > den_cap) throw std::invalid_argument("alpha denominator exceeds cap");
}

std::string AlphaRatio::str() const { return std::to_string(num) + "/" + std::to_string(den); }

MediocreSpec MediocreSpec::median_window(Count t) {
  return MediocreSpec{t / 2, (t - 1) / 2, t};
}

Value oracle_median(const MultisetSeq& x) {
  if (x.empty()) throw std::invalid_argument("empty multiset");
  return x[(x.size() + 1) / 2 - 1];
}

RankInfo oracle_rank(const MultisetSeq& ground, Value z) {
  RankInfo r;
  r.below = ground.count_less(z);
  const Count leq = ground.count_leq(z);
  r.equal = leq - r.below;
  r.above = ground.size() - leq;
  return r;
}

bool is_mediocre(const MultisetSeq& ground, Value z, const MediocreSpec& spec) {
  if (spec.ground_size != ground.size()) {
    throw std::invalid_argument("mediocre spec ground size mismatch");
  }
  const RankInfo r = oracle_rank(ground, z);
  if (r.equal == 0) throw std::invalid_argument("not a member");
  // z can occupy positions [below+1, below+equal]; it qualifies when that
  // range intersects (bottom, t - top].
  const Count lowest = r.below + 1;
  const Count highest = r.below + r.equal;
  return highest > spec.bottom && lowest <= spec.ground_size - spec.top;
}

Value prefix_bits(Value x, int ell, int width) {
  if (ell > width) throw std::invalid_argument("prefix wider than representation");
  if (ell < 1 || width > 62) throw std::invalid_argument("bad prefix width");
  if (x < 0 || x >= (Value{1} << width)) throw std::invalid_argument("value exceeds width");
  return x >> (width - ell);
}

std::pair<std::optional<Value>, std::optional<Value>> pred_succ(const MultisetSeq& sorted,
                                                                Value z) {
  if (!sorted.contains(z)) throw std::invalid_argument("not a member");
  std::optional<Value> pred, succ;
  const Count below = sorted.count_less(z);
  if (below > 0) pred = sorted[below - 1];
  const Count leq = sorted.count_leq(z);
  if (leq < sorted.size()) succ = sorted[leq];
  return {pred, succ};
}

MultisetSeq reduce_selection_to_median(const MultisetSeq& a, Count i) {
  const Count n = a.size();
  if (i < 1 || i > n) throw std::invalid_argument("selection index out of range");
  std::vector<Value> out;
  if (2 * i < n) {
    out.assign(static_cast<std::size_t>(n - 2 * i), a.front());
    out.insert(out.end(), a.values().begin(), a.values().end());
  } else if (2 * i > n) {
    out = a.values();
    out.insert(out.end(), static_cast<std::size_t>(2 * i - n), a.back());
  } else {
    out = a.values();
  }
  return MultisetSeq(std::move(out), a.owner());
}

std::vector<MultisetSeq> pad_preserving_median(std::span<const MultisetSeq> players,
                                               std::span<const Count> targets,
                                               const Universe& u) {
  if (players.size() != targets.size()) {
    throw std::invalid_argument("one target per player required");
  }
  Count total = 0;
  Count deficit = 0;
  for (std::size_t i = 0; i < players.size(); ++i) {
    if (targets[i] < players[i].size()) {
      throw std::invalid_argument("target below current size");
    }
    total += players[i].size();
    deficit += targets[i] - players[i].size();
  }
  // The unique split with ceil((T+D)/2) == ceil(T/2) + L.
  Count low_pads = (total + deficit + 1) / 2 - (total + 1) / 2;
  Count high_pads = deficit - low_pads;

  std::vector<MultisetSeq> out;
  out.reserve(players.size());
  for (std::size_t i = 0; i < players.size(); ++i) {
    Count need = targets[i] - players[i].size();
    const Count take_low = std::min(need, low_pads);
    low_pads -= take_low;
    need -= take_low;
    const Count take_high = std::min(need, high_pads);
    high_pads -= take_high;

    std::vector<Value> vals;
    vals.reserve(static_cast<std::size_t>(targets[i]));
    vals.assign(static_cast<std::size_t>(take_low), u.min_value());
    vals.insert(vals.end(), players[i].values().begin(), players[i].values().end());
    vals.insert(vals.end(), static_cast<std::size_t>(take_high), u.max_value());
    out.push_back(MultisetSeq::from_sorted(vals, players[i].owner()));
  }
  return out;
}

}  // namespace medsel
