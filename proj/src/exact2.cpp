#include "medsel/exact2.hpp"

#include <algorithm>
#include <stdexcept>

namespace medsel {

namespace {

void check_pair(const MultisetSeq& a, const MultisetSeq& b, const Universe& u) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty multiset");
  validate_input_set(a, u, u.size_cap());
  validate_input_set(b, u, u.size_cap());
}

// Distinct sender ids even when both inputs carry the default owner.
std::pair<PlayerId, PlayerId> sender_ids(const MultisetSeq& a, const MultisetSeq& b) {
  PlayerId sa = a.owner(), sb = b.owner();
  if (sa == sb) {
    sa = 1;
    sb = 2;
  }
  return {sa, sb};
}

std::int64_t relation(Value x, Value probe) {
  if (x < probe) return kSignalLess;
  if (x > probe) return kSignalGreater;
  return kSignalEqual;
}

// Contiguous live window into a sorted vector.
struct LiveSlice {
  const std::vector<Value>* vals = nullptr;
  Count lo = 0, hi = 0;

  Count len() const { return hi - lo; }
  Value lower_median() const { return (*vals)[static_cast<std::size_t>(lo + (len() - 1) / 2)]; }
  Value only() const { return (*vals)[static_cast<std::size_t>(lo)]; }
};

}  // namespace

Value median2_count_on(Board& board, const MultisetSeq& a, const MultisetSeq& b,
                       const Universe& u, Count2Result* stats) {
  check_pair(a, b, u);
  const auto [sa, sb] = sender_ids(a, b);

  const Count half_rank = (a.size() + b.size() + 1) / 2;
  Value lo = u.min_value(), hi = u.max_value();
  while (true) {
    if (lo == hi) return lo;
    const Value mid = (lo + hi) / 2;
    const Count below_a = a.count_less(mid);
    const Count leq_a = a.count_leq(mid);
    board.post_count(sa, below_a, a.size());
    board.post_count(sa, leq_a - below_a, a.size());
    board.post_count(sa, a.size() - leq_a, a.size());

    const Count below = below_a + b.count_less(mid);
    const Count equal = (leq_a - below_a) + (b.count_leq(mid) - b.count_less(mid));
    std::int64_t verdict;
    if (half_rank <= below) {
      verdict = kSignalLess;
    } else if (half_rank <= below + equal) {
      verdict = kSignalEqual;
    } else {
      verdict = kSignalGreater;
    }
    board.post_signal(sb, verdict);

    if (verdict == kSignalLess) {
      hi = mid - 1;
    } else if (verdict == kSignalGreater) {
      lo = mid + 1;
    }
    if (stats) {
      stats->trace.push_back({mid, below_a, leq_a - below_a, a.size() - leq_a, verdict, lo, hi});
    }
    if (verdict == kSignalEqual) return mid;
    board.end_round();
  }
}

Count2Result median2_count(const MultisetSeq& a, const MultisetSeq& b, const Universe& u) {
  Count2Result out;
  Board board(CostModel{u.embed_bound, 2});
  out.value = median2_count_on(board, a, b, u, &out);
  out.transcript = board.finalize();
  return out;
}

namespace {

// Shared by the halving and interval protocols: announce sizes when asked,
// pad both inputs to the same power-of-two size, return the padded values.
std::pair<std::vector<Value>, std::vector<Value>> pad_equal_pow2(
    Board& board, const MultisetSeq& a, const MultisetSeq& b, const Universe& u, PlayerId sa,
    PlayerId sb, bool announce_sizes, Count* padded_size) {
  if (announce_sizes) {
    board.post_count(sa, a.size(), a.size());
    board.post_count(sb, b.size(), b.size());
    board.end_round();
  }
  const Count target = bit_ceil64(std::max(a.size(), b.size()));
  const MultisetSeq ins[2] = {a, b};
  const Count targets[2] = {target, target};
  auto padded = pad_preserving_median(ins, targets, u);
  if (padded_size) *padded_size = target;
  return {padded[0].values(), padded[1].values()};
}

}  // namespace

Value median2_halving_on(Board& board, const MultisetSeq& a, const MultisetSeq& b,
                         const Universe& u, Halve2Result* stats) {
  check_pair(a, b, u);
  const auto [sa, sb] = sender_ids(a, b);

  Count padded_size = 0;
  auto [av, bv] = pad_equal_pow2(board, a, b, u, sa, sb, /*announce_sizes=*/true, &padded_size);
  if (stats) stats->padded_size = padded_size;
  LiveSlice sa_live{&av, 0, padded_size};
  LiveSlice sb_live{&bv, 0, padded_size};

  while (true) {
    const Value am = sa_live.lower_median();
    const Value bm = sb_live.lower_median();
    board.post_value(sa, am);
    board.post_value(sb, bm);
    if (stats) stats->trace.push_back({am, bm, sa_live.len() + sb_live.len()});

    if (am == bm) return am;
    if (sa_live.len() == 1) return std::min(am, bm);
    // The side with the smaller median drops its lower half (median
    // included); the other drops its upper half. The live union size is
    // cut exactly in half each round.
    const Count half = sa_live.len() / 2;
    if (am < bm) {
      sa_live.lo += half;
      sb_live.hi -= half;
    } else {
      sb_live.lo += half;
      sa_live.hi -= half;
    }
    board.end_round();
  }
}

Halve2Result median2_halving(const MultisetSeq& a, const MultisetSeq& b, const Universe& u) {
  Halve2Result out;
  Board board(CostModel{u.embed_bound, 2});
  out.value = median2_halving_on(board, a, b, u, &out);
  out.transcript = board.finalize();
  return out;
}

Value median2_interval_on(Board& board, const MultisetSeq& a, const MultisetSeq& b,
                          const Universe& u, bool announce_sizes, Interval2Result* stats) {
  check_pair(a, b, u);
  const auto [sa, sb] = sender_ids(a, b);

  Count padded_size = 0;
  auto [av, bv] = pad_equal_pow2(board, a, b, u, sa, sb, announce_sizes, &padded_size);
  if (stats) stats->padded_size = padded_size;
  LiveSlice la{&av, 0, padded_size};
  LiveSlice lb{&bv, 0, padded_size};

  Value lo = u.min_value(), hi = u.max_value();
  while (true) {
    if (la.len() == 1 && lb.len() == 1) {
      const Value x = la.only(), y = lb.only();
      board.post_value(sa, x);
      board.post_value(sb, y);
      return std::min(x, y);
    }
    if (lo == hi) return lo;

    const Value probe = (lo + hi) / 2;
    const Value am = la.lower_median();
    const Value bm = lb.lower_median();
    const std::int64_t rel_a = relation(am, probe);
    const std::int64_t rel_b = relation(bm, probe);
    board.post_signal(sa, rel_a);
    board.post_signal(sb, rel_b);
    if (stats) ++stats->tests;

    if (rel_a == kSignalEqual && rel_b == kSignalEqual) {
      if (stats) stats->trace.push_back({probe, am, bm, rel_a, rel_b, lo, hi, la.len()});
      return probe;
    }
    if (rel_a == rel_b) {
      // Both medians on the same side of the probe: the union median is
      // sandwiched between them, so the interval shrinks past the probe.
      if (rel_a == kSignalLess) {
        hi = probe - 1;
      } else {
        lo = probe + 1;
      }
    } else {
      // Order resolved through the probe: halve both slices.
      const bool a_low = (rel_a == kSignalLess) || (rel_b == kSignalGreater);
      const Count half = la.len() / 2;
      if (a_low) {
        la.lo += half;
        lb.hi -= half;
      } else {
        lb.lo += half;
        la.hi -= half;
      }
    }
    if (stats) stats->trace.push_back({probe, am, bm, rel_a, rel_b, lo, hi, la.len()});
    board.end_round();
  }
}

Interval2Result median2_interval(const MultisetSeq& a, const MultisetSeq& b, const Universe& u) {
  Interval2Result out;
  Board board(CostModel{u.embed_bound, 2});
  out.value = median2_interval_on(board, a, b, u, /*announce_sizes=*/true, &out);
  out.transcript = board.finalize();
  return out;
}

}  // namespace medsel
