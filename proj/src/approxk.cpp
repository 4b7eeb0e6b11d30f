#include "medsel/approxk.hpp"

#include <algorithm>
#include <stdexcept>

namespace medsel {

ApproxParams ApproxParams::derive(const AlphaRatio& alpha, const Ratio& c, Count t) {
  ApproxParams p{alpha, c, 0, t};
  p.halving_round_cap = ceil_log2_ratio(
      static_cast<std::uint64_t>(2 * alpha.den) * static_cast<std::uint64_t>(c.den),
      static_cast<std::uint64_t>(c.num));
  return p;
}

namespace {

void check_disjoint(std::span<const MultisetSeq> players, const Universe& u) {
  std::vector<Value> all;
  for (const MultisetSeq& p : players) {
    validate_input_set(p, u, u.n);
    all.insert(all.end(), p.values().begin(), p.values().end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw std::invalid_argument("disjointness violated");
  }
}

}  // namespace

ApproxKResult approx_medk(std::span<const MultisetSeq> players, const Universe& u,
                          const AlphaRatio& alpha, const Ratio& c) {
  check_disjoint(players, u);
  Count t = 0;
  for (const MultisetSeq& p : players) t += p.size();
  if (t < 1) throw std::invalid_argument("empty multiset");
  if (t * c.den < c.num * u.n) throw std::invalid_argument("density precondition");

  ApproxKResult out;
  out.params = ApproxParams::derive(alpha, c, t);
  Board board(CostModel{u.embed_bound, 2});

  // Interval semantics: the median lies in (lo, hi]; strictly fewer than
  // ceil(t/2) elements are <= lo and at least ceil(t/2) are <= hi. The
  // exclusive lower end starts at 0 so the invariant holds from the start.
  Value lo = 0, hi = u.n;
  const Count half_rank = (t + 1) / 2;
  const Count spread = alpha.den - 2 * alpha.num;  // (1/2 - alpha) * t = spread*t / (2*den)
  out.exact_path = spread * t < 2 * alpha.den;

  while (hi - lo > 1 && (hi - lo) * 2 * alpha.den > spread * t) {
    const Value mid = (lo + hi) / 2;
    Count total = 0;
    for (const MultisetSeq& p : players) {
      const Count cnt = p.count_leq(mid);
      board.post_count(p.owner(), cnt, p.size());
      total += cnt;
    }
    if (total < half_rank) {
      lo = mid;
    } else {
      hi = mid;
    }
    out.trace.push_back({mid, total, lo, hi});
    board.end_round();
  }
  out.final_lo = lo;
  out.final_hi = hi;

  if (out.exact_path) {
    // Window shorter than one value: hi is the exact median.
    out.value = hi;
  } else {
    for (const MultisetSeq& p : players) {
      const Count inside = p.count_leq(hi) - p.count_leq(lo);
      if (inside == 0) {
        board.post_signal(p.owner(), 0);
        continue;
      }
      const Value z = p[p.count_leq(lo)];  // smallest own element in (lo, hi]
      board.post_value(p.owner(), z);
      out.value = z;
      out.reporter = p.owner();
      break;
    }
  }
  out.transcript = board.finalize();
  return out;
}

}  // namespace medsel
