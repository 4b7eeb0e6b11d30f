#include "medsel/exactk.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "medsel/exact2.hpp"

namespace medsel {

const char* to_string(ParityRole role) {
  switch (role) {
    case ParityRole::kLowerMedian: return "LOWER";
    case ParityRole::kUpperMedian: return "UPPER";
    case ParityRole::kOdd: return "ODD";
  }
  return "?";
}

Count PlayerChain::median_pos() const {
  switch (role) {
    case ParityRole::kOdd: return lo + (size() - 1) / 2;
    case ParityRole::kLowerMedian: return lo + size() / 2 - 1;
    case ParityRole::kUpperMedian: return lo + size() / 2;
  }
  return lo;
}

bool PrunePoset::bounds_hold() const {
  return above_low_discard >= (live_total + 2) / 2 &&
         below_high_discard >= (live_total + 1) / 2;
}

std::vector<ParityRole> assign_median_roles(std::span<const PlayerChain> chains) {
  Count evens = 0;
  for (const PlayerChain& c : chains) {
    if (c.size() == 0) throw std::invalid_argument("empty chain");
    if (c.size() % 2 == 0) ++evens;
  }
  const Count lower_quota = (evens + 1) / 2;
  std::vector<ParityRole> roles;
  roles.reserve(chains.size());
  Count even_seen = 0;
  for (const PlayerChain& c : chains) {
    if (c.size() % 2 != 0) {
      roles.push_back(ParityRole::kOdd);
    } else {
      roles.push_back(even_seen < lower_quota ? ParityRole::kLowerMedian
                                              : ParityRole::kUpperMedian);
      ++even_seen;
    }
  }
  return roles;
}

PrunePoset prune_round(std::span<PlayerChain> chains) {
  if (chains.size() < 3) throw std::invalid_argument("use two-party endgame");

  PrunePoset snap;
  std::vector<std::size_t> order(chains.size());
  for (std::size_t i = 0; i < chains.size(); ++i) {
    if (chains[i].size() == 0) throw std::invalid_argument("empty chain");
    snap.live_total += chains[i].size();
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Value vx = chains[x].designated_median(), vy = chains[y].designated_median();
    if (vx != vy) return vx < vy;
    return chains[x].id < chains[y].id;
  });
  for (std::size_t i : order) {
    snap.medians.push_back({chains[i].designated_median(), chains[i].id});
  }

  PlayerChain& low = chains[order.front()];
  PlayerChain& high = chains[order.back()];
  const Count d = (std::min(low.size(), high.size()) + 1) / 2;
  snap.discard_count = d;
  snap.charged = (low.size() <= high.size()) ? low.id : high.id;
  if (d > low.size() || d > high.size()) throw std::logic_error("infeasible discard count");

  // Elements reachable upward from the low side's highest discard: the rest
  // of its own chain, plus each other chain from its designated median up.
  snap.above_low_discard = low.hi - (low.lo + d);
  for (std::size_t i : order) {
    if (&chains[i] == &low) continue;
    snap.above_low_discard += chains[i].hi - chains[i].median_pos();
  }
  // Mirror image for the high side's lowest discard.
  snap.below_high_discard = (high.hi - d) - high.lo;
  for (std::size_t i : order) {
    if (&chains[i] == &high) continue;
    snap.below_high_discard += chains[i].median_pos() - chains[i].lo + 1;
  }

  low.lo += d;
  high.hi -= d;
  return snap;
}

namespace {

struct OwnedChain {
  PlayerId id;
  std::vector<Value> sorted;
};

}  // namespace

MedianKResult mediank(std::span<const MultisetSeq> players, const Universe& u,
                      const MedianKOptions& opts) {
  if (players.empty()) throw std::invalid_argument("empty multiset");
  std::vector<OwnedChain> owned;
  bool any = false;
  {
    std::map<PlayerId, int> seen;
    for (const MultisetSeq& p : players) seen[p.owner()]++;
    const bool ids_ok = seen.size() == players.size();
    PlayerId next = 1;
    for (const MultisetSeq& p : players) {
      validate_input_set(p, u, u.size_cap());
      owned.push_back({ids_ok ? p.owner() : next, p.values()});
      ++next;
      any = any || !p.empty();
    }
  }
  if (!any) throw std::invalid_argument("empty multiset");

  MedianKResult out;
  Board board(CostModel{u.embed_bound, 2});

  std::vector<PlayerChain> chains;
  for (const OwnedChain& oc : owned) {
    if (!oc.sorted.empty()) {
      chains.push_back({oc.id, oc.sorted, 0, static_cast<Count>(oc.sorted.size()),
                        ParityRole::kOdd});
    }
  }

  std::map<PlayerId, Value> last_posted;
  while (true) {
    std::erase_if(chains, [](const PlayerChain& c) { return c.size() == 0; });
    ++out.protocol_rounds;

    if (chains.size() == 1) {
      const PlayerChain& c = chains.front();
      out.value = c.sorted[static_cast<std::size_t>(c.lo + (c.size() - 1) / 2)];
      board.post_value(c.id, out.value);
      break;
    }
    if (chains.size() == 2) {
      // Cardinalities are already shared knowledge, so the endgame skips
      // the size exchange.
      const MultisetSeq s0 = MultisetSeq::from_sorted(
          chains[0].sorted.subspan(static_cast<std::size_t>(chains[0].lo),
                                   static_cast<std::size_t>(chains[0].size())),
          chains[0].id);
      const MultisetSeq s1 = MultisetSeq::from_sorted(
          chains[1].sorted.subspan(static_cast<std::size_t>(chains[1].lo),
                                   static_cast<std::size_t>(chains[1].size())),
          chains[1].id);
      out.value = median2_interval_on(board, s0, s1, u, /*announce_sizes=*/false, nullptr);
      break;
    }

    const auto roles = assign_median_roles(chains);
    for (std::size_t i = 0; i < chains.size(); ++i) chains[i].role = roles[i];

    std::int32_t posts = 0;
    for (const PlayerChain& c : chains) {
      const Value med = c.designated_median();
      const auto it = last_posted.find(c.id);
      if (it == last_posted.end() || it->second != med) {
        board.post_value(c.id, med);
        last_posted[c.id] = med;
        ++posts;
      }
    }

    PrunePoset snap = prune_round(chains);
    if (opts.check_prune_bounds && !snap.bounds_hold()) {
      throw std::logic_error("prune bounds violated");
    }
    out.prune_rounds.push_back({std::move(snap), board.round(), posts});
    board.end_round();
  }

  out.transcript = board.finalize();
  return out;
}

}  // namespace medsel
