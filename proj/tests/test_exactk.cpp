#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "medsel/exactk.hpp"
#include "testutil.hpp"

#include <deque>
#include <map>

using namespace medsel;

namespace {

std::vector<PlayerChain> make_chains(const std::vector<std::vector<Value>>& sets) {
  static thread_local std::vector<std::vector<Value>> storage;
  storage = sets;
  std::vector<PlayerChain> chains;
  for (std::size_t i = 0; i < storage.size(); ++i) {
    chains.push_back({static_cast<PlayerId>(i + 1), storage[i], 0,
                      static_cast<Count>(storage[i].size()), ParityRole::kOdd});
  }
  const auto roles = assign_median_roles(chains);
  for (std::size_t i = 0; i < chains.size(); ++i) chains[i].role = roles[i];
  return chains;
}

// Independent reference for the poset counts: build the DAG generated by
// the chain orders plus the sorted-medians relations, then count
// reachability upward from the low side's highest discard and downward
// from the high side's lowest discard.
struct PosetCounts {
  Count above = 0;
  Count below = 0;
};

PosetCounts dag_counts(const std::vector<PlayerChain>& before) {
  // Recompute what prune_round will pick, from scratch.
  std::vector<std::size_t> order(before.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Value vx = before[x].designated_median(), vy = before[y].designated_median();
    if (vx != vy) return vx < vy;
    return before[x].id < before[y].id;
  });
  const std::size_t low = order.front(), high = order.back();
  const Count d = (std::min(before[low].size(), before[high].size()) + 1) / 2;

  // Node ids: (chain, offset within live window).
  std::vector<Count> base(before.size());
  Count total = 0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    base[i] = total;
    total += before[i].size();
  }
  const auto node = [&](std::size_t chain, Count pos) {
    return base[chain] + (pos - before[chain].lo);
  };

  std::vector<std::vector<Count>> up(static_cast<std::size_t>(total));
  const auto add_edge = [&](Count from, Count to) {
    up[static_cast<std::size_t>(from)].push_back(to);
  };
  for (std::size_t i = 0; i < before.size(); ++i) {
    for (Count p = before[i].lo; p + 1 < before[i].hi; ++p) {
      add_edge(node(i, p), node(i, p + 1));
    }
  }
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    add_edge(node(order[i], before[order[i]].median_pos()),
             node(order[i + 1], before[order[i + 1]].median_pos()));
  }

  const auto reach_count = [&](Count start, bool upward) {
    std::vector<std::vector<Count>> down;
    if (!upward) {
      down.assign(static_cast<std::size_t>(total), {});
      for (Count from = 0; from < total; ++from) {
        for (Count to : up[static_cast<std::size_t>(from)]) {
          down[static_cast<std::size_t>(to)].push_back(from);
        }
      }
    }
    const auto& adj = upward ? up : down;
    std::vector<char> seen(static_cast<std::size_t>(total), 0);
    std::deque<Count> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    Count found = 0;
    while (!queue.empty()) {
      const Count cur = queue.front();
      queue.pop_front();
      for (Count nxt : adj[static_cast<std::size_t>(cur)]) {
        if (!seen[static_cast<std::size_t>(nxt)]) {
          seen[static_cast<std::size_t>(nxt)] = 1;
          ++found;
          queue.push_back(nxt);
        }
      }
    }
    return found;
  };

  PosetCounts out;
  out.above = reach_count(node(low, before[low].lo + d - 1), true);
  out.below = reach_count(node(high, before[high].hi - d), false);
  return out;
}

MedianKResult run_mediank(const std::vector<std::vector<Value>>& sets, Count n,
                          bool check_bounds = true) {
  std::vector<MultisetSeq> players;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    players.emplace_back(sets[i], static_cast<PlayerId>(i + 1));
  }
  return mediank(players, Universe::of(n), MedianKOptions{check_bounds});
}

}  // namespace

TEST_CASE("role assignment follows the balanced scheme") {
  {
    const auto chains = make_chains({{1, 2}, {3, 4}, {5, 6}});
    CHECK(chains[0].role == ParityRole::kLowerMedian);
    CHECK(chains[1].role == ParityRole::kLowerMedian);
    CHECK(chains[2].role == ParityRole::kUpperMedian);
  }
  {
    const auto chains = make_chains({{1, 2, 3}, {1, 2, 3, 4, 5}, {1, 2, 3, 4, 5, 6, 7}});
    for (const auto& c : chains) CHECK(c.role == ParityRole::kOdd);
  }
  {
    const auto chains =
        make_chains({{1, 2, 3, 4}, {1, 2, 3}, {5, 6}, {1, 2, 3, 4, 5, 6}});
    CHECK(chains[0].role == ParityRole::kLowerMedian);
    CHECK(chains[1].role == ParityRole::kOdd);
    CHECK(chains[2].role == ParityRole::kLowerMedian);
    CHECK(chains[3].role == ParityRole::kUpperMedian);
  }
  CHECK_THROWS_AS(make_chains({{1}, {}}), std::invalid_argument);
}

TEST_CASE("designated medians by role") {
  auto chains = make_chains({{1, 2}, {3, 4}, {5, 6}});
  CHECK(chains[0].designated_median() == 1);
  CHECK(chains[1].designated_median() == 3);
  CHECK(chains[2].designated_median() == 6);
}

TEST_CASE("prune_round keeps the union median and matches the DAG counts") {
  {
    auto chains = make_chains({{1, 2}, {3, 4}, {5, 6}});
    const Value before = test::ref_median({{1, 2}, {3, 4}, {5, 6}});
    const auto poset = dag_counts(chains);
    const PrunePoset snap = prune_round(chains);
    CHECK(snap.live_total == 6);
    CHECK(snap.above_low_discard == poset.above);
    CHECK(snap.below_high_discard == poset.below);
    CHECK(snap.bounds_hold());
    std::vector<std::vector<Value>> live;
    for (const auto& c : chains) {
      live.emplace_back(c.sorted.begin() + c.lo, c.sorted.begin() + c.hi);
    }
    CHECK(test::ref_median(live) == before);
  }
  CHECK_THROWS_AS(prune_round(std::span<PlayerChain>{}), std::invalid_argument);
  {
    auto chains = make_chains({{1}, {2}});
    CHECK_THROWS_AS(prune_round(chains), std::invalid_argument);
  }
}

TEST_CASE("known pruning snapshots are reproduced") {
  // Instances recreating the published (t, above, below, charged-side)
  // snapshots under this counting convention.
  struct Case {
    std::vector<std::vector<Value>> sets;
    Count t, above, below;
    bool charged_low;  // charged player holds the minimum median
  };
  const Case cases[] = {
      {{{4, 9}, {9, 11}, {2, 3}, {8, 10}}, 8, 6, 5, true},
      {{{4, 7, 9}, {1, 9, 10, 12}, {1, 2}}, 9, 6, 7, true},
      {{{1, 2, 7}, {1, 4}, {6, 7, 8, 10, 11, 11}}, 11, 6, 8, true},
      {{{1, 5, 8, 8}, {5}, {7, 7}}, 7, 5, 4, false},
  };
  for (const Case& c : cases) {
    auto chains = make_chains(c.sets);
    const Value before = test::ref_median(c.sets);
    const PrunePoset snap = prune_round(chains);
    CHECK(snap.live_total == c.t);
    CHECK(snap.above_low_discard == c.above);
    CHECK(snap.below_high_discard == c.below);
    CHECK((snap.charged == snap.medians.front().player) == c.charged_low);
    CHECK(snap.bounds_hold());
    std::vector<std::vector<Value>> live;
    for (const auto& ch : chains) {
      live.emplace_back(ch.sorted.begin() + ch.lo, ch.sorted.begin() + ch.hi);
    }
    CHECK(test::ref_median(live) == before);
  }
}

TEST_CASE("prune_round fuzz: median preserved, bounds hold, DAG agrees") {
  test::Rng rng(31);
  for (int it = 0; it < 600; ++it) {
    const Count n = 2 + rng.below(30);
    const int k = 3 + rng.below(5);
    std::vector<std::vector<Value>> sets;
    for (int i = 0; i < k; ++i) {
      sets.push_back(test::random_multiset(rng, n, 1 + rng.below(9)));
    }
    auto chains = make_chains(sets);
    const Value before = test::ref_median(sets);
    const auto ref = dag_counts(chains);
    const Count t_before = [&] {
      Count t = 0;
      for (const auto& c : chains) t += c.size();
      return t;
    }();

    const PrunePoset snap = prune_round(chains);
    CHECK(snap.live_total == t_before);
    CHECK(snap.above_low_discard == ref.above);
    CHECK(snap.below_high_discard == ref.below);
    CHECK(snap.above_low_discard >= (t_before + 2) / 2);
    CHECK(snap.below_high_discard >= (t_before + 1) / 2);

    std::vector<std::vector<Value>> live;
    for (const auto& c : chains) {
      live.emplace_back(c.sorted.begin() + c.lo, c.sorted.begin() + c.hi);
    }
    CHECK(test::ref_median(live) == before);
  }
}

TEST_CASE("mediank endgames") {
  {
    const auto r = run_mediank({{3, 1, 2}}, 4);
    CHECK(r.value == 2);
    CHECK(r.transcript.messages.size() == 1);  // a single value post
  }
  {
    const auto r = run_mediank({{1}, {2}, {3}}, 4);
    CHECK(r.value == 2);
  }
  {
    const auto r = run_mediank({{1, 2}, {3, 4}, {5, 6}}, 6);
    CHECK(r.value == 3);
  }
  {  // two players from the start: straight to the interval endgame
    const auto r = run_mediank({{1, 5, 9}, {2, 6}}, 9);
    CHECK(r.value == test::ref_median({{1, 5, 9}, {2, 6}}));
  }
  {  // initially empty players drop out before the first round
    const auto r = run_mediank({{}, {1, 2}, {5}}, 8);
    CHECK(r.value == test::ref_median({{1, 2}, {5}}));
  }
  CHECK_THROWS_AS(run_mediank({{}, {}}, 4), std::invalid_argument);
}

TEST_CASE("mediank fuzz: oracle match, charged halving, post budget") {
  test::Rng rng(32);
  for (int it = 0; it < 400; ++it) {
    const Count n = 2 + rng.below(511);
    const int k = 1 + rng.below(8);
    const Count cap = std::min<Count>(40, n * n);
    std::vector<std::vector<Value>> sets;
    for (int i = 0; i < k; ++i) {
      sets.push_back(test::random_multiset(rng, n, 1 + rng.below(cap)));
    }
    const auto r = run_mediank(sets, n);
    CHECK(r.value == test::ref_median(sets));

    std::map<PlayerId, Count> live;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      live[static_cast<PlayerId>(i + 1)] = static_cast<Count>(sets[i].size());
    }
    bool first = true;
    for (const auto& round : r.prune_rounds) {
      // The charged side ends the round at no more than half its size.
      CHECK(round.poset.discard_count == (live[round.poset.charged] + 1) / 2);
      if (!first) CHECK(round.posts <= 3);
      first = false;
      // Maintain live sizes: charged player loses d, and so does the
      // opposite end holder; recover it from the medians list.
      const PlayerId low = round.poset.medians.front().player;
      const PlayerId high = round.poset.medians.back().player;
      live[low] -= round.poset.discard_count;
      live[high] -= round.poset.discard_count;
    }
  }
}

TEST_CASE("mediank prune rounds always satisfy the poset bounds") {
  test::Rng rng(33);
  Count rounds_seen = 0;
  while (rounds_seen < 2000) {
    const Count n = 2 + rng.below(255);
    const int k = 3 + rng.below(6);
    const Count cap = std::min<Count>(64, n * n);
    std::vector<std::vector<Value>> sets;
    for (int i = 0; i < k; ++i) {
      sets.push_back(test::random_multiset(rng, n, 1 + rng.below(cap)));
    }
    const auto r = run_mediank(sets, n, /*check_bounds=*/true);
    CHECK(r.value == test::ref_median(sets));
    for (const auto& round : r.prune_rounds) {
      CHECK(round.poset.bounds_hold());
      ++rounds_seen;
    }
  }
}

TEST_CASE("mediank round budget stays linear in k log cap") {
  test::Rng rng(34);
  for (int it = 0; it < 100; ++it) {
    const Count n = 8 + rng.below(248);
    const int k = 1 + rng.below(8);
    Count cap = 1;
    std::vector<std::vector<Value>> sets;
    for (int i = 0; i < k; ++i) {
      const Count size = 1 + rng.below(n);
      cap = std::max(cap, size);
      sets.push_back(test::random_multiset(rng, n, size));
    }
    const auto r = run_mediank(sets, n);
    const int budget = k * (ceil_log2(cap) + 1) + 2 * ceil_log2(n) + ceil_log2(2 * cap) + 4;
    CHECK(r.protocol_rounds <= budget);
    CHECK(r.transcript.rounds <= budget);
  }
}
