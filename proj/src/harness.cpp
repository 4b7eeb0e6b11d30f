#include "medsel/harness.hpp"

#include <sstream>
#include <stdexcept>

#include "medsel/approx2.hpp"
#include "medsel/approxk.hpp"
#include "medsel/exact2.hpp"
#include "medsel/exactk.hpp"

namespace medsel {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kExactMatch: return "EXACT_MATCH";
    case Verdict::kMediocreOk: return "MEDIOCRE_OK";
    case Verdict::kFail: return "FAIL";
    case Verdict::kSkipped: return "SKIPPED";
  }
  return "?";
}

namespace {

Count display_rank(const MultisetSeq& ground, Value z) {
  return oracle_rank(ground, z).below + 1;
}

void require_players(const Instance& inst, int exactly) {
  if (static_cast<int>(inst.players.size()) != exactly) {
    throw std::invalid_argument("protocol needs exactly " + std::to_string(exactly) +
                                " players");
  }
}

}  // namespace

RunRecord run_protocol(const std::string& protocol, const Instance& inst,
                       const RunOptions& opts) {
  RunRecord rec;
  rec.protocol = protocol;
  rec.n = inst.n;
  rec.k = static_cast<int>(inst.players.size());
  rec.t = inst.total_size();
  rec.alpha = opts.alpha;
  rec.c = opts.c;

  const Universe u = Universe::of(inst.n);
  const MultisetSeq ground = multiset_sum(inst.players);
  Transcript transcript;
  std::vector<std::string> trailer;

  const auto finish_exact = [&](Value value) {
    rec.outputs.push_back({0, value, ground.empty() ? 0 : display_rank(ground, value)});
    if (!opts.verify) {
      rec.verdict = Verdict::kSkipped;
    } else {
      rec.verdict = (value == oracle_median(ground)) ? Verdict::kExactMatch : Verdict::kFail;
    }
  };

  if (protocol == "count2" || protocol == "halve2" || protocol == "interval2") {
    require_players(inst, 2);
    const MultisetSeq& a = inst.players[0];
    const MultisetSeq& b = inst.players[1];
    Value value;
    if (protocol == "count2") {
      auto r = median2_count(a, b, u);
      value = r.value;
      transcript = std::move(r.transcript);
    } else if (protocol == "halve2") {
      auto r = median2_halving(a, b, u);
      value = r.value;
      transcript = std::move(r.transcript);
    } else {
      auto r = median2_interval(a, b, u);
      value = r.value;
      transcript = std::move(r.transcript);
    }
    finish_exact(value);
  } else if (protocol == "mediank") {
    MedianKOptions mopts{opts.check_prune_bounds};
    auto r = mediank(inst.players, u, mopts);
    transcript = std::move(r.transcript);
    if (opts.check_prune_bounds) {
      for (const MedianKRound& round : r.prune_rounds) {
        std::ostringstream os;
        os << "PRUNE round=" << round.board_round << " t=" << round.poset.live_total
           << " above=" << round.poset.above_low_discard
           << " below=" << round.poset.below_high_discard
           << " charged=" << round.poset.charged
           << " discards=" << round.poset.discard_count;
        trailer.push_back(os.str());
      }
    }
    finish_exact(r.value);
  } else if (protocol == "approxk") {
    if (!opts.alpha) throw std::invalid_argument("approxk needs --alpha");
    const Ratio c = opts.c.value_or(Ratio{1, 2});
    auto r = approx_medk(inst.players, u, *opts.alpha, c);
    transcript = std::move(r.transcript);
    const Count rank = display_rank(ground, r.value);
    rec.outputs.push_back({r.reporter, r.value, rank});
    if (!opts.verify) {
      rec.verdict = Verdict::kSkipped;
    } else {
      const AlphaRatio& al = *opts.alpha;
      const bool in_window = rank * al.den >= al.num * rec.t &&
                             rank * al.den <= (al.den - al.num) * rec.t;
      const MediocreSpec spec{al.floor_times(rec.t), al.floor_times(rec.t), rec.t};
      rec.verdict = (in_window && is_mediocre(ground, r.value, spec)) ? Verdict::kMediocreOk
                                                                      : Verdict::kFail;
    }
  } else if (protocol == "approx2") {
    require_players(inst, 2);
    if (!opts.alpha) throw std::invalid_argument("approx2 needs --alpha");
    const Ratio c = opts.c.value_or(Ratio{1, 2});
    auto r = approx_med2(inst.players[0], inst.players[1], u, *opts.alpha, c);
    transcript = std::move(r.transcript);
    rec.search_bits = r.search_bits;
    if (r.output_a) {
      rec.outputs.push_back(
          {inst.players[0].owner(), *r.output_a, display_rank(ground, *r.output_a)});
    }
    if (r.output_b) {
      rec.outputs.push_back(
          {inst.players[1].owner(), *r.output_b, display_rank(ground, *r.output_b)});
    }
    if (!opts.verify) {
      rec.verdict = Verdict::kSkipped;
    } else if (r.fallback) {
      rec.verdict =
          (r.value() == oracle_median(ground)) ? Verdict::kExactMatch : Verdict::kFail;
    } else {
      const AlphaRatio& al = *opts.alpha;
      const MediocreSpec spec{al.floor_times(rec.t), al.floor_times(rec.t), rec.t};
      bool ok = !rec.outputs.empty();
      for (const PlayerOutput& po : rec.outputs) {
        ok = ok && is_mediocre(ground, po.value, spec);
      }
      rec.verdict = ok ? Verdict::kMediocreOk : Verdict::kFail;
    }
  } else {
    throw std::invalid_argument("unknown protocol: " + protocol);
  }

  rec.total_bits = transcript.total_bits;
  rec.rounds = transcript.rounds;
  if (opts.keep_transcript) rec.transcript_text = transcript.to_text(trailer);
  return rec;
}

std::string csv_header() { return "protocol,n,k,t,alpha,c,total_bits,rounds,verdict"; }

std::string csv_row(const RunRecord& rec) {
  std::ostringstream os;
  os << rec.protocol << ',' << rec.n << ',' << rec.k << ',' << rec.t << ','
     << (rec.alpha ? rec.alpha->str() : "") << ',' << (rec.c ? rec.c->str() : "") << ','
     << rec.total_bits << ',' << rec.rounds << ',' << to_string(rec.verdict);
  return os.str();
}

std::uint64_t cell_seed(std::uint64_t seed, Count n, int k, int trial) {
  std::uint64_t h = seed;
  for (std::uint64_t mix : {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                            static_cast<std::uint64_t>(trial)}) {
    h ^= mix + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<RunRecord> sweep(const SweepSpec& spec) {
  std::vector<RunRecord> rows;
  for (Count n = spec.n_min; n <= spec.n_max; n *= 2) {
    for (int k = spec.k_min; k <= spec.k_max; ++k) {
      for (int trial = 0; trial < spec.trials; ++trial) {
        const Instance inst = gen_instance(cell_seed(spec.seed, n, k, trial), n, k, spec.mode,
                                           spec.opts.c.value_or(Ratio{1, 2}));
        rows.push_back(run_protocol(spec.protocol, inst, spec.opts));
      }
    }
  }
  return rows;
}

std::string sweep_csv(const SweepSpec& spec) {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const RunRecord& rec : sweep(spec)) os << csv_row(rec) << '\n';
  return os.str();
}

}  // namespace medsel
