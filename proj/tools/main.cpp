// medsel: deterministic median-selection protocols over a metered
// broadcast board, with brute-force verification built in.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "medsel/harness.hpp"

namespace {

using namespace medsel;

AlphaRatio parse_alpha(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw CLI::ValidationError("--alpha expects p/q");
  // Generous denominator cap for experiments; the library default is tighter.
  return AlphaRatio(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)),
                    /*den_cap=*/1024);
}

Ratio parse_ratio(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Ratio(std::stoll(text), 1);
  }
  return Ratio(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

GenMode parse_mode(const std::string& text) {
  if (text == "multiset") return GenMode::kMultiset;
  if (text == "disjoint-dense") return GenMode::kDisjointDense;
  throw CLI::ValidationError("--mode must be multiset or disjoint-dense");
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << contents;
}

void print_record(const RunRecord& rec) {
  std::cout << "protocol=" << rec.protocol << " n=" << rec.n << " k=" << rec.k
            << " t=" << rec.t;
  if (rec.alpha) std::cout << " alpha=" << rec.alpha->str();
  if (rec.c) std::cout << " c=" << rec.c->str();
  std::cout << " bits=" << rec.total_bits << " rounds=" << rec.rounds;
  if (rec.protocol == "approx2") std::cout << " search_bits=" << rec.search_bits;
  for (const PlayerOutput& po : rec.outputs) {
    std::cout << " out[player " << po.player << "]=" << po.value << " (rank " << po.rank
              << ")";
  }
  std::cout << " verdict=" << to_string(rec.verdict) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"median-selection protocol simulator"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  std::uint64_t gen_seed = 1;
  std::int64_t gen_n = 64;
  int gen_k = 2;
  std::string gen_mode = "multiset", gen_c = "1/2", gen_out;
  gen->add_option("--seed", gen_seed);
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--k", gen_k)->required();
  gen->add_option("--mode", gen_mode, "multiset | disjoint-dense");
  gen->add_option("--c", gen_c, "density for disjoint-dense, as num/den");
  gen->add_option("--out", gen_out, "output path (stdout when omitted)");

  // run
  auto* run = app.add_subcommand("run", "run one protocol and verify it");
  std::string run_protocol_name, run_instance, run_alpha, run_c, run_out, run_transcript;
  std::uint64_t run_seed = 1;
  std::int64_t run_n = 64;
  int run_k = 2;
  std::string run_mode = "multiset";
  bool run_lemma = false, run_no_verify = false;
  run->add_option("--protocol", run_protocol_name,
                  "count2 | halve2 | interval2 | mediank | approxk | approx2")
      ->required();
  run->add_option("--instance", run_instance, "instance file (self-generates when omitted)");
  run->add_option("--alpha", run_alpha, "mediocrity ratio p/q");
  run->add_option("--c", run_c, "density ratio num/den");
  run->add_option("--seed", run_seed);
  run->add_option("--n", run_n);
  run->add_option("--k", run_k);
  run->add_option("--mode", run_mode);
  run->add_flag("--assert-lemma1", run_lemma,
                "check the per-round pruning bounds and dump them in the transcript");
  run->add_flag("--no-verify", run_no_verify, "skip oracle verification (timing runs)");
  run->add_option("--out", run_out, "append one CSV row here");
  run->add_option("--transcript", run_transcript, "write the transcript here");

  // sweep
  auto* sw = app.add_subcommand("sweep", "run a seeded grid and emit CSV");
  std::string sw_protocol, sw_alpha, sw_c, sw_out, sw_mode = "multiset";
  std::string sw_n = "64", sw_k = "2";
  int sw_trials = 10;
  std::uint64_t sw_seed = 1;
  bool sw_lemma = false, sw_no_verify = false;
  sw->add_option("--protocol", sw_protocol)->required();
  sw->add_option("--n", sw_n, "single value or min:max (doubling steps)");
  sw->add_option("--k", sw_k, "single value or min:max");
  sw->add_option("--trials", sw_trials);
  sw->add_option("--seed", sw_seed);
  sw->add_option("--alpha", sw_alpha);
  sw->add_option("--c", sw_c);
  sw->add_option("--mode", sw_mode);
  sw->add_flag("--assert-lemma1", sw_lemma);
  sw->add_flag("--no-verify", sw_no_verify);
  sw->add_option("--out", sw_out, "CSV path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const Instance inst =
          gen_instance(gen_seed, gen_n, gen_k, parse_mode(gen_mode), parse_ratio(gen_c));
      const std::string text = format_instance(inst);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        write_file(gen_out, text);
      }
      return 0;
    }

    if (run->parsed()) {
      RunOptions opts;
      if (!run_alpha.empty()) opts.alpha = parse_alpha(run_alpha);
      if (!run_c.empty()) opts.c = parse_ratio(run_c);
      opts.check_prune_bounds = run_lemma;
      opts.verify = !run_no_verify;
      opts.keep_transcript = !run_transcript.empty();

      Instance inst;
      if (!run_instance.empty()) {
        inst = load_instance_file(run_instance);
      } else {
        GenMode mode = parse_mode(run_mode);
        if (run_protocol_name == "approxk" || run_protocol_name == "approx2") {
          mode = GenMode::kDisjointDense;
        }
        inst = gen_instance(run_seed, run_n, run_k, mode, opts.c.value_or(Ratio{1, 2}));
      }

      const RunRecord rec = run_protocol(run_protocol_name, inst, opts);
      print_record(rec);
      if (!run_out.empty()) write_file(run_out, csv_header() + "\n" + csv_row(rec) + "\n");
      if (!run_transcript.empty()) write_file(run_transcript, rec.transcript_text);
      return rec.verdict == Verdict::kFail ? 1 : 0;
    }

    // sweep
    SweepSpec spec;
    spec.protocol = sw_protocol;
    spec.trials = sw_trials;
    spec.seed = sw_seed;
    spec.mode = parse_mode(sw_mode);
    if (!sw_alpha.empty()) spec.opts.alpha = parse_alpha(sw_alpha);
    if (!sw_c.empty()) spec.opts.c = parse_ratio(sw_c);
    spec.opts.check_prune_bounds = sw_lemma;
    spec.opts.verify = !sw_no_verify;
    const auto parse_span = [](const std::string& text, std::int64_t& lo, std::int64_t& hi) {
      const auto colon = text.find(':');
      if (colon == std::string::npos) {
        lo = hi = std::stoll(text);
      } else {
        lo = std::stoll(text.substr(0, colon));
        hi = std::stoll(text.substr(colon + 1));
      }
    };
    std::int64_t klo, khi;
    parse_span(sw_n, spec.n_min, spec.n_max);
    parse_span(sw_k, klo, khi);
    spec.k_min = static_cast<int>(klo);
    spec.k_max = static_cast<int>(khi);
    if (spec.protocol == "approxk" || spec.protocol == "approx2") {
      spec.mode = GenMode::kDisjointDense;
    }

    bool any_fail = false;
    std::ostringstream os;
    os << csv_header() << '\n';
    for (const RunRecord& rec : sweep(spec)) {
      os << csv_row(rec) << '\n';
      any_fail = any_fail || rec.verdict == Verdict::kFail;
    }
    if (sw_out.empty()) {
      std::cout << os.str();
    } else {
      write_file(sw_out, os.str());
    }
    return any_fail ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
