#pragma once

#include <optional>
#include <string>
#include <vector>

#include "medsel/core.hpp"
#include "medsel/instance.hpp"

namespace medsel {

inline constexpr const char* kProtocolNames[] = {"count2",  "halve2",  "interval2",
                                                 "mediank", "approxk", "approx2"};

enum class Verdict { kExactMatch, kMediocreOk, kFail, kSkipped };

const char* to_string(Verdict v);

struct PlayerOutput {
  PlayerId player = 0;  // 0 = agreed by everyone
  Value value = 0;
  Count rank = 0;  // 1-based position in the sorted union
};

/// One protocol execution with its oracle verdict. The verdict is computed
/// from brute-force rank/median checks only, never from the protocol's own
/// bookkeeping.
struct RunRecord {
  std::string protocol;
  Count n = 0;
  int k = 0;
  Count t = 0;
  std::optional<AlphaRatio> alpha;
  std::optional<Ratio> c;
  std::int64_t total_bits = 0;
  std::int32_t rounds = 0;
  std::vector<PlayerOutput> outputs;
  Verdict verdict = Verdict::kFail;
  std::int64_t search_bits = 0;  // approx2 only: bits before the value posts
  std::string transcript_text;   // filled when requested
};

struct RunOptions {
  std::optional<AlphaRatio> alpha;
  std::optional<Ratio> c;
  bool check_prune_bounds = false;
  bool verify = true;
  bool keep_transcript = false;
};

/// Executes one protocol on an instance and verifies the outcome against
/// the brute-force oracles. Precondition violations surface as
/// std::invalid_argument.
RunRecord run_protocol(const std::string& protocol, const Instance& inst,
                       const RunOptions& opts);

std::string csv_header();
std::string csv_row(const RunRecord& rec);

struct SweepSpec {
  std::string protocol;
  Count n_min = 64, n_max = 64;  // doubling steps
  int k_min = 2, k_max = 2;
  int trials = 1;
  std::uint64_t seed = 1;
  GenMode mode = GenMode::kMultiset;
  RunOptions opts;
};

/// One CSV row per (n, k, trial), deterministic under the seed.
std::vector<RunRecord> sweep(const SweepSpec& spec);
std::string sweep_csv(const SweepSpec& spec);

/// Seed for a given sweep cell, stable across runs and platforms.
std::uint64_t cell_seed(std::uint64_t seed, Count n, int k, int trial);

}  // namespace medsel
