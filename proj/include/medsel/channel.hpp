#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "medsel/core.hpp"

namespace medsel {

// Three-way comparison payloads used by signal messages.
inline constexpr std::int64_t kSignalLess = 0;
inline constexpr std::int64_t kSignalEqual = 1;
inline constexpr std::int64_t kSignalGreater = 2;

enum class MsgKind { kValue, kCount, kSignal, kPrefix };

const char* to_string(MsgKind kind);

struct Message {
  PlayerId sender = 0;
  std::int32_t round = 0;
  MsgKind kind = MsgKind::kValue;
  std::int64_t payload = 0;
  std::int32_t bit_cost = 0;

  bool operator==(const Message&) const = default;
};

/// Fixes the bit price of each message kind. A value costs
/// ceil(log2(value_range)) bits, a count of range r costs ceil(log2(r+1)),
/// a signal costs signal_bits, and a width-w prefix costs exactly w.
/// Every price is clamped to at least one bit.
struct CostModel {
  Count value_range = 2;
  int signal_bits = 2;

  int value_bits() const;
  int count_bits(Count range) const;
};

struct Transcript {
  std::vector<Message> messages;
  std::int64_t total_bits = 0;
  std::int32_t rounds = 0;

  /// One line per message, `round sender kind payload bit_cost`, then any
  /// trailer notes, then `TOTAL bits=<int> rounds=<int>`.
  std::string to_text(std::span<const std::string> trailer_notes = {}) const;
};

/// The shared broadcast board: every post is visible to all players and is
/// metered under the cost model. In replay mode each post is checked
/// against a recorded transcript instead of being appended blindly.
class Board {
 public:
  explicit Board(CostModel model);
  static Board replaying(CostModel model, const Transcript& expected);

  const Message& post_value(PlayerId sender, Value payload);
  const Message& post_count(PlayerId sender, Count payload, Count range);
  const Message& post_signal(PlayerId sender, std::int64_t payload);
  const Message& post_prefix(PlayerId sender, Value payload, int width);

  void end_round() { ++round_; }
  std::int32_t round() const { return round_; }
  const std::vector<Message>& messages() const { return messages_; }
  std::int64_t bits_posted() const { return bits_; }
  const CostModel& model() const { return model_; }

  Transcript finalize() const;

 private:
  const Message& append(PlayerId sender, MsgKind kind, std::int64_t payload, int bits);

  CostModel model_;
  std::vector<Message> messages_;
  std::int64_t bits_ = 0;
  std::int32_t round_ = 0;
  std::vector<Message> expected_;
  bool replay_ = false;
};

}  // namespace medsel
