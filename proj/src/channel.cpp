#include "medsel/channel.hpp"

#include <sstream>
#include <stdexcept>

namespace medsel {

const char* to_string(MsgKind kind) {
  switch (kind) {
    case MsgKind::kValue: return "VALUE";
    case MsgKind::kCount: return "COUNT";
    case MsgKind::kSignal: return "SIGNAL";
    case MsgKind::kPrefix: return "PREFIX";
  }
  return "?";
}

int CostModel::value_bits() const {
  return std::max(1, ceil_log2(static_cast<std::uint64_t>(value_range)));
}

int CostModel::count_bits(Count range) const {
  return std::max(1, ceil_log2(static_cast<std::uint64_t>(range) + 1));
}

std::string Transcript::to_text(std::span<const std::string> trailer_notes) const {
  std::ostringstream os;
  for (const Message& m : messages) {
    os << m.round << ' ' << m.sender << ' ' << to_string(m.kind) << ' ' << m.payload << ' '
       << m.bit_cost << '\n';
  }
  for (const std::string& note : trailer_notes) os << note << '\n';
  os << "TOTAL bits=" << total_bits << " rounds=" << rounds << '\n';
  return os.str();
}

Board::Board(CostModel model) : model_(model) {
  if (model_.value_range < 1) throw std::invalid_argument("value range must be positive");
  if (model_.signal_bits < 1 || model_.signal_bits > 8) {
    throw std::invalid_argument("signal width out of range");
  }
}

Board Board::replaying(CostModel model, const Transcript& expected) {
  Board b(model);
  b.expected_ = expected.messages;
  b.replay_ = true;
  return b;
}

const Message& Board::append(PlayerId sender, MsgKind kind, std::int64_t payload, int bits) {
  Message m{sender, round_, kind, payload, bits};
  if (replay_) {
    if (messages_.size() >= expected_.size() || !(expected_[messages_.size()] == m)) {
      throw std::logic_error("replay mismatch");
    }
  }
  messages_.push_back(m);
  bits_ += bits;
  return messages_.back();
}

const Message& Board::post_value(PlayerId sender, Value payload) {
  if (payload < 0 || payload > model_.value_range) {
    throw std::invalid_argument("payload exceeds cost-model range");
  }
  return append(sender, MsgKind::kValue, payload, model_.value_bits());
}

const Message& Board::post_count(PlayerId sender, Count payload, Count range) {
  if (payload < 0 || payload > range) {
    throw std::invalid_argument("payload exceeds cost-model range");
  }
  return append(sender, MsgKind::kCount, payload, model_.count_bits(range));
}

const Message& Board::post_signal(PlayerId sender, std::int64_t payload) {
  if (payload < 0 || payload >= (std::int64_t{1} << model_.signal_bits)) {
    throw std::invalid_argument("payload exceeds cost-model range");
  }
  return append(sender, MsgKind::kSignal, payload, model_.signal_bits);
}

const Message& Board::post_prefix(PlayerId sender, Value payload, int width) {
  if (width < 1 || width > 62) throw std::invalid_argument("bad prefix width");
  if (payload < 0 || payload >= (Value{1} << width)) {
    throw std::invalid_argument("payload exceeds cost-model range");
  }
  return append(sender, MsgKind::kPrefix, payload, width);
}

Transcript Board::finalize() const {
  if (replay_ && messages_.size() != expected_.size()) {
    throw std::logic_error("replay mismatch: transcript length");
  }
  Transcript t;
  t.messages = messages_;
  t.total_bits = bits_;
  t.rounds = messages_.empty() ? 0 : messages_.back().round + 1;
  return t;
}

}  // namespace medsel
