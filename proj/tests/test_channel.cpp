#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "medsel/channel.hpp"

#include <sstream>

using namespace medsel;

TEST_CASE("message costs follow the model") {
  Board board(CostModel{16, 2});
  CHECK(board.post_value(1, 7).bit_cost == 4);
  CHECK(board.post_signal(2, 1).bit_cost == 2);
  CHECK(board.post_prefix(1, 0, 7).bit_cost == 7);
  CHECK(board.post_count(2, 15, 15).bit_cost == 4);
  CHECK(board.post_count(2, 0, 16).bit_cost == 5);
  CHECK(board.post_count(2, 0, 0).bit_cost == 1);  // never free
}

TEST_CASE("payload range errors") {
  Board board(CostModel{16, 2});
  CHECK_THROWS_AS(board.post_value(1, 17), std::invalid_argument);
  CHECK_THROWS_AS(board.post_value(1, -1), std::invalid_argument);
  CHECK_THROWS_AS(board.post_count(1, 6, 5), std::invalid_argument);
  CHECK_THROWS_AS(board.post_signal(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(board.post_prefix(1, 8, 3), std::invalid_argument);
}

TEST_CASE("transcript totals and rounds") {
  Board empty(CostModel{16, 2});
  const Transcript t0 = empty.finalize();
  CHECK(t0.total_bits == 0);
  CHECK(t0.rounds == 0);

  Board board(CostModel{16, 2});
  board.post_value(1, 3);
  board.end_round();
  board.post_signal(2, 0);
  const Transcript t = board.finalize();
  CHECK(t.total_bits == 6);
  CHECK(t.rounds == 2);
  CHECK(t.messages.size() == 2);

  std::int64_t sum = 0;
  for (const auto& m : t.messages) sum += m.bit_cost;
  CHECK(sum == t.total_bits);
}

TEST_CASE("transcript export format") {
  Board board(CostModel{16, 2});
  board.post_value(1, 3);
  board.end_round();
  board.post_signal(2, 2);
  const std::string text = board.finalize().to_text();
  CHECK(text ==
        "0 1 VALUE 3 4\n"
        "1 2 SIGNAL 2 2\n"
        "TOTAL bits=6 rounds=2\n");
  const std::string notes[] = {std::string("PRUNE round=0 t=5")};
  const std::string with_notes = board.finalize().to_text(notes);
  CHECK(with_notes.find("PRUNE round=0 t=5\nTOTAL") != std::string::npos);
}

TEST_CASE("replay board accepts the recorded run and rejects divergence") {
  Board board(CostModel{16, 2});
  board.post_value(1, 3);
  board.end_round();
  board.post_signal(2, 2);
  const Transcript rec = board.finalize();

  Board ok = Board::replaying(CostModel{16, 2}, rec);
  ok.post_value(1, 3);
  ok.end_round();
  ok.post_signal(2, 2);
  CHECK(ok.finalize().total_bits == rec.total_bits);

  Board bad = Board::replaying(CostModel{16, 2}, rec);
  CHECK_THROWS_AS(bad.post_value(1, 4), std::logic_error);

  Board incomplete = Board::replaying(CostModel{16, 2}, rec);
  incomplete.post_value(1, 3);
  CHECK_THROWS_AS(incomplete.finalize(), std::logic_error);
}
