#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/board.hpp"
#include "ramsey/hyper.hpp"
#include "ramsey/strategy.hpp"

namespace ramsey {

// P2's automaton for either game.
struct Automaton {
  BoardKind kind = BoardKind::TwoCliques;
  StrategyState g;
  HyperState h;

  explicit Automaton(BoardKind k = BoardKind::TwoCliques, std::shared_ptr<const StrategyOptions> opts = nullptr);
  StepResult open(const GameState& s);
  StepResult respond(const GameState& s);
  bool done() const;
  bool in_final_star() const;
  std::string fingerprint() const;
  uint32_t color(const Vertex& v) const;
  std::string current_case() const;
  std::optional<lemma::LostEdgeLedger> ledger() const;
  // potential base as text edges, once recorded
  std::optional<std::string> potential_base(const GameState& s) const;
  // number of star edges P2 has drawn
  int star_edges() const;
};

struct PlyRecord {
  int ply = 0;
  Player player = Player::P1;
  bool stop = false;
  Edge edge{};
  std::string label;
  std::string note;
  std::optional<lemma::LostEdgeLedger> ledger;
  std::vector<CheckEvent> events;
};

std::string trace_line(const PlyRecord& r);
std::vector<PlyRecord> parse_trace(const std::string& jsonl);

// One game: P1 moves come from outside, P2 answers through the automaton.
class Session {
 public:
  Session(BoardKind kind, int n, std::shared_ptr<const StrategyOptions> opts = nullptr);

  // Applies P1's edge and P2's reply. Throws IllegalMove or TurnError with the session unchanged.
  std::vector<Edge> p1_move(const Edge& e);
  // P1 stops; P2 plays on until it completes its target or its automaton has nothing left.
  std::vector<Edge> p1_stop(int max_p2_moves = 64);

  const GameState& state() const { return state_; }
  const Automaton& automaton() const { return aut_; }
  const std::vector<PlyRecord>& trace() const { return trace_; }
  bool finished() const { return winner_.has_value() || stalled_; }
  std::optional<Player> winner() const { return winner_; }
  std::string current_case() const { return aut_.current_case(); }

 private:
  void p2_turn(std::vector<Edge>& out);

  GameState state_;
  Automaton aut_;
  std::vector<PlyRecord> trace_;
  std::optional<Player> winner_;
  bool stalled_ = false;
};

}  // namespace ramsey
