#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ramsey/board.hpp"
#include "ramsey/canon.hpp"
#include "ramsey/strategy.hpp"

namespace ramsey {

struct VerifyOptions {
  BoardKind kind = BoardKind::TwoCliques;
  int n = 14;
  int depth = 5;             // P1 moves, exhaustive
  long playouts = 0;         // stochastic
  int max_p1_moves = 12;     // stochastic budget
  uint64_t seed = 1;
  bool reduce = true;        // canonical transpositions and orbit pruning
  int completion_cap = 12;   // P2 moves allowed after a stop
  double stop_chance = 0.03;
  std::shared_ptr<const StrategyOptions> strategy;
  // Graph game only: P1 moves after the opening edge g:1:0-1, as role pairs in K^2 ("CD", unbound roles
  // take fresh vertices), "K1" for a fresh edge in K^1, or "k1:a-b" for that edge of K^1.
  std::vector<std::string> prefix;
  std::vector<Edge> start;  // explicit P1 edges, used when prefix is empty
  size_t max_issues = 20;
};

struct Issue {
  std::string invariant;
  std::string detail;
  std::vector<Move> moves;
};

struct Verdict {
  std::string mode;
  VerifyOptions opts;
  long states = 0;
  long tt_hits = 0;
  long leaves = 0;
  long playouts_run = 0;
  long stops = 0;
  long completions = 0;
  int max_p2_after_stop = 0;
  long board_too_small = 0;
  long star_fans = 0;  // positions where the five-answer B1F_i fan was checked
  std::vector<Issue> violations;
  std::vector<Issue> findings;
  std::map<std::string, long> cases;
  uint64_t trace_hash = 1469598103934665603ull;
  double seconds = 0;

  bool safe() const { return violations.empty(); }
  // findings (BoardTooSmall, unreachable-by-construction branches) are reported but do not break safety
  std::string result() const;
};

Verdict exhaustive_verify(const VerifyOptions& o);
Verdict stochastic_verify(const VerifyOptions& o);
std::string verdict_json(const Verdict& v, bool with_moves = true);
std::string issue_trace_jsonl(const Verdict& v, const Issue& issue);

// The alternate first-stage win: once P1 has answered five A1F_i with A0F_i, P2 should hold the triangle A0A1B1
// with the five edges B1F_i free, so any three of them finish a G on the base A1B1. Checked, never played.
// Empty unless the position is exactly at that point.
std::optional<bool> star_fan_available(const GameState& s, const StrategyState& g);

// Canonical keys of every P1-to-move position reached within `depth` P1 moves, for the reduction check.
std::set<CanonicalKey> reachable_keys(BoardKind kind, int n, int depth, bool reduce);

// For every case label, the P1 edges of a line whose last P2 reply entered it (breadth-first, a few lines per automaton signature).
std::map<std::string, std::vector<Edge>> label_prefixes(BoardKind kind, int n, int max_depth, int per_signature = 2);

// Hand-written lines for labels the breadth-first search does not reach cheaply.
const std::map<std::string, std::vector<std::string>>& scripted_prefixes();

struct BranchReach {
  std::string label;
  std::vector<Edge> p1_edges;  // replaying these lets P2's next reply take the branch
  bool scripted = false;
};
// Reach lines for every strategy branch label (graph game, n = 14); labels with no line are left out.
std::vector<BranchReach> branch_reach(int hunt_depth = 10);

// The state P1 faces after the prefix moves, with P2 answering.
struct PrefixResult {
  GameState state;
  std::string node;
  bool ok = true;
  std::string error;
};
PrefixResult play_prefix(int n, const std::vector<std::string>& prefix,
                         std::shared_ptr<const StrategyOptions> strategy = nullptr);

struct CrosscheckReport {
  long states = 0;
  long lemma3_holds = 0;
  long implication_failures = 0;
  long bound_failures = 0;
  long two_delta_disagreements = 0;
  std::vector<std::string> examples;
  bool clean() const { return implication_failures == 0 && bound_failures == 0 && two_delta_disagreements == 0; }
};
std::vector<OwnGraph> random_k2_states(int n, int count, uint64_t seed);
// K^2 positions met by the strategy during stochastic play.
std::vector<OwnGraph> reachable_k2_states(int n, int playouts, uint64_t seed);
CrosscheckReport crosscheck_lemmas(const std::vector<OwnGraph>& corpus);

// Positions in which a marked split-case configuration is instantiated and its additional edges placed every possible way.
struct LedgerReport {
  std::string label;
  int l = 0;
  int k = 0;
  long placements = 0;
  int worst = 0;
  bool ok = true;
  std::string witness;
};
LedgerReport ledger_exhaust(const std::string& label, int pool = 10);

}  // namespace ramsey
