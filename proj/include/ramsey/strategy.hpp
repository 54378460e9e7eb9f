#pragma once

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ramsey/board.hpp"
#include "ramsey/lemma.hpp"

namespace ramsey {

// Roles in K^2 named after the case-tree figures.
enum Role : int { rA, rB, rC, rD, rE, rF, rI, rJ, rK, kRoles };
constexpr const char* kRoleNames = "ABCDEFIJK";

enum class Phase : uint8_t { CaseTree, Endgame, Special1, Special2, Done };
enum class EndStage : uint8_t { Star1, Block, Mirror, Star2Wait, Star2 };

const char* phase_name(Phase p);
const char* stage_name(EndStage s);

struct StrategyOptions {
  std::set<std::string> removed_branches;  // mutation hook: dispatch falls through to the sibling
  bool mirror_stub = false;                 // replace P2 by a copycat of P1's last edge
};

struct CheckEvent {
  enum Kind : uint8_t { Config, Ledger, Lemma2, SpecialLedger, Triangles, Finding };
  Kind kind = Config;
  std::string node;
  bool ok = true;
  std::string detail;
};
const char* event_kind_name(CheckEvent::Kind k);

struct StrategyState {
  Phase phase = Phase::CaseTree;
  std::string node = "root";
  int step = 0;
  int k1 = 1, k2 = 2;
  std::array<int, kRoles> role{-1, -1, -1, -1, -1, -1, -1, -1, -1};

  // lost-edge ledger from the closest marked ancestor
  int ledger_l = 0;
  std::string ledger_node;
  lemma::LostEdgeLedger last_ledger;
  bool has_ledger = false;

  // pending end-case: base given as two roles
  int base_r0 = -1, base_r1 = -1;
  std::string end_case;

  // endgame, all vertices in K^2 except c0/c1 which live in K^1
  std::optional<lemma::PotentialBaseWitness> witness;
  EndStage stage = EndStage::Star1;
  char block_case = 0;  // 'I', '2', '3'
  std::vector<int> star1, star2;
  int pending_f = -1;
  int c0 = -1, c1 = -1;

  // special end-cases
  std::vector<int> lstar;
  int pending_l = -1;
  std::vector<std::pair<int, int>> conceded, granted;  // role pairs
  int virtual_grants = 0;

  std::vector<std::string> path;
  int additional = 0;
  std::shared_ptr<const StrategyOptions> options;
};

struct StepResult {
  std::optional<Edge> move;
  std::string label;               // case label that produced the move
  std::string note;                // e.g. "root→AB" or "potential base AC"
  std::vector<CheckEvent> events;
};

// P1 has made exactly one move.
StepResult strategy_open(const GameState& s, StrategyState& st);
// P2 to move: P1 just moved or has stopped.
StepResult strategy_respond(const GameState& s, StrategyState& st);

// Fingerprint of the automaton state for transposition keys, vertex-free.
std::string strategy_fingerprint(const StrategyState& st);
// Colour per touched vertex reflecting its strategy roles.
uint32_t strategy_vertex_color(const StrategyState& st, const Vertex& v);
std::string role_edge_name(const StrategyState& st, const Edge& e);

// Figure configurations: right-hand positions of each case, P2 edges, P1 edges, and the bound on unspecified P1 edges.
struct NodeConfig {
  std::string label;
  std::vector<std::pair<int, int>> p2, p1;
  int plus = 0;
  bool star = false;  // one of the unspecified edges is P1's second move, in K^1 or incident with B
};
const std::vector<NodeConfig>& node_configs();
const NodeConfig* node_config(const std::string& label);
int marked_loss(const std::string& label);  // 0 when not a marked split-case
const std::vector<std::string>& branch_labels();
std::vector<std::pair<int, int>> parse_role_pairs(const std::string& text);

}  // namespace ramsey
