#include "ramsey/oracle.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "json.hpp"
#include "ramsey/board.hpp"
#include "ramsey/canon.hpp"

namespace ramsey::oracle {

Target Target::triangle() { return Target{3, {{0, 1}, {1, 2}, {0, 2}}}; }

Target Target::k6_minus_k4() {
  Target t{6, {{0, 1}}};
  for (int b = 2; b < 6; ++b) {
    t.edges.emplace_back(0, b);
    t.edges.emplace_back(1, b);
  }
  return t;
}

std::string OracleResult::json() const {
  nlohmann::json j{
      {"mode", "oracle"},
      {"board", {{"copies", board.copies}, {"n", board.n}}},
      {"target", {{"vertices", target.k}, {"edges", target.edges.size()}}},
      {"budget", budget},
      {"value", value == Value::P1WinWithinBudget ? "P1-win-within-budget" : "no-P1-win-within-budget"},
      {"short_circuit", short_circuit},
      {"states", nodes},
      {"tt_hits", memo_hits},
  };
  return j.dump();
}

namespace {

// Does `who` own a target copy using the edge ab of clique g? Plain backtracking over vertex maps.
bool completes(const OwnGraph& g, Owner who, int a, int b, const Target& t) {
  auto own = [&](int x, int y) { return g.at(x, y) == who; };
  std::vector<int> map(t.k, -1);
  std::vector<char> used(g.n, 0);
  std::function<bool(int)> extend = [&](int u) -> bool {
    if (u == t.k) return true;
    if (map[u] >= 0) return extend(u + 1);
    for (int x = 0; x < g.n; ++x) {
      if (used[x]) continue;
      bool ok = true;
      for (auto [p, q] : t.edges) {
        int other = p == u ? q : q == u ? p : -1;
        if (other >= 0 && map[other] >= 0 && !own(x, map[other])) ok = false;
      }
      if (!ok) continue;
      map[u] = x, used[x] = 1;
      if (extend(u + 1)) return true;
      map[u] = -1, used[x] = 0;
    }
    return false;
  };
  for (auto [p, q] : t.edges)
    for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      std::fill(map.begin(), map.end(), -1);
      std::fill(used.begin(), used.end(), 0);
      map[p] = x, map[q] = y, used[x] = used[y] = 1;
      bool ok = true;
      for (auto [r, s] : t.edges)
        if (map[r] >= 0 && map[s] >= 0 && !own(map[r], map[s])) ok = false;
      if (ok && extend(0)) return true;
    }
  return false;
}

class Solver {
 public:
  Solver(const BoardSpec& b, const Target& t, long max_nodes) : b_(b), t_(t), max_(max_nodes) {}

  // true when P1 can force a win within `left` further moves
  bool p1_wins(const GameState& s, int left) {
    if (left == 0) return false;
    if (++nodes > max_) throw ResourceError("oracle exceeded " + std::to_string(max_) + " states", nodes);
    std::string key = canonical_form(canon_input(s, touched_vertices(s), {}, std::to_string(left)), false).key;
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++memo_hits;
      return it->second;
    }
    Player me = s.to_move();
    std::vector<Edge> moves;
    for (const auto& e : s.unclaimed_edges())
      if (e.copy <= b_.copies && e.v[1] < b_.n) moves.push_back(e);
    bool result;
    if (moves.empty()) {
      result = false;
    } else if (me == Player::P1) {
      result = false;
      for (const auto& e : moves) {
        GameState n = s.apply_move(me, e);
        if (completes(n.clique(e.copy), Owner::P1, e.v[0], e.v[1], t_) || p1_wins(n, left - 1)) {
          result = true;
          break;
        }
      }
    } else {
      result = true;
      for (const auto& e : moves) {
        GameState n = s.apply_move(me, e);
        if (completes(n.clique(e.copy), Owner::P2, e.v[0], e.v[1], t_) || !p1_wins(n, left - 1)) {
          result = false;
          break;
        }
      }
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  long nodes = 0;
  long memo_hits = 0;

 private:
  BoardSpec b_;
  Target t_;
  long max_;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

OracleResult oracle_solve(const BoardSpec& board, const Target& target, int budget, long max_nodes) {
  if (board.copies < 1 || board.copies > 2) throw ConfigError("board copies must be 1 or 2");
  if (board.n < 2 || board.n > kMaxGraphN) throw ConfigError("board n out of range");
  if (budget < 0) throw ConfigError("budget must be non-negative");
  OracleResult r;
  r.board = board;
  r.target = target;
  r.budget = budget;
  // P1 gets ceil(budget / 2) moves
  if (static_cast<int>(target.edges.size()) > (budget + 1) / 2) {
    r.short_circuit = true;
    return r;
  }
  Solver s(board, target, max_nodes);
  // the board module wants n >= 6; smaller boards only use the low vertices
  bool win = s.p1_wins(GameState::create(BoardKind::TwoCliques, std::max(board.n, 6)), budget);
  r.value = win ? Value::P1WinWithinBudget : Value::NoP1WinWithinBudget;
  r.nodes = s.nodes;
  r.memo_hits = s.memo_hits;
  return r;
}

}  // namespace ramsey::oracle
