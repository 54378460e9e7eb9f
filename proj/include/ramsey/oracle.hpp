#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ramsey::oracle {

// A small target graph on vertices 0..k-1.
struct Target {
  int k = 0;
  std::vector<std::pair<int, int>> edges;
  static Target triangle();
  static Target k6_minus_k4();  // base 0-1, cherries through 2..5
};

struct BoardSpec {
  int copies = 2;  // 1: a single K_n, 2: K_n ⊔ K_n
  int n = 6;
};

enum class Value { P1WinWithinBudget, NoP1WinWithinBudget };

struct OracleResult {
  BoardSpec board;
  Target target;
  int budget = 0;
  Value value = Value::NoP1WinWithinBudget;
  bool short_circuit = false;
  long nodes = 0;
  long memo_hits = 0;
  std::string json() const;
};

struct ResourceError : std::runtime_error {
  long nodes = 0;
  ResourceError(const std::string& what, long n) : std::runtime_error(what), nodes(n) {}
};

// Exact minimax of the strong game: the first player to own a copy of the target wins, and an exhausted
// total-move budget is no win. Works only from the board module and the canonical form.
OracleResult oracle_solve(const BoardSpec& board, const Target& target, int budget, long max_nodes = 200'000'000);

}  // namespace ramsey::oracle
