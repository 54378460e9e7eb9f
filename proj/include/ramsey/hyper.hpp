#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "ramsey/board.hpp"
#include "ramsey/strategy.hpp"

namespace ramsey {

// Hyperedges containing both centres, seen as a graph on the other vertices.
struct XYBoardView {
  int x = 0, y = 0;
  Edge lift(int a, int b) const { return Edge::hyper(x, y, a, b); }
  // the two non-centre vertices, or nullopt when e does not contain both centres
  std::optional<std::pair<int, int>> project(const Edge& e) const;
};

long long board_intersection(std::pair<int, int> c1, std::pair<int, int> c2, int n);

struct HyperState {
  int stage = 1;
  int step = 0;
  std::array<int, 4> tuvw{-1, -1, -1, -1};
  std::array<int, 4> first4{-1, -1, -1, -1};  // P2's first hyperedge before labelling
  int X = -1, Y = -1, A = -1, B = -1, C = -1, D = -1;
  int a0 = -1, a1 = -1;
  std::vector<int> star1, star2;
  int pending_f = -1;
  char hcase = 0;  // 'I', '2', '3'
  int t = -1, u = -1, c0 = -1, c1 = -1;
  bool done = false;
  std::vector<std::string> path;
  std::shared_ptr<const StrategyOptions> options;
};

StepResult hyper_open(const GameState& s, HyperState& hs);
StepResult hyper_respond(const GameState& s, HyperState& hs);

std::string hyper_fingerprint(const HyperState& hs);
uint32_t hyper_vertex_color(const HyperState& hs, int v);

}  // namespace ramsey
