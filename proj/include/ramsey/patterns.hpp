#pragma once

#include <array>
#include <string>
#include <vector>

#include "ramsey/board.hpp"

namespace ramsey::patterns {

// An embedded G: base a0a1 plus the four cherries a0-b-a1.
struct GCopy {
  int copy = 0;  // clique copy (graph) or 0 for a view
  int a0 = 0, a1 = 0;
  std::array<int, 4> pendants{};
  int pair = -1;  // index into pendants once a strategy stage fixes it

  std::vector<std::pair<int, int>> edges() const;
  std::vector<Edge> board_edges() const;  // graph boards only
  bool operator==(const GCopy&) const = default;
};

// G lifted by two centres: hyperedges {x,y} + e for e in inner.
struct GPrimeCopy {
  int x = 0, y = 0;
  GCopy inner;
  std::vector<Edge> hyperedges() const;
};

struct Threat {
  Edge edge;
  GCopy copy;
  int cx = -1, cy = -1;  // centres for hypergraph threats
};

struct BaseBound {
  int x0 = 0, x1 = 0;
  int bound = 0;
};

struct EpBounds {
  std::vector<BaseBound> per_base;
  int global_max = 0;
};

// Core routines on a single clique or view.
std::vector<GCopy> find_g_copies(const OwnGraph& g, Owner who);
int e_count(const OwnGraph& g, const GCopy& c, Owner who);
EpBounds max_ep1_over_bases(const OwnGraph& g);
int exact_max_ep1(const OwnGraph& g);
int exact_max_ep1_with_base(const OwnGraph& g, int x0, int x1);
// Copies whose P1 count is at least `min_p1` and which contain no P2 edge.
std::vector<GCopy> heavy_p1_copies(const OwnGraph& g, int min_p1);
bool completes_copy(const OwnGraph& g, Owner who, int a, int b);
std::vector<GCopy> copies_through(const OwnGraph& g, Owner who, int a, int b);
std::vector<std::pair<std::pair<int, int>, GCopy>> threats(const OwnGraph& g, Owner who);

// Board-level wrappers.
std::vector<GCopy> find_g_copies(const GameState& s, Player who, int within_copy);
int e_p1(const GameState& s, const GCopy& c);
int e_p2(const GameState& s, const GCopy& c);
EpBounds max_ep1_over_bases(const GameState& s, int within_copy);
std::vector<Threat> threats(const GameState& s, Player who);
std::vector<GPrimeCopy> find_gprime_copies(const GameState& s, Player who);
bool owns_target(const GameState& s, Player who);
// Whether claiming `e` (already applied in s) completed a target copy for `who`.
bool move_completed_target(const GameState& s, Player who, const Edge& e);

std::string gcopy_json(const GCopy& c, bool graph);

}  // namespace ramsey::patterns
