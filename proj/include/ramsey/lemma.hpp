#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/board.hpp"

namespace ramsey::lemma {

// a0 is always the special vertex.
struct PotentialBaseWitness {
  int a0 = 0, a1 = 0;
  int b1 = 0, b2 = 0;
  int special() const { return a0; }
};

struct PotentialBaseResult {
  std::optional<PotentialBaseWitness> witness;
  std::string refutation;
};

struct LostEdgeLedger {
  int k = 0;
  int l = 0;
};

// Description of the P1 triangle or 4-cycle that stops x from being special, if any.
std::optional<std::string> special_blocker(const OwnGraph& g, int x);
std::optional<std::pair<int, int>> find_book(const OwnGraph& g, int a0, int a1);

PotentialBaseResult is_potential_base(const OwnGraph& g, int a0, int a1, std::optional<int> special = std::nullopt);
PotentialBaseResult is_potential_base(const GameState& s, const Edge& base, std::optional<int> special = std::nullopt);

enum class EdgeClass { Good, Bad };
EdgeClass classify_edge(const OwnGraph& k2, int a0, int a1, int x1, int x2);
EdgeClass classify_edge(const GameState& s, const Edge& base, const Edge& p1_edge);
int count_bad_edges(const OwnGraph& k2, int a0, int a1);

std::optional<std::pair<int, int>> has_two_delta(const OwnGraph& g, int a0, int a1);

struct Lemma3Result {
  bool holds = false;
  std::string reason;
  int bad_edges = 0;
};
Lemma3Result lemma3_check(const OwnGraph& k2, int a0, int a1);
Lemma3Result lemma3_check(const GameState& s, const Edge& base);

struct Lemma2Result {
  bool holds = false;
  std::vector<std::string> failures;
  int k1_edges = 0;
  int count_bound = 0;
  int exact_max = 0;
};
// The witness lives on the clique other than k1_copy.
Lemma2Result lemma2_preconditions(const GameState& s, int k1_copy, const PotentialBaseWitness& w);
Lemma2Result lemma2_preconditions(const OwnGraph& k1, const OwnGraph& k2, const PotentialBaseWitness& w);

int triangles_through(const OwnGraph& g, int x);

struct StarBound {
  int r = 0;               // extra edges beyond the star
  int pre_triangles = 0;   // P1 triangles through x before the star
  int chord_bonus = 0;     // extra triangles an open 4-cycle chord can add
  int bound = 0;
  int triangles = 0;       // exact count after
  bool ok = false;
  std::string error;
};
StarBound star_triangle_bound(const OwnGraph& before, const OwnGraph& after, int x);

// max_ep1_over_bases <= k - l with k = p1_total - 1.
bool ledger_holds(const OwnGraph& k2, int p1_total, int l);

}  // namespace ramsey::lemma
