#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "ramsey/patterns.hpp"
#include "ramsey/strategy.hpp"

using namespace ramsey;
using namespace ramsey::patterns;

namespace {

using Pair = std::pair<int, int>;
using EdgeSet = std::set<Pair>;

Pair ord(int a, int b) { return a < b ? Pair{a, b} : Pair{b, a}; }

// G on {0..5}: base 01, pendants 2..5
EdgeSet g_edges() {
  EdgeSet s{{0, 1}};
  for (int b = 2; b < 6; ++b) s.insert({0, b}), s.insert({1, b});
  return s;
}

EdgeSet image(const EdgeSet& e, const std::vector<int>& p) {
  EdgeSet out;
  for (auto [a, b] : e) out.insert(ord(p[a], p[b]));
  return out;
}

OwnGraph graph_with(int n, const EdgeSet& p1, const EdgeSet& p2 = {}) {
  OwnGraph g = OwnGraph::empty(n);
  for (auto [a, b] : p1) g.set(a, b, Owner::P1);
  for (auto [a, b] : p2) g.set(a, b, Owner::P2);
  return g;
}

// every embedding of G in K_n as an edge set, by brute force over injective maps
std::vector<EdgeSet> all_embeddings(int n) {
  std::set<EdgeSet> seen;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  EdgeSet g = g_edges();
  do {
    seen.insert(image(g, p));
  } while (std::next_permutation(p.begin(), p.end()));
  return {seen.begin(), seen.end()};
}

int brute_max_ep1(const OwnGraph& g, const std::vector<EdgeSet>& emb) {
  int best = 0;
  for (const auto& e : emb) {
    int c = 0;
    bool dead = false;
    for (auto [a, b] : e) {
      if (g.p2(a, b)) dead = true;
      if (g.p1(a, b)) ++c;
    }
    if (!dead) best = std::max(best, c);
  }
  return best;
}

GameState graph_state(int n, const std::vector<Edge>& p1, const std::vector<Edge>& p2) {
  GameState s = GameState::create(BoardKind::TwoCliques, n);
  for (size_t i = 0; i < std::max(p1.size(), p2.size()); ++i) {
    if (i < p1.size()) s = s.apply_move(Player::P1, p1[i]);
    else s = s.apply_stop();
    if (i < p2.size()) s = s.apply_move(Player::P2, p2[i]);
  }
  return s;
}

// P2 fills in with hyperedges through {10,11} so P1 can own any list
GameState hyper_state(int n, const std::vector<Edge>& p1) {
  GameState s = GameState::create(BoardKind::Hyper4, n);
  int a = 0, b = 1;
  for (const auto& e : p1) {
    s = s.apply_move(Player::P1, e);
    Edge junk = Edge::hyper(a, b, n - 2, n - 1);
    while (s.owner(junk) != Owner::None) {
      if (++b == n - 2) b = ++a + 1;
      junk = Edge::hyper(a, b, n - 2, n - 1);
    }
    s = s.apply_move(Player::P2, junk);
  }
  return s;
}

}  // namespace

TEST_CASE("structural constants of G") {
  EdgeSet g = g_edges();
  CHECK(g.size() == 9);
  std::vector<int> deg(6);
  for (auto [a, b] : g) ++deg[a], ++deg[b];
  std::sort(deg.rbegin(), deg.rend());
  CHECK(deg == std::vector<int>{5, 5, 2, 2, 2, 2});

  int aut = 0;
  std::vector<int> p(6);
  std::iota(p.begin(), p.end(), 0);
  do aut += image(g, p) == g;
  while (std::next_permutation(p.begin(), p.end()));
  CHECK(aut == 48);
  CHECK(all_embeddings(6).size() == 720 / 48);
}

TEST_CASE("find_g_copies") {
  EdgeSet all;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) all.insert({i, j});
  CHECK(find_g_copies(graph_with(6, all), Owner::P1).size() == 15);
  CHECK(find_g_copies(graph_with(6, all), Owner::P2).empty());

  EdgeSet g = g_edges();
  auto cs = find_g_copies(graph_with(8, g), Owner::P1);
  REQUIRE(cs.size() == 1);
  auto ce = cs[0].edges();
  CHECK(EdgeSet(ce.begin(), ce.end()) == g);
  for (auto drop : g) {
    EdgeSet h = g;
    h.erase(drop);
    CHECK(find_g_copies(graph_with(8, h), Owner::P1).empty());
  }
  CHECK(find_g_copies(OwnGraph::empty(8), Owner::P1).empty());

  // K_7 owned: C(7,6) * 15 embeddings
  EdgeSet k7;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) k7.insert({i, j});
  CHECK(find_g_copies(graph_with(7, k7), Owner::P1).size() == all_embeddings(7).size());
}

TEST_CASE("e_p1 and e_p2") {
  GCopy c{1, 0, 1, {2, 3, 4, 5}};
  auto on = [](std::initializer_list<Pair> ps) {
    std::vector<Edge> v;
    for (auto [a, b] : ps) v.push_back(Edge::graph(1, a, b));
    return v;
  };
  GameState s = graph_state(8, on({{0, 1}, {0, 2}, {1, 2}}), {Edge::graph(2, 0, 1), Edge::graph(2, 1, 2), Edge::graph(2, 2, 3)});
  CHECK(e_p1(s, c) == 3);
  CHECK(e_p2(s, c) == 0);

  auto nine = c.board_edges();
  std::vector<Edge> p1(nine.begin(), nine.begin() + 8);
  GameState t = graph_state(8, p1, {nine[8], Edge::graph(2, 0, 1), Edge::graph(2, 0, 2), Edge::graph(2, 0, 3),
                                    Edge::graph(2, 0, 4), Edge::graph(2, 0, 5), Edge::graph(2, 0, 6), Edge::graph(2, 0, 7)});
  CHECK(e_p1(t, c) == 0);
  CHECK(e_p2(t, c) == 0);
  CHECK(e_p1(GameState::create(BoardKind::TwoCliques, 8), c) == 0);
}

TEST_CASE("exact max over embeddings agrees with brute force") {
  const int n = 7;
  auto emb = all_embeddings(n);
  std::vector<Pair> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    int k1 = static_cast<int>(rng() % 9), k2 = static_cast<int>(rng() % 6);
    EdgeSet p1(pairs.begin(), pairs.begin() + k1), p2(pairs.begin() + k1, pairs.begin() + k1 + k2);
    OwnGraph g = graph_with(n, p1, p2);
    int want = brute_max_ep1(g, emb);
    CHECK(exact_max_ep1(g) == want);
    auto b = max_ep1_over_bases(g);
    CHECK(b.global_max >= want);
    int per_base = 0;
    for (const auto& bb : b.per_base) per_base = std::max(per_base, bb.bound);
    CHECK(per_base == b.global_max);
  }
  CHECK(max_ep1_over_bases(OwnGraph::empty(n)).global_max == 0);
}

TEST_CASE("marked split-case configurations respect the ledger") {
  // explicit edges of each figure, roles A..K on 0..8
  for (const char* label : {"A.1", "B.1.1.1"}) {
    const NodeConfig* cfg = node_config(label);
    REQUIRE(cfg);
    int l = marked_loss(label);
    EdgeSet p1, p2;
    for (auto [a, b] : cfg->p1) p1.insert(ord(a, b));
    for (auto [a, b] : cfg->p2) p2.insert(ord(a, b));
    int k = static_cast<int>(cfg->p1.size()) + cfg->plus;
    CAPTURE(label);
    CHECK(max_ep1_over_bases(graph_with(10, p1, p2)).global_max <= k - l);
  }
  CHECK(marked_loss("A.1") == 1);
  CHECK(marked_loss("B.1.1.1") == 2);
  CHECK(marked_loss("A.2") == 0);
}

TEST_CASE("threats") {
  GCopy c{0, 0, 1, {2, 3, 4, 5}};
  EdgeSet g = g_edges();
  EdgeSet no_base = g;
  no_base.erase({0, 1});
  auto t = threats(graph_with(8, no_base), Owner::P1);
  REQUIRE(t.size() == 1);
  CHECK(t[0].first == Pair{0, 1});

  EdgeSet no_pendant = g;
  no_pendant.erase({0, 4});
  t = threats(graph_with(8, no_pendant), Owner::P1);
  std::set<Pair> hit;
  for (auto& [e, cp] : t) hit.insert(e);
  CHECK(hit.count({0, 4}));
  // a P2 edge on the missing slot kills the threat
  CHECK(threats(graph_with(8, no_pendant, {{0, 4}}), Owner::P1).empty());
  // completes_copy looks at an edge already claimed
  EdgeSet with46 = no_pendant;
  with46.insert({4, 6});
  CHECK(completes_copy(graph_with(8, g), Owner::P1, 0, 4));
  CHECK_FALSE(completes_copy(graph_with(8, with46), Owner::P1, 4, 6));
  CHECK_FALSE(completes_copy(graph_with(8, no_pendant), Owner::P1, 0, 4));

  // board level: the same threat shows up in copy 2
  std::vector<Edge> p1;
  for (auto [a, b] : no_base) p1.push_back(Edge::graph(2, a, b));
  std::vector<Edge> p2;
  for (int i = 1; i < 8; ++i) p2.push_back(Edge::graph(1, 0, i));
  p2.push_back(Edge::graph(1, 1, 2));
  GameState s = graph_state(8, p1, p2);
  auto bt = threats(s, Player::P1);
  REQUIRE(bt.size() == 1);
  CHECK(bt[0].edge == Edge::graph(2, 0, 1));
  CHECK(threats(s, Player::P2).empty());
  CHECK_FALSE(owns_target(s, Player::P1));
  GameState done = s.apply_move(Player::P1, Edge::graph(2, 0, 1));
  CHECK(owns_target(done, Player::P1));
  CHECK(move_completed_target(done, Player::P1, Edge::graph(2, 0, 1)));
}

TEST_CASE("G' copies on the hypergraph") {
  const int n = 12;
  const int X = 0, Y = 1;
  std::vector<Edge> lifted;
  for (auto [a, b] : g_edges()) lifted.push_back(Edge::hyper(X, Y, a + 2, b + 2));
  GameState s = hyper_state(n, lifted);
  auto cs = find_gprime_copies(s, Player::P1);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].x == X);
  CHECK(cs[0].y == Y);
  CHECK(owns_target(s, Player::P1));
  CHECK(cs[0].hyperedges().size() == 9);

  // same inner edges split over centres {0,1} and {0,9}
  std::vector<Edge> split;
  int i = 0;
  for (auto [a, b] : g_edges()) split.push_back(Edge::hyper(X, i++ < 5 ? Y : 9, a + 2, b + 2));
  GameState t = hyper_state(n, split);
  CHECK(find_gprime_copies(t, Player::P1).empty());
  CHECK_FALSE(owns_target(t, Player::P1));

  CHECK(find_gprime_copies(GameState::create(BoardKind::Hyper4, n), Player::P1).empty());

  // one hyperedge short gives a hypergraph threat with the right centres
  std::vector<Edge> eight(lifted.begin() + 1, lifted.end());
  auto ht = threats(hyper_state(n, eight), Player::P1);
  bool found = false;
  for (const auto& th : ht) found |= th.edge == lifted[0] && th.cx == X && th.cy == Y;
  CHECK(found);
}

TEST_CASE("gcopy json") {
  GCopy c{1, 0, 1, {2, 3, 4, 5}};
  CHECK(gcopy_json(c, true).find("\"base\"") != std::string::npos);
}
