#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "ramsey/explain.hpp"
#include "ramsey/patterns.hpp"
#include "ramsey/session.hpp"
#include "ramsey/verifier.hpp"

using namespace ramsey;

namespace {

Session fresh() { return Session(BoardKind::TwoCliques, 14); }

Edge E(const char* t) { return parse_edge(t); }

// replays the P1 side of a scripted line in a new session
Session session_at(const std::string& label, std::vector<std::string> extra = {},
                   std::shared_ptr<const StrategyOptions> opts = nullptr) {
  auto pre = scripted_prefixes().at(label);
  pre.insert(pre.end(), extra.begin(), extra.end());
  auto pr = play_prefix(14, pre, opts);
  REQUIRE(pr.ok);
  Session s(BoardKind::TwoCliques, 14, opts);
  for (const auto& m : pr.state.history())
    if (m.player == Player::P1) s.p1_move(m.edge);
  return s;
}

Edge k2(const Session& s, int a, int b) { return Edge::graph(s.automaton().g.k2, std::min(a, b), std::max(a, b)); }
int role(const Session& s, Role r) { return s.automaton().g.role[r]; }

// a K^1 edge on vertices no strategy touches
Edge spare(const Session& s, int i) { return Edge::graph(s.automaton().g.k1, 6 + 2 * i, 7 + 2 * i); }

bool has_pair(const std::vector<std::pair<int, int>>& v, Role a, Role b) {
  return std::find(v.begin(), v.end(), std::pair<int, int>{a, b}) != v.end() ||
         std::find(v.begin(), v.end(), std::pair<int, int>{b, a}) != v.end();
}

}  // namespace

TEST_CASE("open: P2 answers AB in the other clique") {
  Session s = fresh();
  CHECK(s.p1_move(E("g:1:0-1")) == std::vector<Edge>{E("g:2:0-1")});
  CHECK(s.trace().back().label == "root");
  CHECK(s.automaton().g.k1 == 1);

  Session t = fresh();
  CHECK(t.p1_move(E("g:2:3-5")) == std::vector<Edge>{E("g:1:0-1")});
  CHECK(t.automaton().g.k1 == 2);
  CHECK(t.automaton().g.k2 == 1);

  GameState empty = GameState::create(BoardKind::TwoCliques, 14);
  StrategyState st;
  CHECK_THROWS_AS(strategy_open(empty, st), PreconditionError);
}

TEST_CASE("root: cases A and B") {
  Session a = fresh();
  a.p1_move(E("g:1:0-1"));
  CHECK(a.p1_move(E("g:2:1-2")) == std::vector<Edge>{E("g:2:1-3")});  // BC with C free
  CHECK(a.trace().back().label == "A");
  CHECK(a.trace().back().note == "A→BC");

  Session b = fresh();
  b.p1_move(E("g:1:0-1"));
  CHECK(b.p1_move(E("g:2:2-3")) == std::vector<Edge>{E("g:2:1-4")});  // BE
  CHECK(b.trace().back().label == "B");
  CHECK(role(b, rC) == 2);
  CHECK(role(b, rD) == 3);
  CHECK(role(b, rE) == 4);
}

TEST_CASE("A.1: BD then DA") {
  Session s = fresh();
  s.p1_move(E("g:1:0-1"));
  s.p1_move(E("g:2:1-2"));
  auto r = s.p1_move(E("g:2:0-3"));  // P1 takes AC
  CHECK(s.current_case() == "A.1");
  CHECK(r == std::vector<Edge>{k2(s, role(s, rB), role(s, rD))});
  r = s.p1_move(spare(s, 0));
  CHECK(r == std::vector<Edge>{k2(s, role(s, rD), role(s, rA))});
}

TEST_CASE("A.1: DA taken by P1 swaps A and C") {
  Session s = fresh();
  s.p1_move(E("g:1:0-1"));
  s.p1_move(E("g:2:1-2"));
  s.p1_move(E("g:2:0-3"));
  int d = role(s, rD);
  s.p1_move(Edge::graph(2, 0, d));  // P1 grabs DA
  CHECK(s.state().owner(Edge::graph(2, 3, d)) == Owner::P2);
  CHECK(role(s, rA) == 3);
}

TEST_CASE("endgame: star answered three times then P1 plays elsewhere") {
  Session s = fresh();
  s.p1_move(E("g:1:0-1"));
  s.p1_move(spare(s, 0));  // A
  s.p1_move(spare(s, 1));  // A.2: AC
  s.p1_move(spare(s, 2));  // CD
  s.p1_move(spare(s, 3));  // A.2.2 pending: AD
  CHECK(s.automaton().g.end_case == "A.2.2");
  s.p1_move(E("g:1:3-4"));  // enters the endgame: A1F1
  const auto& g = s.automaton().g;
  REQUIRE(g.phase == Phase::Endgame);
  REQUIRE(g.witness);
  int a0 = g.witness->a0;
  for (int i = 0; i < 3; ++i) {
    REQUIRE(g.pending_f >= 0);
    s.p1_move(k2(s, a0, g.pending_f));
  }
  CHECK(g.star1.size() == 4);
  int f4 = g.star1.back();
  auto r = s.p1_move(E("g:1:4-5"));
  CHECK(r == std::vector<Edge>{k2(s, a0, f4)});
  CHECK(s.trace().back().note.find("A0F4") != std::string::npos);
  CHECK(g.stage != EndStage::Star1);
}

TEST_CASE("endgame: stopping in the second star lets P2 finish") {
  Session s = fresh();
  s.p1_move(E("g:1:0-1"));
  s.p1_move(E("g:1:2-3"));
  s.p1_stop();
  REQUIRE(s.winner() == Player::P2);
  CHECK(patterns::owns_target(s.state(), Player::P2));
  CHECK_FALSE(patterns::owns_target(s.state(), Player::P1));
  // the winning edge joins A0 to the last star vertex
  const auto& g = s.automaton().g;
  REQUIRE(g.witness);
  REQUIRE_FALSE(g.star2.empty());
  CHECK(s.trace().back().edge == k2(s, g.witness->a0, g.star2.back()));
  CHECK(s.trace().back().label == "A.2.2/Star2");
}

TEST_CASE("Block.II: P2 takes C0C1") {
  Session s = session_at("Block.II");
  const auto& path = s.automaton().g.path;
  CHECK(std::find(path.begin(), path.end(), "Block.II") != path.end());
  CHECK(s.state().owner(E("g:1:0-2")) == Owner::P2);  // the missing base of P1's G in K^1
  CHECK(s.trace().back().edge == E("g:1:0-2"));
  CHECK(s.trace().back().note.find("C0C1") != std::string::npos);
  s.p1_stop();
  CHECK(s.winner() == Player::P2);
}

TEST_CASE("Block.I: P1 has the base but not C0D1") {
  // P1 builds G in K^1 with base 0-2 minus pendant edge 0-5
  Session s = fresh();
  s.p1_move(E("g:1:0-1"));
  for (const char* e : {"g:1:1-2", "g:1:0-2", "g:1:0-3", "g:1:2-3", "g:1:0-4", "g:1:2-4", "g:1:2-5"}) {
    if (s.finished()) break;
    s.p1_move(E(e));
  }
  const auto& path = s.automaton().g.path;
  bool block = std::find(path.begin(), path.end(), "Block.I") != path.end();
  CHECK(block);
  CHECK(s.state().owner(E("g:1:0-5")) == Owner::P2);
  CHECK(patterns::threats(s.state(), Player::P1).empty());
}

TEST_CASE("Special1: EK unclaimed wins at once") {
  Session s = session_at("B.1.1.2.1.2.1.1");
  CHECK(s.current_case() == "B.1.1.2.1.2.1.1");
  auto r = s.p1_move(spare(s, 2));
  Edge ek = k2(s, role(s, rE), role(s, rK));
  CHECK(r == std::vector<Edge>{ek});
  CHECK(s.winner() == Player::P2);
}

TEST_CASE("Special1: P1 takes EK, answers twice, then stops") {
  Session s = session_at("B.1.1.2.1.2.1.1");
  Edge ek = k2(s, role(s, rE), role(s, rK));
  s.p1_move(ek);
  const auto& g = s.automaton().g;
  CHECK(g.phase == Phase::Special1);
  int e = role(s, rE);
  for (int i = 0; i < 2; ++i) {
    REQUIRE(g.pending_l >= 0);
    s.p1_move(k2(s, e, g.pending_l));
  }
  CHECK(g.lstar.size() == 3);
  int l3 = g.lstar.back();
  s.p1_stop();
  CHECK(s.trace().back().edge == k2(s, e, l3));
  CHECK(s.winner() == Player::P2);
  CHECK_FALSE(patterns::owns_target(s.state(), Player::P1));
}

TEST_CASE("Special2 entry concedes FI FJ and grants BI BJ") {
  // P1 answers BI and BJ but not BK
  Session s = session_at("B.1.1.2.1.2.1", {"BI", "BJ", "K1"});
  CHECK(s.current_case() == "B.1.1.2.1.2.1.2");
  const auto& g = s.automaton().g;
  CHECK(s.trace().back().edge == k2(s, role(s, rB), role(s, rK)));
  s.p1_move(spare(s, 3));
  CHECK(g.phase == Phase::Special2);
  CHECK(has_pair(g.conceded, rF, rI));
  CHECK(has_pair(g.conceded, rF, rJ));
  CHECK(has_pair(g.granted, rB, rI));
  CHECK(has_pair(g.granted, rB, rJ));
  s.p1_stop();
  CHECK(s.winner() == Player::P2);
}

TEST_CASE("ledger shows up on marked split-cases") {
  Session s = fresh();
  s.p1_move(E("g:1:0-1"));
  s.p1_move(E("g:2:1-2"));
  s.p1_move(E("g:2:0-3"));  // A.1, marked with l = 1
  CHECK_FALSE(s.automaton().ledger());
  s.p1_move(spare(s, 0));
  s.p1_move(spare(s, 1));  // the A.1 panel runs after DA
  auto led = s.automaton().ledger();
  REQUIRE(led);
  CHECK(led->l == 1);
  CHECK(s.trace().back().ledger.has_value());
}

TEST_CASE("removed branch falls through to its sibling") {
  auto opts = std::make_shared<StrategyOptions>();
  opts->removed_branches = {"A.1"};
  Session s(BoardKind::TwoCliques, 14, opts);
  s.p1_move(E("g:1:0-1"));
  s.p1_move(E("g:2:1-2"));
  // A.2 wants AC, which P1 already owns
  CHECK_THROWS_AS(s.p1_move(E("g:2:0-3")), InternalInvariantViolation);
}

TEST_CASE("mirror stub copies P1's last edge") {
  auto opts = std::make_shared<StrategyOptions>();
  opts->mirror_stub = true;
  Session s(BoardKind::TwoCliques, 14, opts);
  CHECK(s.p1_move(E("g:1:3-4")) == std::vector<Edge>{E("g:2:3-4")});
}

TEST_CASE("fingerprints and colours") {
  Session a = fresh(), b = fresh();
  a.p1_move(E("g:1:0-1"));
  b.p1_move(E("g:1:5-9"));
  CHECK(a.automaton().fingerprint() == b.automaton().fingerprint());
  a.p1_move(E("g:2:1-2"));
  CHECK(a.automaton().fingerprint() != b.automaton().fingerprint());
  CHECK(a.automaton().color({2, 0}) != a.automaton().color({2, 1}));
  CHECK(a.automaton().color({2, 12}) == 0);
}

TEST_CASE("every node configuration names known roles") {
  for (const auto& c : node_configs()) {
    CAPTURE(c.label);
    for (auto [a, b] : c.p1) CHECK((a >= 0 && b < kRoles && a != b));
    for (auto [a, b] : c.p2) CHECK((a >= 0 && b < kRoles && a != b));
    CHECK(c.plus >= 0);
  }
  CHECK(branch_labels().size() == 46);
  CHECK(parse_role_pairs("AB CD") == std::vector<std::pair<int, int>>{{rA, rB}, {rC, rD}});
}

TEST_CASE("explain: opening, potential base, malformed input") {
  Session s = fresh();
  s.p1_move(E("g:1:0-1"));
  auto r = explain_trace(s.trace());
  REQUIRE(r.lines.size() == 3);
  CHECK(r.lines[1].find("root→AB") != std::string::npos);
  CHECK(r.path.front() == "root");

  Session t = fresh();
  t.p1_move(E("g:1:0-1"));
  t.p1_move(E("g:1:2-3"));
  t.p1_stop();
  std::string jsonl;
  for (const auto& p : t.trace()) jsonl += trace_line(p) + "\n";
  auto x = explain_trace(parse_trace(jsonl));
  CHECK(x.consistent);
  CHECK(x.end_case == "A.2.2");
  bool seen = false;
  for (const auto& l : x.lines) seen |= l.find("potential base AC") != std::string::npos;
  CHECK(seen);

  CHECK_THROWS_AS(parse_trace("{\"ply\": 1, \"player\": \"P1\""), ParseError);
  CHECK_THROWS_AS(parse_trace("{\"ply\": 1, \"player\": \"P3\", \"edge\": \"g:1:0-1\"}"), ParseError);
  CHECK_THROWS_AS(parse_trace("{\"ply\": 1, \"player\": \"P1\", \"edge\": \"g:9:0-1\"}"), ParseError);

  // a doctored P2 reply is flagged
  auto doctored = t.trace();
  doctored[1].edge = E("g:2:5-6");
  auto y = explain_trace(doctored);
  CHECK_FALSE(y.consistent);
  CHECK(y.lines[1].find("recorded") != std::string::npos);
}

TEST_CASE("session rejects bad input without changing state") {
  Session s = fresh();
  s.p1_move(E("g:1:0-1"));
  auto before = s.state().history().size();
  CHECK_THROWS_AS(s.p1_move(E("g:1:0-1")), IllegalMove);
  CHECK_THROWS_AS(s.p1_move(E("g:2:0-1")), IllegalMove);
  CHECK_THROWS_AS(s.p1_move(E("h:0-1-2-3")), IllegalMove);
  CHECK(s.state().history().size() == before);
  s.p1_stop();
  CHECK(s.finished());
  CHECK_THROWS_AS(s.p1_move(E("g:1:5-6")), TurnError);
}
