#include "ramsey/strategy.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ramsey/patterns.hpp"

namespace ramsey {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::CaseTree: return "case-tree";
    case Phase::Endgame: return "endgame";
    case Phase::Special1: return "special1";
    case Phase::Special2: return "special2";
    case Phase::Done: return "done";
  }
  return "?";
}

const char* stage_name(EndStage s) {
  switch (s) {
    case EndStage::Star1: return "Star1";
    case EndStage::Block: return "Block";
    case EndStage::Mirror: return "Mirror";
    case EndStage::Star2Wait: return "Star2";
    case EndStage::Star2: return "Star2";
  }
  return "?";
}

const char* event_kind_name(CheckEvent::Kind k) {
  switch (k) {
    case CheckEvent::Config: return "config";
    case CheckEvent::Ledger: return "ledger";
    case CheckEvent::Lemma2: return "lemma2";
    case CheckEvent::SpecialLedger: return "special-ledger";
    case CheckEvent::Triangles: return "triangles";
    case CheckEvent::Finding: return "finding";
  }
  return "?";
}

std::vector<std::pair<int, int>> parse_role_pairs(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::istringstream in(text);
  std::string w;
  auto idx = [](char c) {
    const char* p = std::char_traits<char>::find(kRoleNames, kRoles, c);
    if (!p) throw ParseError(std::string("unknown role ") + c);
    return static_cast<int>(p - kRoleNames);
  };
  while (in >> w) {
    if (w.size() != 2) throw ParseError("role pair expected: " + w);
    out.emplace_back(idx(w[0]), idx(w[1]));
  }
  return out;
}

namespace {

const std::string kS1 = "B.1.1.2.1.2.1.1";
const std::string kS2 = "B.1.1.2.1.2.1.2";

NodeConfig cfg(const char* label, const char* p2, const char* p1, int plus, bool star = false) {
  return NodeConfig{label, parse_role_pairs(p2), parse_role_pairs(p1), plus, star};
}

}  // namespace

const std::vector<NodeConfig>& node_configs() {
  static const std::vector<NodeConfig> table = {
      cfg("A", "AB BC", "", 2, true),
      cfg("A.1", "AB BC BD AD", "AC", 3, true),
      cfg("A.1.1", "AB BC DA BE DE BD", "AC CD", 4, true),
      cfg("A.1.2", "AB BC DA CD BD", "AC", 4, true),
      cfg("A.2", "AB BC CD AC", "", 4, true),
      cfg("A.2.1", "AB AC CD BD BC", "AD", 4, true),
      cfg("A.2.2", "AB BC CD AD AC", "", 5, true),
      cfg("B", "AB BE", "CD", 1),
      cfg("B.1", "AB BE CE", "CD AE", 1),
      cfg("B.1.1", "AB BE CE BF", "CD AE BC", 1),
      cfg("B.1.1.1", "AB BE CE BF AF", "CD AE BC EF", 1),
      cfg("B.1.1.1.1", "AB BE CE BF AF FI", "CD AE BC EF BD", 1),
      cfg("B.1.1.1.1.1", "AB BE EC AF FI BI BF", "CD AE BC EF BD AI", 1),
      cfg("B.1.1.1.1.2", "AB BE EC BF FI AI AF", "CD AE BC EF BD", 2),
      cfg("B.1.1.1.2.1", "AB BE EC BF FI AF", "CD AE BC EF AD", 1),
      cfg("B.1.1.1.2.1.1", "AB BE EC BF FI AF AI", "CD AE BC EF AD BI", 1),
      cfg("B.1.1.1.2.1.2", "AB BE EC AF FI BI BF", "CD AE BC EF AD", 2),
      cfg("B.1.1.1.2.2", "BF BE EC AF BD AD AB", "CD AE BC EF", 3),
      cfg("B.1.1.2", "AB BE EC BF EF", "CD AE BC", 2),
      cfg("B.1.1.2.1", "AB BE EC BF EF", "CD AE BC CF", 1),
      cfg("B.1.1.2.1.1", "AB BE EC BF EF EI", "CD AE BC CF AF", 1),
      cfg("B.1.1.2.1.1.1", "AB BE EC BF EI FI EF", "CD AE BC AF BI CF", 1),
      cfg("B.1.1.2.1.1.2", "AB EC BF EF EI BI BE", "CD AE BC AF CF", 2),
      cfg("B.1.1.2.1.2", "AB BE EC BF EF AF", "CD AE BC CF", 2),
      cfg("B.1.1.2.1.2.1", "AB BE EC BF EF AF", "CD AE BC CF BD DF", 0),
      cfg("B.1.1.2.1.2.1.1", "AB BE EC BF AF FI FJ FK EI EJ EF", "CD AE BC BD BI BJ BK CF DF", 2),
      cfg("B.1.1.2.1.2.1.2", "AB BE EC EF AF FK BK BF", "CD AE BC BD BI BJ CF DF", 2),
      cfg("B.1.1.2.2", "AB BE EC BF CF EF", "CD AE BC", 3),
      cfg("B.1.2", "AB BE EC BC", "CD AE", 2),
      cfg("B.1.2.1", "AB BE EC BC", "CD AE AC", 1),
      cfg("B.1.2.1.1", "AB BE EC BC AD BF", "CD AE AC DE", 2),
      cfg("B.1.2.1.1.1", "AB BE EC AD BF CF BC", "CD AE AC DE EF", 2),
      cfg("B.1.2.1.1.2", "AB EC BC AD BF EF BE", "CD AE AC DE", 3),
      cfg("B.1.2.1.2", "AB BE EC BC DE", "CD AE AC", 2),
      cfg("B.1.2.1.2.1", "AB BE EC DE BF BC", "CD AE AC BD", 2),
      cfg("B.1.2.1.2.1.1", "AB BE EC DE BF BC CF", "CD AE AC BD EF", 2),
      cfg("B.1.2.1.2.1.2", "AB EC BC DE BF EF BE", "CD AE AC BD", 3),
      cfg("B.1.2.1.2.2", "AB EC BC DE BD BE", "CD AE AC", 3),
      cfg("B.1.2.2", "AB BE EC AC BC", "CD AE", 3),
      cfg("B.2", "BE AE BF AB", "CD", 3),
      cfg("B.2.1", "BE AE AF BF AB", "CD EF", 3),
      cfg("B.2.2", "BE AE AF BF AB", "CD", 4),
  };
  return table;
}

const NodeConfig* node_config(const std::string& label) {
  for (const auto& c : node_configs())
    if (c.label == label) return &c;
  return nullptr;
}

int marked_loss(const std::string& label) {
  static const std::map<std::string, int> marks = {
      {"A.1", 1},     {"B.1.1", 1},       {"B.1.2.1.2", 1},   {"B.1.1.1", 2},
      {"B.1.1.2.1.1", 2}, {"B.1.2.1.1", 2}, {"B.1.2.1.2.1", 2},
  };
  auto it = marks.find(label);
  return it == marks.end() ? 0 : it->second;
}

const std::vector<std::string>& branch_labels() {
  static const std::vector<std::string> labels = {
      "A", "A.1", "A.1.1", "A.1.2", "A.2", "A.2.1", "A.2.2",
      "B", "B.1", "B.1.1", "B.1.1.1", "B.1.1.1.1", "B.1.1.1.1.1", "B.1.1.1.1.2",
      "B.1.1.1.2", "B.1.1.1.2.1", "B.1.1.1.2.1.1", "B.1.1.1.2.1.2", "B.1.1.1.2.2",
      "B.1.1.2", "B.1.1.2.1", "B.1.1.2.1.1", "B.1.1.2.1.1.1", "B.1.1.2.1.1.2",
      "B.1.1.2.1.2", "B.1.1.2.1.2.1", "B.1.1.2.1.2.1.1", "B.1.1.2.1.2.1.2", "B.1.1.2.1.2.2",
      "B.1.1.2.2", "B.1.2", "B.1.2.1", "B.1.2.1.1", "B.1.2.1.1.1", "B.1.2.1.1.2",
      "B.1.2.1.2", "B.1.2.1.2.1", "B.1.2.1.2.1.1", "B.1.2.1.2.1.2", "B.1.2.1.2.2",
      "B.1.2.2", "B.2", "B.2.1", "B.2.2", "Block.I", "Block.II",
  };
  return labels;
}

namespace {

struct Ctx {
  const GameState& s;
  StrategyState& st;
  StepResult& out;
  const OwnGraph& g;

  Ctx(const GameState& state, StrategyState& sst, StepResult& o)
      : s(state), st(sst), out(o), g(state.clique(sst.k2)) {}

  std::string rname(int r) const { return std::string(1, kRoleNames[r]); }
  std::string pname(int a, int b) const { return rname(a) + rname(b); }

  int v(int r) const {
    if (st.role[r] < 0) throw InternalInvariantViolation(st.node + ": role " + rname(r) + " unbound");
    return st.role[r];
  }
  bool bound(int r) const { return st.role[r] >= 0; }

  bool granted(int a, int b) const {
    for (auto [x, y] : st.granted)
      if ((x == a && y == b) || (x == b && y == a)) return true;
    return false;
  }
  bool p1(int a, int b) const { return g.p1(v(a), v(b)) || granted(a, b); }
  bool free_edge(int a, int b) const { return g.free_edge(v(a), v(b)); }

  uint32_t bound_mask() const {
    uint32_t m = 0;
    for (int x : st.role)
      if (x >= 0) m |= 1u << x;
    return m;
  }
  int fresh(int r) {
    st.role[r] = s.require_free_vertex(st.k2, bound_mask());
    return st.role[r];
  }
  void swap(int a, int b) { std::swap(st.role[a], st.role[b]); }

  void emit(CheckEvent::Kind k, const std::string& node, bool ok, std::string detail) {
    out.events.push_back(CheckEvent{k, node, ok, std::move(detail)});
  }
  void add_note(const std::string& n) {
    if (!out.note.empty()) out.note += "; ";
    out.note += n;
  }

  void take_v(int copy, int x, int y, const std::string& name) {
    if (out.move) throw InternalInvariantViolation(st.node + ": second P2 move in one turn");
    Edge e = Edge::graph(copy, std::min(x, y), std::max(x, y));
    if (s.owner(e) != Owner::None) throw InternalInvariantViolation(st.node + ": " + name + " is already claimed");
    out.move = e;
    if (out.label.empty()) out.label = st.node;
    add_note(st.node + "→" + name);
  }
  void take(int a, int b) { take_v(st.k2, v(a), v(b), pname(a, b)); }

  std::string choose(bool cond, const std::string& yes, const std::string& no) const {
    std::string pick = cond ? yes : no;
    if (st.options && st.options->removed_branches.count(pick)) pick = cond ? no : yes;
    return pick;
  }

  void enter(const std::string& label, int step = 0) {
    st.node = label;
    st.step = step;
    st.path.push_back(label);
  }

  // P1's move on this turn, if it moved at all.
  std::optional<Edge> fresh_p1_move() const {
    const auto& h = s.history();
    if (h.empty() || h.back().player != Player::P1 || h.back().stop) return std::nullopt;
    return h.back().edge;
  }

  int p1_k() const { return s.count(Owner::P1) - 1 + st.virtual_grants; }

  OwnGraph ledger_view() const {
    OwnGraph h = g;
    for (auto [a, b] : st.conceded) {
      int x = v(a), y = v(b);
      h.adj2[x] &= ~(1u << y);
      h.adj2[y] &= ~(1u << x);
    }
    return h;
  }

  void check_config(const std::string& label) {
    const NodeConfig* c = node_config(label);
    if (!c) return;
    std::string bad;
    for (auto [a, b] : c->p2)
      if (!bound(a) || !bound(b) || !g.p2(v(a), v(b))) bad += " P2 lacks " + pname(a, b);
    int specified = 1;  // P1's first edge
    for (auto [a, b] : c->p1) {
      if (!bound(a) || !bound(b)) continue;  // virtual grant
      if (g.p1(v(a), v(b)))
        ++specified;
      else if (!granted(a, b))
        bad += " P1 lacks " + pname(a, b);
    }
    st.additional = s.count(Owner::P1) - specified;
    if (st.additional > c->plus)
      bad += " additional " + std::to_string(st.additional) + " > " + std::to_string(c->plus);
    emit(CheckEvent::Config, label, bad.empty(), bad.empty() ? "+" + std::to_string(st.additional) : bad);
  }

  void panel(const std::string& label) {
    check_config(label);
    int k = p1_k();
    int l = marked_loss(label);
    if (l > 0) {
      int bound_val = patterns::max_ep1_over_bases(ledger_view()).global_max;
      bool ok = bound_val <= k - l;
      emit(CheckEvent::Ledger, label, ok,
           "k=" + std::to_string(k) + " l=" + std::to_string(l) + " bound=" + std::to_string(bound_val));
      st.ledger_l = l;
      st.ledger_node = label;
      st.last_ledger = {k, l};
      st.has_ledger = true;
    } else if (st.ledger_l > 0) {
      int exact = patterns::exact_max_ep1(ledger_view());
      bool ok = exact <= k - st.ledger_l;
      emit(CheckEvent::Ledger, label, ok,
           "inherited from " + st.ledger_node + " k=" + std::to_string(k) + " l=" + std::to_string(st.ledger_l) +
               " exact=" + std::to_string(exact));
      st.last_ledger = {k, st.ledger_l};
    }
  }

  // The end-case move was made this turn; entry happens after P1 answers.
  void end_pending(const std::string& label, int r0, int r1) {
    enter(label, 99);
    st.end_case = label;
    st.base_r0 = r0;
    st.base_r1 = r1;
  }

  void star_take(int a1, int f) { take_v(st.k2, a1, f, "A1F" + std::to_string(f)); }

  // Returns true when the star closed with the A0F_k move.
  bool star_step(std::vector<int>& star) {
    const auto& w = *st.witness;
    if (st.pending_f >= 0) {
      int f = st.pending_f;
      if (!g.p1(w.a0, f)) {
        st.pending_f = -1;
        take_v(st.k2, w.a0, f, "A0F" + std::to_string(star.size()));
        return true;
      }
    }
    int f = s.require_free_vertex(st.k2, 0);
    star.push_back(f);
    st.pending_f = f;
    take_v(st.k2, w.a1, f, "A1F" + std::to_string(star.size()));
    return false;
  }

  void start_star2() {
    st.stage = EndStage::Star2;
    st.pending_f = -1;
    out.label = st.end_case + "/Star2";
    star_step(st.star2);
  }

  void enter_endgame(const std::string& label, int r0, int r1) {
    st.end_case = label;
    panel(label);
    std::optional<lemma::PotentialBaseWitness> w;
    std::string why;
    for (auto [x, y] : {std::pair{r0, r1}, std::pair{r1, r0}}) {
      auto pb = lemma::is_potential_base(g, v(x), v(y), v(x));
      if (pb.witness) {
        w = pb.witness;
        break;
      }
      if (!why.empty()) why += "; ";
      why += pb.refutation;
    }
    if (!w) {
      emit(CheckEvent::Lemma2, label, false, "no special endpoint: " + why);
      auto book = lemma::find_book(g, v(r0), v(r1));
      w = lemma::PotentialBaseWitness{v(r0), v(r1), book ? book->first : -1, book ? book->second : -1};
    } else {
      auto r = lemma::lemma2_preconditions(s, st.k1, *w);
      std::string d;
      for (const auto& f : r.failures) d += f + "; ";
      emit(CheckEvent::Lemma2, label, r.holds,
           r.holds ? "K1=" + std::to_string(r.k1_edges) + " max=" + std::to_string(r.exact_max) : d);
    }
    st.witness = w;
    st.phase = Phase::Endgame;
    st.stage = EndStage::Star1;
    st.pending_f = -1;
    out.label = label + "/Star1";
    add_note("potential base " + pname(r0, r1));
    star_step(st.star1);
  }

  void enter_special(const std::string& label) {
    st.phase = label == kS1 ? Phase::Special1 : Phase::Special2;
    enter(label, 0);
  }

  // ---- case tree ----

  void root() {
    auto m = fresh_p1_move();
    bool k2_edge = m && m->copy == st.k2;
    bool avoids = k2_edge && !m->contains(v(rA)) && !m->contains(v(rB));
    std::string lab = choose(avoids, "B", "A");
    if (lab == "B") {
      enter("B");
      if (avoids) {
        st.role[rC] = m->v[0];
        st.role[rD] = m->v[1];
      } else {
        fresh(rC);
        fresh(rD);
      }
      fresh(rE);
      take(rB, rE);
    } else {
      enter("A");
      if (k2_edge && m->contains(v(rA))) swap(rA, rB);
      fresh(rC);
      take(rB, rC);
    }
  }

  void case_tree() {
    const std::string n = st.node;
    if (st.step == 99) return enter_endgame(st.end_case, st.base_r0, st.base_r1);
    if (n == "root") return root();
    if (n == "A") {
      panel("A");
      if (choose(p1(rA, rC), "A.1", "A.2") == "A.1") {
        enter("A.1");
        fresh(rD);
        take(rB, rD);
      } else {
        enter("A.2");
        take(rA, rC);
      }
      return;
    }
    if (n == "A.1") {
      if (st.step == 0) {
        if (!free_edge(rD, rA)) swap(rA, rC);
        st.step = 1;
        return take(rD, rA);
      }
      panel("A.1");
      if (choose(p1(rD, rC), "A.1.1", "A.1.2") == "A.1.1") {
        enter("A.1.1");
        fresh(rE);
        take(rB, rE);
      } else {
        end_pending("A.1.2", rB, rD);
        take(rD, rC);
      }
      return;
    }
    if (n == "A.1.1") {
      if (!free_edge(rE, rD)) swap(rA, rD);
      end_pending("A.1.1", rB, rD);
      return take(rE, rD);
    }
    if (n == "A.2") {
      if (st.step == 0) {
        fresh(rD);
        st.step = 1;
        return take(rC, rD);
      }
      panel("A.2");
      if (choose(p1(rA, rD), "A.2.1", "A.2.2") == "A.2.1") {
        end_pending("A.2.1", rB, rC);
        take(rB, rD);
      } else {
        end_pending("A.2.2", rA, rC);
        take(rA, rD);
      }
      return;
    }
    if (n == "B") {
      panel("B");
      if (choose(p1(rA, rE), "B.1", "B.2") == "B.1") {
        enter("B.1");
        take(rC, rE);
      } else {
        enter("B.2");
        take(rA, rE);
      }
      return;
    }
    if (n == "B.1") {
      panel("B.1");
      if (choose(p1(rB, rC), "B.1.1", "B.1.2") == "B.1.1") {
        enter("B.1.1");
        fresh(rF);
        take(rB, rF);
      } else {
        enter("B.1.2");
        take(rB, rC);
      }
      return;
    }
    if (n == "B.1.1") {
      panel("B.1.1");
      if (choose(p1(rE, rF), "B.1.1.1", "B.1.1.2") == "B.1.1.1") {
        enter("B.1.1.1");
        take(rA, rF);
      } else {
        enter("B.1.1.2");
        take(rE, rF);
      }
      return;
    }
    if (n == "B.1.1.1") {
      panel("B.1.1.1");
      if (choose(p1(rB, rD), "B.1.1.1.1", "B.1.1.1.2") == "B.1.1.1.1") {
        enter("B.1.1.1.1");
        fresh(rI);
        return take(rF, rI);
      }
      enter("B.1.1.1.2");
      if (choose(p1(rA, rD) || p1(rD, rF), "B.1.1.1.2.1", "B.1.1.1.2.2") == "B.1.1.1.2.1") {
        enter("B.1.1.1.2.1");
        if (!p1(rA, rD)) swap(rA, rF);
        fresh(rI);
        take(rF, rI);
      } else {
        enter("B.1.1.1.2.2");
        take(rB, rD);
      }
      return;
    }
    if (n == "B.1.1.1.1") {
      panel("B.1.1.1.1");
      if (choose(p1(rA, rI), "B.1.1.1.1.1", "B.1.1.1.1.2") == "B.1.1.1.1.1") {
        end_pending("B.1.1.1.1.1", rB, rF);
        take(rB, rI);
      } else {
        end_pending("B.1.1.1.1.2", rA, rF);
        take(rA, rI);
      }
      return;
    }
    if (n == "B.1.1.1.2.1") {
      panel("B.1.1.1.2.1");
      if (choose(p1(rB, rI), "B.1.1.1.2.1.1", "B.1.1.1.2.1.2") == "B.1.1.1.2.1.1") {
        end_pending("B.1.1.1.2.1.1", rA, rF);
        take(rA, rI);
      } else {
        end_pending("B.1.1.1.2.1.2", rB, rF);
        take(rB, rI);
      }
      return;
    }
    if (n == "B.1.1.1.2.2") {
      if (!free_edge(rA, rD)) swap(rA, rF);
      end_pending("B.1.1.1.2.2", rA, rB);
      return take(rA, rD);
    }
    if (n == "B.1.1.2") {
      panel("B.1.1.2");
      if (choose(p1(rC, rF), "B.1.1.2.1", "B.1.1.2.2") == "B.1.1.2.2") {
        end_pending("B.1.1.2.2", rE, rF);
        return take(rC, rF);
      }
      enter("B.1.1.2.1");
      panel("B.1.1.2.1");
      if (choose(p1(rA, rF), "B.1.1.2.1.1", "B.1.1.2.1.2") == "B.1.1.2.1.1") {
        enter("B.1.1.2.1.1");
        fresh(rI);
        take(rE, rI);
      } else {
        enter("B.1.1.2.1.2");
        take(rA, rF);
      }
      return;
    }
    if (n == "B.1.1.2.1.1") {
      panel("B.1.1.2.1.1");
      if (choose(p1(rB, rI), "B.1.1.2.1.1.1", "B.1.1.2.1.1.2") == "B.1.1.2.1.1.1") {
        end_pending("B.1.1.2.1.1.1", rE, rF);
        take(rF, rI);
      } else {
        end_pending("B.1.1.2.1.1.2", rB, rE);
        take(rB, rI);
      }
      return;
    }
    if (n == "B.1.1.2.1.2") {
      panel("B.1.1.2.1.2");
      bool pb = lemma::is_potential_base(g, v(rB), v(rF)).witness.has_value();
      if (choose(!pb, "B.1.1.2.1.2.1", "B.1.1.2.1.2.2") == "B.1.1.2.1.2.2") {
        enter("B.1.1.2.1.2.2");
        return enter_endgame("B.1.1.2.1.2.2", rB, rF);
      }
      enter("B.1.1.2.1.2.1");
      panel("B.1.1.2.1.2.1");
      if (!p1(rB, rD) || !p1(rD, rF))
        emit(CheckEvent::Finding, "B.1.1.2.1.2.1", false, "BF not a potential base without BD and DF");
      fresh(rI);
      return take(rF, rI);
    }
    if (n == "B.1.1.2.1.2.1") return special_entry_script();
    if (n == "B.1.2") {
      panel("B.1.2");
      if (choose(p1(rA, rC), "B.1.2.1", "B.1.2.2") == "B.1.2.2") {
        end_pending("B.1.2.2", rB, rC);
        return take(rA, rC);
      }
      enter("B.1.2.1");
      panel("B.1.2.1");
      if (choose(p1(rD, rE), "B.1.2.1.1", "B.1.2.1.2") == "B.1.2.1.1") {
        enter("B.1.2.1.1");
        take(rA, rD);
      } else {
        enter("B.1.2.1.2");
        take(rD, rE);
      }
      return;
    }
    if (n == "B.1.2.1.1") {
      if (st.step == 0) {
        fresh(rF);
        st.step = 1;
        return take(rB, rF);
      }
      panel("B.1.2.1.1");
      if (choose(p1(rE, rF), "B.1.2.1.1.1", "B.1.2.1.1.2") == "B.1.2.1.1.1") {
        end_pending("B.1.2.1.1.1", rB, rC);
        take(rC, rF);
      } else {
        end_pending("B.1.2.1.1.2", rB, rE);
        take(rE, rF);
      }
      return;
    }
    if (n == "B.1.2.1.2") {
      panel("B.1.2.1.2");
      if (choose(p1(rB, rD), "B.1.2.1.2.1", "B.1.2.1.2.2") == "B.1.2.1.2.1") {
        enter("B.1.2.1.2.1");
        fresh(rF);
        take(rB, rF);
      } else {
        end_pending("B.1.2.1.2.2", rB, rE);
        take(rB, rD);
      }
      return;
    }
    if (n == "B.1.2.1.2.1") {
      panel("B.1.2.1.2.1");
      if (choose(p1(rE, rF), "B.1.2.1.2.1.1", "B.1.2.1.2.1.2") == "B.1.2.1.2.1.1") {
        end_pending("B.1.2.1.2.1.1", rB, rC);
        take(rC, rF);
      } else {
        end_pending("B.1.2.1.2.1.2", rB, rE);
        take(rE, rF);
      }
      return;
    }
    if (n == "B.2") {
      if (st.step == 0) {
        // the triangle ABE is symmetric; put a P1-free vertex at B
        int pick = -1;
        for (int r : {rB, rA, rE})
          if (g.deg1(v(r)) == 0) {
            pick = r;
            break;
          }
        if (pick < 0) throw InternalInvariantViolation("B.2: none of A, B, E is P1-free");
        if (pick != rB) swap(pick, rB);
        fresh(rF);
        st.step = 1;
        return take(rB, rF);
      }
      panel("B.2");
      if (choose(p1(rA, rF) || p1(rE, rF), "B.2.1", "B.2.2") == "B.2.1") {
        if (!p1(rE, rF)) swap(rA, rE);
        end_pending("B.2.1", rA, rB);
      } else {
        if (g.deg1(v(rA)) > 1) swap(rA, rE);
        end_pending("B.2.2", rA, rB);
      }
      return take(rA, rF);
    }
    throw InternalInvariantViolation("unknown case node " + n);
  }

  // Split-case B.1.1.2.1.2.1 after FI: the F-star towards BI, BJ, BK.
  void special_entry_script() {
    auto go_special2 = [&](int k_role) {
      // the last F-star vertex plays K; earlier ones are conceded F-edges and granted B-edges
      std::vector<int> earlier;
      for (int r : {rI, rJ})
        if (r != k_role && bound(r)) earlier.push_back(r);
      int kv = v(k_role);
      int ks[2] = {-1, -1};
      for (size_t i = 0; i < earlier.size(); ++i) ks[i] = v(earlier[i]);
      st.role[rI] = ks[0];
      st.role[rJ] = ks[1];
      st.role[rK] = kv;
      st.conceded.clear();
      st.granted.clear();
      if (ks[0] >= 0) st.conceded.push_back({rF, rI}), st.granted.push_back({rB, rI});
      if (ks[1] >= 0) st.conceded.push_back({rF, rJ}), st.granted.push_back({rB, rJ});
      st.virtual_grants = 2 - static_cast<int>(earlier.size());
      take(rB, rK);
      enter_special(kS2);
    };
    if (st.step == 0) {
      if (choose(!p1(rB, rI), kS2, kS1) == kS2) return go_special2(rI);
      fresh(rJ);
      st.step = 1;
      return take(rF, rJ);
    }
    if (st.step == 1) {
      if (choose(!p1(rB, rJ), kS2, kS1) == kS2) return go_special2(rJ);
      fresh(rK);
      st.step = 2;
      return take(rF, rK);
    }
    if (st.step == 2) {
      if (choose(!p1(rB, rK), kS2, kS1) == kS2) return go_special2(rK);
      st.step = 3;
      return take(rE, rI);
    }
    if (!free_edge(rE, rJ)) swap(rJ, rK);
    take(rE, rJ);
    enter_special(kS1);
  }

  // ---- endgame ----

  void endgame() {
    switch (st.stage) {
      case EndStage::Star1:
        out.label = st.end_case + "/Star1";
        if (star_step(st.star1)) st.stage = EndStage::Block;
        return;
      case EndStage::Block:
        return block();
      case EndStage::Mirror:
        return mirror();
      case EndStage::Star2Wait:
        return start_star2();
      case EndStage::Star2:
        out.label = st.end_case + "/Star2";
        if (star_step(st.star2)) {
          st.phase = Phase::Done;
          st.path.push_back("done");
        }
        return;
    }
  }

  void block() {
    const OwnGraph& g1 = s.clique(st.k1);
    auto heavy = patterns::heavy_p1_copies(g1, 8);
    std::optional<std::pair<int, int>> case1, case2;
    std::set<std::pair<int, int>> missing_all;
    for (const auto& c : heavy) {
      for (auto [a, b] : c.edges()) {
        if (g1.p1(a, b)) continue;
        missing_all.insert({std::min(a, b), std::max(a, b)});
        bool is_base = (a == c.a0 && b == c.a1) || (a == c.a1 && b == c.a0);
        if (is_base) {
          if (!case2) case2 = {c.a0, c.a1};
        } else if (!case1) {
          // C0 is the hub whose edge to D1 is missing
          int hub = (a == c.a0 || a == c.a1) ? a : b;
          int d1 = hub == a ? b : a;
          case1 = {hub, d1};
          st.c0 = hub;
          st.c1 = hub == c.a0 ? c.a1 : c.a0;
        }
      }
    }
    if (missing_all.size() > 1)
      emit(CheckEvent::Finding, st.end_case, false,
           "P1 has " + std::to_string(missing_all.size()) + " distinct threats in K1");
    if (case1 && choose(true, "Block.I", "Block.III") == "Block.I") {
      st.block_case = 'I';
      st.path.push_back("Block.I");
      st.stage = EndStage::Mirror;
      out.label = st.end_case + "/Block.I";
      return take_v(st.k1, case1->first, case1->second, "C0D1");
    }
    if (case2 && choose(true, "Block.II", "Block.III") == "Block.II") {
      st.block_case = '2';
      st.path.push_back("Block.II");
      st.c0 = case2->first;
      st.c1 = case2->second;
      st.stage = EndStage::Star2Wait;
      out.label = st.end_case + "/Block.II";
      return take_v(st.k1, case2->first, case2->second, "C0C1");
    }
    st.block_case = '3';
    st.c0 = st.c1 = -1;
    start_star2();
  }

  void mirror() {
    auto m = fresh_p1_move();
    if (m && m->copy == st.k1) {
      const OwnGraph& g1 = s.clique(st.k1);
      int a = m->v[0], b = m->v[1];
      for (auto [hub, d] : {std::pair{a, b}, std::pair{b, a}}) {
        if (hub != st.c0 && hub != st.c1) continue;
        if (d == st.c0 || d == st.c1) continue;
        if (g1.deg1(d) + g1.deg2(d) != 1) continue;
        int other_hub = hub == st.c0 ? st.c1 : st.c0;
        out.label = st.end_case + "/Mirror";
        return take_v(st.k1, other_hub, d, "CD");
      }
    }
    start_star2();
  }

  // ---- special end-cases ----

  void special_ledger(const std::string& label, int l) {
    int k = p1_k();
    int exact = patterns::exact_max_ep1(ledger_view());
    emit(CheckEvent::SpecialLedger, label, exact <= k - l,
         "k=" + std::to_string(k) + " l=" + std::to_string(l) + " exact=" + std::to_string(exact));
  }

  void finish_triangles(int centre_role, int limit) {
    int t = lemma::triangles_through(g, v(centre_role));
    emit(CheckEvent::Triangles, st.node, t <= limit,
         rname(centre_role) + " in " + std::to_string(t) + " P1 triangles, limit " + std::to_string(limit));
  }

  void special1() {
    out.label = kS1;
    if (st.step == 0) {
      panel(kS1);
      special_ledger(kS1, 3);
      st.step = 1;
      if (free_edge(rE, rK)) {
        take(rE, rK);
        st.phase = Phase::Done;
        st.path.push_back("done");
        return;
      }
      special_ledger(kS1, 4);
    } else if (st.pending_l >= 0 && !g.p1(v(rE), st.pending_l)) {
      int l = st.pending_l;
      st.pending_l = -1;
      take_v(st.k2, v(rE), l, "EL" + std::to_string(st.lstar.size()));
      finish_triangles(rE, 2);
      st.phase = Phase::Done;
      st.path.push_back("done");
      return;
    }
    int l = s.require_free_vertex(st.k2, bound_mask());
    st.lstar.push_back(l);
    st.pending_l = l;
    take_v(st.k2, v(rF), l, "FL" + std::to_string(st.lstar.size()));
  }

  void special2() {
    out.label = kS2;
    if (st.step == 0) {
      panel(kS2);
      special_ledger(kS2, 3);
      st.step = 1;
    } else if (st.pending_l >= 0 && !g.p1(v(rF), st.pending_l)) {
      int l = st.pending_l;
      st.pending_l = -1;
      take_v(st.k2, v(rF), l, "FL" + std::to_string(st.lstar.size()));
      finish_triangles(rF, 3);
      st.phase = Phase::Done;
      st.path.push_back("done");
      return;
    }
    int l = s.require_free_vertex(st.k2, bound_mask());
    st.lstar.push_back(l);
    st.pending_l = l;
    take_v(st.k2, v(rB), l, "BL" + std::to_string(st.lstar.size()));
  }
};

}  // namespace

StepResult strategy_open(const GameState& s, StrategyState& st) {
  if (s.kind() != BoardKind::TwoCliques) throw PreconditionError("graph strategy needs a two-cliques board");
  if (s.history().size() != 1 || s.history()[0].stop)
    throw PreconditionError("strategy_open expects exactly one P1 edge played");
  auto opts = st.options;
  st = StrategyState{};
  st.options = opts;
  st.k1 = s.history()[0].edge.copy;
  st.k2 = 3 - st.k1;
  st.path.push_back("root");
  StepResult out;
  Ctx c(s, st, out);
  c.fresh(rA);
  c.fresh(rB);
  c.take(rA, rB);
  return out;
}

StepResult strategy_respond(const GameState& s, StrategyState& st) {
  if (s.to_move() != Player::P2) throw TurnError("strategy_respond called when P2 is not to move");
  StepResult out;
  Ctx c(s, st, out);
  switch (st.phase) {
    case Phase::CaseTree: c.case_tree(); break;
    case Phase::Endgame: c.endgame(); break;
    case Phase::Special1: c.special1(); break;
    case Phase::Special2: c.special2(); break;
    case Phase::Done: break;
  }
  return out;
}

std::string strategy_fingerprint(const StrategyState& st) {
  std::ostringstream o;
  o << static_cast<int>(st.phase) << '|' << st.node << '|' << st.step << '|' << st.k1 << '|'
    << static_cast<int>(st.stage) << '|' << static_cast<int>(st.block_case) << '|' << st.ledger_l << '|'
    << (st.pending_f >= 0) << (st.pending_l >= 0) << '|' << st.end_case << '|' << st.base_r0 << st.base_r1 << '|'
    << st.virtual_grants << '|';
  for (auto [a, b] : st.conceded) o << kRoleNames[a] << kRoleNames[b];
  o << '/';
  for (auto [a, b] : st.granted) o << kRoleNames[a] << kRoleNames[b];
  return o.str();
}

uint32_t strategy_vertex_color(const StrategyState& st, const Vertex& v) {
  uint32_t c = 0;
  if (v.copy == st.k2) {
    for (int r = 0; r < kRoles; ++r)
      if (st.role[r] == v.v) c |= static_cast<uint32_t>(r + 1);
    if (st.witness) {
      if (st.witness->a0 == v.v) c |= 1u << 4;
      if (st.witness->a1 == v.v) c |= 1u << 5;
      if (st.witness->b1 == v.v || st.witness->b2 == v.v) c |= 1u << 6;
    }
    auto in = [&](const std::vector<int>& xs) { return std::find(xs.begin(), xs.end(), v.v) != xs.end(); };
    if (in(st.star1)) c |= 1u << 7;
    if (in(st.star2)) c |= 1u << 8;
    if (st.pending_f == v.v) c |= 1u << 9;
    if (in(st.lstar)) c |= 1u << 10;
    if (st.pending_l == v.v) c |= 1u << 11;
  } else {
    if (st.c0 == v.v) c |= 1u << 12;
    if (st.c1 == v.v) c |= 1u << 13;
  }
  return c;
}

std::string role_edge_name(const StrategyState& st, const Edge& e) {
  if (e.arity != 2 || e.copy != st.k2) return to_string(e);
  auto nm = [&](int x) -> std::string {
    for (int r = 0; r < kRoles; ++r)
      if (st.role[r] == x) return std::string(1, kRoleNames[r]);
    return std::to_string(x);
  };
  return nm(e.v[0]) + nm(e.v[1]);
}

}  // namespace ramsey
