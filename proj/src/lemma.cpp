#include "ramsey/lemma.hpp"

#include <algorithm>
#include <functional>

#include "ramsey/patterns.hpp"

namespace ramsey::lemma {

namespace {

int lowbit(uint32_t m) { return std::countr_zero(m); }

}  // namespace

std::optional<std::string> special_blocker(const OwnGraph& g, int x) {
  uint32_t nx = g.adj1[x];
  for (uint32_t m = nx; m; m &= m - 1) {
    int t1 = lowbit(m);
    uint32_t common = g.adj1[t1] & nx;
    if (common)
      return "P1 triangle " + std::to_string(x) + "," + std::to_string(t1) + "," + std::to_string(lowbit(common));
  }
  for (int c2 = 0; c2 < g.n; ++c2) {
    if (c2 == x || g.p2(x, c2)) continue;
    uint32_t common = g.adj1[c2] & nx;
    if (std::popcount(common) >= 2) {
      int c1 = lowbit(common);
      int c3 = lowbit(common & (common - 1));
      return "P1 4-cycle " + std::to_string(x) + "," + std::to_string(c1) + "," + std::to_string(c2) + "," +
             std::to_string(c3);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> find_book(const OwnGraph& g, int a0, int a1) {
  uint32_t common = g.adj2[a0] & g.adj2[a1] & ~((1u << a0) | (1u << a1));
  if (std::popcount(common) < 2) return std::nullopt;
  int b1 = lowbit(common);
  int b2 = lowbit(common & (common - 1));
  return std::pair{b1, b2};
}

PotentialBaseResult is_potential_base(const OwnGraph& g, int a0, int a1, std::optional<int> special) {
  if (!g.p2(a0, a1)) throw PreconditionError("potential base must be a P2 edge");
  PotentialBaseResult r;
  auto book = find_book(g, a0, a1);
  if (!book) {
    r.refutation = "no P2 book on " + std::to_string(a0) + "-" + std::to_string(a1);
    return r;
  }
  std::vector<int> order;
  if (special) {
    if (*special != a0 && *special != a1) throw PreconditionError("special vertex must be a base endpoint");
    order.push_back(*special);
  } else {
    order = {a0, a1};
  }
  std::string why;
  for (int x : order) {
    auto blk = special_blocker(g, x);
    if (!blk) {
      r.witness = PotentialBaseWitness{x, x == a0 ? a1 : a0, book->first, book->second};
      return r;
    }
    if (!why.empty()) why += "; ";
    why += *blk;
  }
  r.refutation = why;
  return r;
}

PotentialBaseResult is_potential_base(const GameState& s, const Edge& base, std::optional<int> special) {
  if (s.kind() != BoardKind::TwoCliques || base.arity != 2) throw PreconditionError("graph base expected");
  return is_potential_base(s.clique(base.copy), base.v[0], base.v[1], special);
}

EdgeClass classify_edge(const OwnGraph& k2, int a0, int a1, int x1, int x2) {
  if (x1 == a0 || x1 == a1 || x2 == a0 || x2 == a1) return EdgeClass::Bad;
  bool s0 = k2.p2(a0, x1) || k2.p2(a0, x2);
  bool s1 = k2.p2(a1, x1) || k2.p2(a1, x2);
  return s0 && s1 ? EdgeClass::Good : EdgeClass::Bad;
}

EdgeClass classify_edge(const GameState& s, const Edge& base, const Edge& p1_edge) {
  if (s.owner(p1_edge) != Owner::P1) throw PreconditionError("classify_edge expects a P1 edge");
  if (s.owner(base) != Owner::P2) throw PreconditionError("classify_edge expects a P2 base");
  if (p1_edge.copy != base.copy) return EdgeClass::Good;
  return classify_edge(s.clique(base.copy), base.v[0], base.v[1], p1_edge.v[0], p1_edge.v[1]);
}

int count_bad_edges(const OwnGraph& k2, int a0, int a1) {
  int bad = 0;
  for (auto [x1, x2] : k2.edges(Owner::P1))
    if (classify_edge(k2, a0, a1, x1, x2) == EdgeClass::Bad) ++bad;
  return bad;
}

std::optional<std::pair<int, int>> has_two_delta(const OwnGraph& g, int a0, int a1) {
  uint32_t common = g.adj1[a0] & g.adj1[a1] & ~((1u << a0) | (1u << a1));
  for (uint32_t m = common; m; m &= m - 1) {
    int x1 = lowbit(m);
    uint32_t partner = g.adj1[x1] & common & ~((2u << x1) - 1);
    if (partner) return std::pair{x1, lowbit(partner)};
  }
  return std::nullopt;
}

Lemma3Result lemma3_check(const OwnGraph& k2, int a0, int a1) {
  Lemma3Result r;
  r.bad_edges = count_bad_edges(k2, a0, a1);
  if (r.bad_edges > 5) {
    r.reason = "count: " + std::to_string(r.bad_edges) + " bad edges";
    return r;
  }
  if (auto td = has_two_delta(k2, a0, a1)) {
    r.reason = "2-delta on " + std::to_string(td->first) + "," + std::to_string(td->second);
    return r;
  }
  if (!find_book(k2, a0, a1)) {
    r.reason = "no book";
    return r;
  }
  r.holds = true;
  return r;
}

Lemma3Result lemma3_check(const GameState& s, const Edge& base) {
  if (s.owner(base) != Owner::P2) throw PreconditionError("lemma3_check expects a P2 base");
  return lemma3_check(s.clique(base.copy), base.v[0], base.v[1]);
}

Lemma2Result lemma2_preconditions(const OwnGraph& k1, const OwnGraph& k2, const PotentialBaseWitness& w) {
  Lemma2Result r;
  r.k1_edges = k1.count(Owner::P1);
  if (r.k1_edges > 6) r.failures.push_back("(a) P1 has " + std::to_string(r.k1_edges) + " edges in K1");
  r.count_bound = patterns::max_ep1_over_bases(k2).global_max;
  r.exact_max = r.count_bound <= 5 ? r.count_bound : patterns::exact_max_ep1(k2);
  if (r.exact_max > 5) r.failures.push_back("(b) some G in K2 has e_P1 = " + std::to_string(r.exact_max));
  if (!k2.p2(w.a0, w.a1)) {
    r.failures.push_back("(c) base not owned by P2");
  } else {
    auto pb = is_potential_base(k2, w.a0, w.a1, w.a0);
    if (!pb.witness) r.failures.push_back("(c) " + pb.refutation);
  }
  r.holds = r.failures.empty();
  return r;
}

Lemma2Result lemma2_preconditions(const GameState& s, int k1_copy, const PotentialBaseWitness& w) {
  return lemma2_preconditions(s.clique(k1_copy), s.clique(3 - k1_copy), w);
}

int triangles_through(const OwnGraph& g, int x) {
  int t = 0;
  uint32_t nx = g.adj1[x];
  for (uint32_t m = nx; m; m &= m - 1) t += std::popcount(g.adj1[lowbit(m)] & nx);
  return t / 2;
}

StarBound star_triangle_bound(const OwnGraph& before, const OwnGraph& after, int x) {
  StarBound r;
  for (int v = 0; v < before.n; ++v)
    if ((before.adj1[v] & ~after.adj1[v]) != 0) {
      r.error = "P1 edge set shrank";
      return r;
    }
  for (int a = 0; a < after.n; ++a) {
    uint32_t fresh = after.adj1[a] & ~before.adj1[a] & ~((2u << a) - 1);
    for (uint32_t m = fresh; m; m &= m - 1) {
      int b = lowbit(m);
      bool star = (a == x && before.deg1(b) == 0) || (b == x && before.deg1(a) == 0);
      if (!star) ++r.r;
    }
  }
  r.pre_triangles = triangles_through(before, x);
  std::vector<int> excess;
  for (int c2 = 0; c2 < before.n; ++c2) {
    if (c2 == x || before.p2(x, c2) || before.p1(x, c2)) continue;
    int common = std::popcount(before.adj1[c2] & before.adj1[x]);
    if (common >= 2) excess.push_back(common - 1);
  }
  std::sort(excess.begin(), excess.end(), std::greater<int>());
  for (int i = 0; i < std::min<int>(r.r, static_cast<int>(excess.size())); ++i) r.chord_bonus += excess[i];
  r.bound = r.pre_triangles + r.r + r.chord_bonus;
  r.triangles = triangles_through(after, x);
  r.ok = r.triangles <= r.bound;
  return r;
}

bool ledger_holds(const OwnGraph& k2, int p1_total, int l) {
  return patterns::max_ep1_over_bases(k2).global_max <= (p1_total - 1) - l;
}

}  // namespace ramsey::lemma
