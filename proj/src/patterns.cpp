#include "ramsey/patterns.hpp"

#include <algorithm>
#include <tuple>
#include "json.hpp"

namespace ramsey::patterns {

namespace {

std::vector<int> bits(uint32_t m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

template <class F>
void for_each_4subset(const std::vector<int>& xs, F&& f) {
  int k = static_cast<int>(xs.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int l = j + 1; l < k; ++l)
        for (int m = l + 1; m < k; ++m) f(std::array<int, 4>{xs[i], xs[j], xs[l], xs[m]});
}

GCopy make_copy(int copy, int a0, int a1, std::array<int, 4> p) {
  GCopy c;
  c.copy = copy;
  c.a0 = std::min(a0, a1);
  c.a1 = std::max(a0, a1);
  std::sort(p.begin(), p.end());
  c.pendants = p;
  return c;
}

}  // namespace

std::vector<std::pair<int, int>> GCopy::edges() const {
  std::vector<std::pair<int, int>> out{{a0, a1}};
  for (int b : pendants) {
    out.emplace_back(a0, b);
    out.emplace_back(a1, b);
  }
  return out;
}

std::vector<Edge> GCopy::board_edges() const {
  std::vector<Edge> out;
  for (auto [a, b] : edges()) out.push_back(Edge::graph(copy, a, b));
  return out;
}

std::vector<Edge> GPrimeCopy::hyperedges() const {
  std::vector<Edge> out;
  for (auto [a, b] : inner.edges()) out.push_back(Edge::hyper(x, y, a, b));
  return out;
}

std::vector<GCopy> find_g_copies(const OwnGraph& g, Owner who) {
  std::vector<GCopy> out;
  for (int a0 = 0; a0 < g.n; ++a0) {
    uint32_t hi = g.nb(who, a0) & ~((2u << a0) - 1);
    for (int a1 : bits(hi)) {
      uint32_t common = g.nb(who, a0) & g.nb(who, a1);
      if (std::popcount(common) < 4) continue;
      for_each_4subset(bits(common), [&](std::array<int, 4> p) { out.push_back(make_copy(0, a0, a1, p)); });
    }
  }
  return out;
}

int e_count(const OwnGraph& g, const GCopy& c, Owner who) {
  Owner opp = who == Owner::P1 ? Owner::P2 : Owner::P1;
  int cnt = 0;
  for (auto [a, b] : c.edges()) {
    Owner o = g.at(a, b);
    if (o == opp) return 0;
    if (o == who) ++cnt;
  }
  return cnt;
}

EpBounds max_ep1_over_bases(const OwnGraph& g) {
  EpBounds r;
  for (int x0 = 0; x0 < g.n; ++x0) {
    if (!(g.verts >> x0 & 1u)) continue;
    for (int x1 = x0 + 1; x1 < g.n; ++x1) {
      if (!(g.verts >> x1 & 1u) || g.p2(x0, x1)) continue;
      uint32_t m0 = g.adj1[x0] & ~(1u << x1) & ~g.adj2[x1];
      uint32_t m1 = g.adj1[x1] & ~(1u << x0) & ~g.adj2[x0];
      int b = std::popcount(m0) + std::popcount(m1) + (g.p1(x0, x1) ? 1 : 0);
      r.per_base.push_back({x0, x1, b});
      r.global_max = std::max(r.global_max, b);
    }
  }
  return r;
}

int exact_max_ep1_with_base(const OwnGraph& g, int x0, int x1) {
  if (g.p2(x0, x1)) return 0;
  std::vector<int> vals;
  for (int y = 0; y < g.n; ++y) {
    if (y == x0 || y == x1 || !(g.verts >> y & 1u)) continue;
    if (g.p2(x0, y) || g.p2(x1, y)) continue;
    vals.push_back((g.p1(x0, y) ? 1 : 0) + (g.p1(x1, y) ? 1 : 0));
  }
  if (vals.size() < 4) return 0;
  std::partial_sort(vals.begin(), vals.begin() + 4, vals.end(), std::greater<int>());
  return vals[0] + vals[1] + vals[2] + vals[3] + (g.p1(x0, x1) ? 1 : 0);
}

int exact_max_ep1(const OwnGraph& g) {
  int best = 0;
  for (int x0 = 0; x0 < g.n; ++x0) {
    if (!(g.verts >> x0 & 1u)) continue;
    for (int x1 = x0 + 1; x1 < g.n; ++x1)
      if (g.verts >> x1 & 1u) best = std::max(best, exact_max_ep1_with_base(g, x0, x1));
  }
  return best;
}

std::vector<GCopy> heavy_p1_copies(const OwnGraph& g, int min_p1) {
  std::vector<GCopy> out;
  for (int x0 = 0; x0 < g.n; ++x0) {
    if (!(g.verts >> x0 & 1u)) continue;
    for (int x1 = x0 + 1; x1 < g.n; ++x1) {
      if (!(g.verts >> x1 & 1u) || g.p2(x0, x1)) continue;
      if (exact_max_ep1_with_base(g, x0, x1) < min_p1) continue;
      std::vector<int> ys;
      for (int y = 0; y < g.n; ++y) {
        if (y == x0 || y == x1 || !(g.verts >> y & 1u)) continue;
        if (!g.p2(x0, y) && !g.p2(x1, y)) ys.push_back(y);
      }
      int base = g.p1(x0, x1) ? 1 : 0;
      for_each_4subset(ys, [&](std::array<int, 4> p) {
        int s = base;
        for (int y : p) s += (g.p1(x0, y) ? 1 : 0) + (g.p1(x1, y) ? 1 : 0);
        if (s >= min_p1) out.push_back(make_copy(0, x0, x1, p));
      });
    }
  }
  return out;
}

std::vector<GCopy> copies_through(const OwnGraph& g, Owner who, int a, int b) {
  std::vector<GCopy> out;
  if (g.at(a, b) != who) return out;
  // as the base
  uint32_t common = g.nb(who, a) & g.nb(who, b);
  if (std::popcount(common) >= 4)
    for_each_4subset(bits(common), [&](std::array<int, 4> p) { out.push_back(make_copy(0, a, b, p)); });
  // as a pendant edge: (hub, leaf) with the other hub c
  for (auto [hub, leaf] : {std::pair{a, b}, std::pair{b, a}}) {
    uint32_t cs = g.nb(who, hub) & g.nb(who, leaf);
    for (int c : bits(cs)) {
      uint32_t rest = g.nb(who, hub) & g.nb(who, c) & ~(1u << leaf);
      if (std::popcount(rest) < 3) continue;
      auto rs = bits(rest);
      int k = static_cast<int>(rs.size());
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          for (int l = j + 1; l < k; ++l) out.push_back(make_copy(0, hub, c, {leaf, rs[i], rs[j], rs[l]}));
    }
  }
  std::sort(out.begin(), out.end(), [](const GCopy& x, const GCopy& y) {
    return std::tie(x.a0, x.a1, x.pendants) < std::tie(y.a0, y.a1, y.pendants);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool completes_copy(const OwnGraph& g, Owner who, int a, int b) {
  if (g.at(a, b) != who) return false;
  if (std::popcount(g.nb(who, a) & g.nb(who, b)) >= 4) return true;
  for (auto [hub, leaf] : {std::pair{a, b}, std::pair{b, a}}) {
    uint32_t cs = g.nb(who, hub) & g.nb(who, leaf);
    for (int c : bits(cs))
      if (std::popcount(g.nb(who, hub) & g.nb(who, c) & ~(1u << leaf)) >= 3) return true;
  }
  return false;
}

std::vector<std::pair<std::pair<int, int>, GCopy>> threats(const OwnGraph& g, Owner who) {
  std::vector<std::pair<std::pair<int, int>, GCopy>> out;
  for (int a = 0; a < g.n; ++a) {
    if (!(g.verts >> a & 1u)) continue;
    for (int b = a + 1; b < g.n; ++b) {
      if (!(g.verts >> b & 1u) || !g.free_edge(a, b)) continue;
      OwnGraph h = g;
      h.set(a, b, who);
      for (auto& c : copies_through(h, who, a, b)) out.push_back({{a, b}, c});
    }
  }
  return out;
}

std::vector<GCopy> find_g_copies(const GameState& s, Player who, int within_copy) {
  auto cs = find_g_copies(s.clique(within_copy), owner_of(who));
  for (auto& c : cs) c.copy = within_copy;
  return cs;
}

namespace {

int e_board(const GameState& s, const GCopy& c, Owner who) {
  if (s.kind() != BoardKind::TwoCliques) throw PreconditionError("GCopy on a graph board expected");
  return e_count(s.clique(c.copy), c, who);
}

}  // namespace

int e_p1(const GameState& s, const GCopy& c) { return e_board(s, c, Owner::P1); }
int e_p2(const GameState& s, const GCopy& c) { return e_board(s, c, Owner::P2); }

EpBounds max_ep1_over_bases(const GameState& s, int within_copy) { return max_ep1_over_bases(s.clique(within_copy)); }

std::vector<Threat> threats(const GameState& s, Player who) {
  std::vector<Threat> out;
  Owner o = owner_of(who);
  if (s.kind() == BoardKind::TwoCliques) {
    for (int c = 1; c <= 2; ++c)
      for (auto& [ab, copy] : threats(s.clique(c), o)) {
        GCopy cc = copy;
        cc.copy = c;
        out.push_back({Edge::graph(c, ab.first, ab.second), cc, -1, -1});
      }
    return out;
  }
  for (const auto& e : s.unclaimed_edges()) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        int x = e.v[i], y = e.v[j];
        int rest[2], k = 0;
        for (int q = 0; q < 4; ++q)
          if (q != i && q != j) rest[k++] = e.v[q];
        OwnGraph view = s.xy_view(x, y);
        view.set(rest[0], rest[1], o);
        for (auto& c : copies_through(view, o, rest[0], rest[1])) out.push_back({e, c, x, y});
      }
  }
  return out;
}

std::vector<GPrimeCopy> find_gprime_copies(const GameState& s, Player who) {
  if (s.kind() != BoardKind::Hyper4) throw PreconditionError("G' copies live on the hypergraph board");
  std::vector<GPrimeCopy> out;
  for (int x = 0; x < s.n(); ++x)
    for (int y = x + 1; y < s.n(); ++y)
      for (auto& c : find_g_copies(s.xy_view(x, y), owner_of(who))) out.push_back({x, y, c});
  return out;
}

bool owns_target(const GameState& s, Player who) {
  if (s.kind() == BoardKind::TwoCliques)
    return !find_g_copies(s, who, 1).empty() || !find_g_copies(s, who, 2).empty();
  return !find_gprime_copies(s, who).empty();
}

bool move_completed_target(const GameState& s, Player who, const Edge& e) {
  Owner o = owner_of(who);
  if (s.kind() == BoardKind::TwoCliques) return completes_copy(s.clique(e.copy), o, e.v[0], e.v[1]);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      int rest[2], k = 0;
      for (int q = 0; q < 4; ++q)
        if (q != i && q != j) rest[k++] = e.v[q];
      if (completes_copy(s.xy_view(e.v[i], e.v[j]), o, rest[0], rest[1])) return true;
    }
  return false;
}

std::string gcopy_json(const GCopy& c, bool graph) {
  auto vs = [&](int v) { return graph ? to_string(Vertex{c.copy, v}) : std::to_string(v); };
  nlohmann::json j;
  j["base"] = {vs(c.a0), vs(c.a1)};
  j["pendants"] = nlohmann::json::array();
  for (int p : c.pendants) j["pendants"].push_back(vs(p));
  return j.dump();
}

}  // namespace ramsey::patterns
