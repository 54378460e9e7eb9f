#include "ramsey/canon.hpp"

#include <algorithm>
#include <map>

namespace ramsey {

namespace {

struct Search {
  const CanonInput& in;
  int m;
  std::vector<std::vector<std::pair<int, int>>> inc;  // vertex -> (edge index, position)
  bool want_aut;
  std::string best;
  std::vector<int> best_lab;
  std::vector<std::vector<int>> leaves_equal;
  long leaves = 0;

  explicit Search(const CanonInput& input, bool aut) : in(input), m(static_cast<int>(input.colors.size())), want_aut(aut) {
    inc.resize(m);
    for (int e = 0; e < static_cast<int>(in.edges.size()); ++e)
      for (int p = 0; p < static_cast<int>(in.edges[e].v.size()); ++p) inc[in.edges[e].v[p]].emplace_back(e, p);
  }

  // col[i] = number of vertices in strictly smaller cells.
  static void ranks_from(const std::vector<std::vector<uint64_t>>& sig, std::vector<int>& col) {
    int m = static_cast<int>(sig.size());
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    for (int r = 0; r < m; ++r) {
      int i = idx[r];
      col[i] = (r > 0 && sig[idx[r - 1]] == sig[i]) ? col[idx[r - 1]] : r;
    }
  }

  static int cells(const std::vector<int>& col) {
    std::vector<char> seen(col.size(), 0);
    int c = 0;
    for (int x : col)
      if (!seen[x]) { seen[x] = 1; ++c; }
    return c;
  }

  void refine(std::vector<int>& col) const {
    int before = cells(col);
    std::vector<std::vector<uint64_t>> sig(m);
    while (true) {
      for (int i = 0; i < m; ++i) {
        auto& s = sig[i];
        s.clear();
        s.push_back(static_cast<uint64_t>(col[i]));
        size_t head = s.size();
        for (auto [e, p] : inc[i]) {
          const auto& ed = in.edges[e];
          uint64_t others[3];
          int k = 0;
          for (int q = 0; q < static_cast<int>(ed.v.size()); ++q)
            if (q != p) others[k++] = static_cast<uint64_t>(col[ed.v[q]]);
          std::sort(others, others + k);
          uint64_t tok = ed.color;
          for (int q = 0; q < k; ++q) tok = (tok << 16) | others[q];
          s.push_back(tok);
        }
        std::sort(s.begin() + static_cast<long>(head), s.end());
      }
      ranks_from(sig, col);
      int after = cells(col);
      if (after == before) return;
      before = after;
    }
  }

  std::string encode(const std::vector<int>& col) const {
    std::string code = in.header;
    code.push_back(static_cast<char>(m));
    std::vector<uint32_t> cpos(m);
    for (int i = 0; i < m; ++i) cpos[col[i]] = in.colors[i];
    for (auto c : cpos) code.append(reinterpret_cast<const char*>(&c), sizeof c);
    std::vector<std::string> es;
    es.reserve(in.edges.size());
    for (const auto& ed : in.edges) {
      std::string t;
      t.push_back(static_cast<char>(ed.color));
      std::vector<int> p;
      for (int v : ed.v) p.push_back(col[v]);
      std::sort(p.begin(), p.end());
      for (int x : p) t.push_back(static_cast<char>(x));
      es.push_back(std::move(t));
    }
    std::sort(es.begin(), es.end());
    for (auto& t : es) {
      code.push_back(static_cast<char>(t.size()));
      code += t;
    }
    return code;
  }

  void dfs(std::vector<int> col) {
    refine(col);
    // first non-singleton cell
    std::vector<int> size(m, 0);
    for (int x : col) ++size[x];
    int target = -1;
    for (int c = 0; c < m; ++c)
      if (size[c] > 1) { target = c; break; }
    if (target < 0) {
      ++leaves;
      if (leaves > 5'000'000) throw InternalInvariantViolation("canonical search exceeded leaf limit");
      std::string code = encode(col);
      if (best.empty() || code < best) {
        best = std::move(code);
        best_lab = col;
        leaves_equal.clear();
      } else if (want_aut && code == best) {
        leaves_equal.push_back(col);
      }
      return;
    }
    for (int v = 0; v < m; ++v) {
      if (col[v] != target) continue;
      std::vector<int> c2 = col;
      for (int u = 0; u < m; ++u)
        if (u != v && col[u] == target) c2[u] = target + 1;
      dfs(std::move(c2));
    }
  }
};

}  // namespace

CanonResult canonical_form(const CanonInput& in, bool want_automorphisms) {
  Search s(in, want_automorphisms);
  CanonResult r;
  if (s.m == 0) {
    r.key = in.header;
    r.key.push_back('\0');
    return r;
  }
  std::vector<std::vector<uint64_t>> sig(s.m);
  for (int i = 0; i < s.m; ++i) sig[i] = {in.colors[i]};
  std::vector<int> col(s.m);
  Search::ranks_from(sig, col);
  s.dfs(col);
  r.key = s.best;
  r.labeling = s.best_lab;
  r.leaves = s.leaves;
  if (want_automorphisms) {
    std::vector<int> inv0(s.m);
    for (int i = 0; i < s.m; ++i) inv0[s.best_lab[i]] = i;
    std::vector<int> id(s.m);
    for (int i = 0; i < s.m; ++i) id[i] = i;
    r.automorphisms.push_back(id);
    for (const auto& lab : s.leaves_equal) {
      std::vector<int> a(s.m);
      for (int i = 0; i < s.m; ++i) a[i] = inv0[lab[i]];
      r.automorphisms.push_back(std::move(a));
    }
  }
  return r;
}

std::vector<Vertex> touched_vertices(const GameState& s) {
  std::vector<Vertex> out;
  if (s.kind() == BoardKind::TwoCliques) {
    for (int c = 1; c <= 2; ++c)
      for (int v = 0; v < s.n(); ++v)
        if (!s.is_free_vertex(Vertex{c, v})) out.push_back(Vertex{c, v});
  } else {
    for (int v = 0; v < s.n(); ++v)
      if (!s.is_free_vertex(Vertex{0, v})) out.push_back(Vertex{0, v});
  }
  return out;
}

CanonInput canon_input(const GameState& s, const std::vector<Vertex>& touched,
                       const std::vector<uint32_t>& role_colors, std::string_view tag) {
  CanonInput in;
  in.header.push_back(static_cast<char>(s.kind()));
  in.header.push_back(static_cast<char>(s.n()));
  in.header.push_back(static_cast<char>(s.to_move()));
  in.header.push_back(static_cast<char>(s.p1_stopped()));
  in.header.append(tag);
  in.header.push_back('|');
  int m = static_cast<int>(touched.size());
  std::map<Vertex, int> index;
  for (int i = 0; i < m; ++i) index[touched[i]] = i;
  if (static_cast<int>(index.size()) != m) throw PreconditionError("touched vertices must be distinct");
  for (int i = 0; i < m; ++i) {
    uint32_t c = static_cast<uint32_t>(touched[i].copy) << 24;
    if (!role_colors.empty()) c |= role_colors[i] & 0xffffffu;
    in.colors.push_back(c);
  }
  if (s.kind() == BoardKind::TwoCliques) {
    for (int c = 1; c <= 2; ++c) {
      const auto& g = s.clique(c);
      for (auto o : {Owner::P1, Owner::P2})
        for (auto [a, b] : g.edges(o)) {
          auto ia = index.find(Vertex{c, a}), ib = index.find(Vertex{c, b});
          if (ia == index.end() || ib == index.end()) throw PreconditionError("touched set misses an endpoint of a claimed edge");
          in.edges.push_back({{ia->second, ib->second}, static_cast<uint8_t>(o)});
        }
    }
  } else {
    for (auto o : {Owner::P1, Owner::P2})
      for (const auto& e : s.edges_owned(o)) {
        CanonInput::E ed;
        ed.color = static_cast<uint8_t>(o);
        for (int i = 0; i < 4; ++i) {
          auto it = index.find(Vertex{0, e.v[i]});
          if (it == index.end()) throw PreconditionError("touched set misses a vertex of a claimed hyperedge");
          ed.v.push_back(it->second);
        }
        in.edges.push_back(std::move(ed));
      }
  }
  return in;
}

CanonicalKey canonicalize(const GameState& s, const std::vector<Vertex>& touched) {
  return canonical_form(canon_input(s, touched), false).key;
}

}  // namespace ramsey
