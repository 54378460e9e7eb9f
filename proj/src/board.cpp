#include "ramsey/board.hpp"

#include <algorithm>
#include <charconv>

namespace ramsey {

const char* player_name(Player p) { return p == Player::P1 ? "P1" : "P2"; }

const char* owner_name(Owner o) {
  switch (o) {
    case Owner::P1: return "P1";
    case Owner::P2: return "P2";
    default: return "none";
  }
}

std::string to_string(const Vertex& v) {
  if (v.copy == 0) return std::to_string(v.v);
  return std::to_string(v.copy) + ":" + std::to_string(v.v);
}

Edge Edge::graph(int copy, int a, int b) {
  if (copy != 1 && copy != 2) throw IllegalMove("graph edge copy must be 1 or 2");
  if (a == b) throw IllegalMove("edge endpoints must differ");
  if (a < 0 || b < 0 || a >= kMaxGraphN || b >= kMaxGraphN) throw IllegalMove("vertex out of range");
  Edge e;
  e.copy = static_cast<uint8_t>(copy);
  e.arity = 2;
  e.v[0] = static_cast<uint8_t>(std::min(a, b));
  e.v[1] = static_cast<uint8_t>(std::max(a, b));
  return e;
}

Edge Edge::hyper(int a, int b, int c, int d) {
  std::array<int, 4> s{a, b, c, d};
  std::sort(s.begin(), s.end());
  for (int i = 0; i < 4; ++i) {
    if (s[i] < 0 || s[i] >= kMaxHyperN) throw IllegalMove("vertex out of range");
    if (i && s[i] == s[i - 1]) throw IllegalMove("hyperedge vertices must be distinct");
  }
  Edge e;
  e.copy = 0;
  e.arity = 4;
  for (int i = 0; i < 4; ++i) e.v[i] = static_cast<uint8_t>(s[i]);
  return e;
}

bool Edge::contains(int x) const {
  for (int i = 0; i < arity; ++i)
    if (v[i] == x) return true;
  return false;
}

int Edge::other(int x) const { return v[0] == x ? v[1] : v[0]; }

std::string to_string(const Edge& e) {
  std::string s;
  if (e.arity == 2) {
    s = "g:" + std::to_string(e.copy) + ":" + std::to_string(e.v[0]) + "-" + std::to_string(e.v[1]);
  } else {
    s = "h:";
    for (int i = 0; i < 4; ++i) {
      if (i) s += '-';
      s += std::to_string(e.v[i]);
    }
  }
  return s;
}

namespace {

std::vector<int> parse_ints(std::string_view body, char sep, std::string_view whole) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= body.size()) {
    size_t end = body.find(sep, pos);
    if (end == std::string_view::npos) end = body.size();
    auto part = body.substr(pos, end - pos);
    int val = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), val);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
      throw ParseError("bad edge text: " + std::string(whole));
    out.push_back(val);
    pos = end + 1;
  }
  return out;
}

}  // namespace

Edge parse_edge(std::string_view text) {
  if (text.size() > 2 && text.substr(0, 2) == "g:") {
    auto rest = text.substr(2);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError("bad edge text: " + std::string(text));
    auto copy = parse_ints(rest.substr(0, colon), ':', text);
    auto ends = parse_ints(rest.substr(colon + 1), '-', text);
    if (copy.size() != 1 || ends.size() != 2) throw ParseError("bad edge text: " + std::string(text));
    if (ends[0] >= ends[1]) throw ParseError("graph edge must be written a<b: " + std::string(text));
    try {
      return Edge::graph(copy[0], ends[0], ends[1]);
    } catch (const IllegalMove& e) {
      throw ParseError(e.what());
    }
  }
  if (text.size() > 2 && text.substr(0, 2) == "h:") {
    auto vs = parse_ints(text.substr(2), '-', text);
    if (vs.size() != 4) throw ParseError("bad edge text: " + std::string(text));
    for (int i = 1; i < 4; ++i)
      if (vs[i - 1] >= vs[i]) throw ParseError("hyperedge must be sorted ascending: " + std::string(text));
    try {
      return Edge::hyper(vs[0], vs[1], vs[2], vs[3]);
    } catch (const IllegalMove& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("bad edge text: " + std::string(text));
}

OwnGraph OwnGraph::empty(int n) {
  OwnGraph g;
  g.n = n;
  g.verts = n >= 32 ? 0xffffffffu : ((1u << n) - 1);
  return g;
}

void OwnGraph::set(int a, int b, Owner o) {
  uint32_t ma = 1u << a, mb = 1u << b;
  adj1[a] &= ~mb; adj1[b] &= ~ma;
  adj2[a] &= ~mb; adj2[b] &= ~ma;
  if (o == Owner::P1) { adj1[a] |= mb; adj1[b] |= ma; }
  if (o == Owner::P2) { adj2[a] |= mb; adj2[b] |= ma; }
}

int OwnGraph::count(Owner o) const {
  int c = 0;
  for (int v = 0; v < n; ++v) c += std::popcount(nb(o, v));
  return c / 2;
}

std::vector<std::pair<int, int>> OwnGraph::edges(Owner o) const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a) {
    uint32_t m = nb(o, a) & ~((2u << a) - 1);
    while (m) {
      int b = std::countr_zero(m);
      m &= m - 1;
      out.emplace_back(a, b);
    }
  }
  return out;
}

long long binom(int n, int k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int hyper_rank(const Edge& e) {
  return static_cast<int>(binom(e.v[0], 1) + binom(e.v[1], 2) + binom(e.v[2], 3) + binom(e.v[3], 4));
}

Edge hyper_unrank(int rank) {
  std::array<int, 4> v{};
  long long r = rank;
  for (int k = 4; k >= 1; --k) {
    int x = k - 1;
    while (binom(x + 1, k) <= r) ++x;
    v[k - 1] = x;
    r -= binom(x, k);
  }
  return Edge::hyper(v[0], v[1], v[2], v[3]);
}

GameState GameState::create(BoardKind kind, int n) {
  GameState s;
  s.kind_ = kind;
  s.n_ = n;
  if (kind == BoardKind::TwoCliques) {
    if (n < 6) throw ConfigError("two-cliques board needs n >= 6");
    if (n > kMaxGraphN) throw ConfigError("two-cliques board supports n <= 32");
    s.cliques_[0] = OwnGraph::empty(n);
    s.cliques_[1] = OwnGraph::empty(n);
  } else {
    if (n < 8) throw ConfigError("hypergraph board needs n >= 8");
    if (n > kMaxHyperN) throw ConfigError("hypergraph board supports n <= 24");
    s.hyper_.assign(static_cast<size_t>(binom(n, 4)), 0);
  }
  return s;
}

bool GameState::on_board(const Edge& e) const {
  if (kind_ == BoardKind::TwoCliques) {
    if (e.arity != 2 || (e.copy != 1 && e.copy != 2)) return false;
    return e.v[1] < n_ && e.v[0] != e.v[1];
  }
  return e.arity == 4 && e.v[3] < n_;
}

Owner GameState::owner(const Edge& e) const {
  if (!on_board(e)) throw IllegalMove("edge not on board: " + to_string(e));
  if (kind_ == BoardKind::TwoCliques) return cliques_[e.copy - 1].at(e.v[0], e.v[1]);
  return static_cast<Owner>(hyper_[hyper_rank(e)]);
}

void GameState::claim(const Edge& e, Owner o) {
  if (kind_ == BoardKind::TwoCliques) {
    cliques_[e.copy - 1].set(e.v[0], e.v[1], o);
  } else {
    hyper_[hyper_rank(e)] = static_cast<uint8_t>(o);
    int p = o == Owner::P1 ? 0 : 1;
    for (int i = 0; i < 4; ++i) ++hdeg_[p][e.v[i]];
  }
}

GameState GameState::apply_move(Player p, const Edge& e) const {
  if (p != to_move_) throw TurnError(std::string("not ") + player_name(p) + "'s turn");
  if (p == Player::P1 && p1_stopped_) throw TurnError("P1 has stopped playing");
  if (!on_board(e)) throw IllegalMove("edge not on board: " + to_string(e));
  if (owner(e) != Owner::None) throw IllegalMove("edge already claimed: " + to_string(e));
  GameState s = *this;
  s.claim(e, owner_of(p));
  s.history_.push_back(Move{p, false, e});
  s.to_move_ = s.p1_stopped_ ? Player::P2 : other(p);
  return s;
}

GameState GameState::apply_stop() const {
  if (to_move_ != Player::P1 || p1_stopped_) throw TurnError("only P1 may stop, once, on its turn");
  GameState s = *this;
  s.p1_stopped_ = true;
  s.to_move_ = Player::P2;
  s.history_.push_back(Move{Player::P1, true, Edge{}});
  return s;
}

int GameState::degree(Player p, const Vertex& v) const {
  if (kind_ == BoardKind::TwoCliques) {
    if ((v.copy != 1 && v.copy != 2) || v.v < 0 || v.v >= n_) throw PreconditionError("vertex not on board");
    const auto& g = cliques_[v.copy - 1];
    return p == Player::P1 ? g.deg1(v.v) : g.deg2(v.v);
  }
  if (v.v < 0 || v.v >= n_) throw PreconditionError("vertex not on board");
  return hdeg_[p == Player::P1 ? 0 : 1][v.v];
}

bool GameState::is_free_vertex(const Vertex& v) const {
  return degree(Player::P1, v) == 0 && degree(Player::P2, v) == 0;
}

bool GameState::is_p1_free_vertex(const Vertex& v) const { return degree(Player::P1, v) == 0; }

std::optional<int> GameState::lowest_free_vertex(int copy, uint32_t exclude) const {
  for (int v = 0; v < n_; ++v) {
    if (exclude >> v & 1u) continue;
    if (is_free_vertex(Vertex{copy, v})) return v;
  }
  return std::nullopt;
}

int GameState::require_free_vertex(int copy, uint32_t exclude) const {
  auto v = lowest_free_vertex(copy, exclude);
  if (!v) throw BoardTooSmall("no free vertex left in copy " + std::to_string(copy) + " (n=" + std::to_string(n_) + ")");
  return *v;
}

const OwnGraph& GameState::clique(int copy) const {
  if (kind_ != BoardKind::TwoCliques || (copy != 1 && copy != 2)) throw PreconditionError("clique view needs a two-cliques board");
  return cliques_[copy - 1];
}

OwnGraph GameState::xy_view(int x, int y) const {
  if (kind_ != BoardKind::Hyper4) throw PreconditionError("XY view needs a hypergraph board");
  if (x == y) throw PreconditionError("centres must differ");
  OwnGraph g = OwnGraph::empty(n_);
  g.verts &= ~((1u << x) | (1u << y));
  for (int a = 0; a < n_; ++a) {
    if (a == x || a == y) continue;
    for (int b = a + 1; b < n_; ++b) {
      if (b == x || b == y) continue;
      auto o = static_cast<Owner>(hyper_[hyper_rank(Edge::hyper(x, y, a, b))]);
      if (o != Owner::None) g.set(a, b, o);
    }
  }
  return g;
}

int GameState::count(Owner o) const {
  if (kind_ == BoardKind::TwoCliques) return cliques_[0].count(o) + cliques_[1].count(o);
  return static_cast<int>(std::count(hyper_.begin(), hyper_.end(), static_cast<uint8_t>(o)));
}

std::size_t GameState::edge_count() const {
  if (kind_ == BoardKind::TwoCliques) return static_cast<size_t>(2 * binom(n_, 2));
  return hyper_.size();
}

std::vector<Edge> GameState::all_edges() const {
  std::vector<Edge> out;
  if (kind_ == BoardKind::TwoCliques) {
    for (int c = 1; c <= 2; ++c)
      for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b) out.push_back(Edge::graph(c, a, b));
  } else {
    for (size_t r = 0; r < hyper_.size(); ++r) out.push_back(hyper_unrank(static_cast<int>(r)));
  }
  return out;
}

std::vector<Edge> GameState::edges_owned(Owner o) const {
  std::vector<Edge> out;
  if (kind_ == BoardKind::TwoCliques) {
    for (int c = 1; c <= 2; ++c)
      for (auto [a, b] : cliques_[c - 1].edges(o)) out.push_back(Edge::graph(c, a, b));
  } else {
    for (size_t r = 0; r < hyper_.size(); ++r)
      if (hyper_[r] == static_cast<uint8_t>(o)) out.push_back(hyper_unrank(static_cast<int>(r)));
  }
  return out;
}

std::vector<Edge> GameState::unclaimed_edges() const { return edges_owned(Owner::None); }

std::optional<Edge> GameState::last_p1_edge() const {
  for (auto it = history_.rbegin(); it != history_.rend(); ++it)
    if (it->player == Player::P1 && !it->stop) return it->edge;
  return std::nullopt;
}

GameState replay(BoardKind kind, int n, const std::vector<Move>& moves) {
  GameState s = GameState::create(kind, n);
  for (const auto& m : moves) s = m.stop ? s.apply_stop() : s.apply_move(m.player, m.edge);
  return s;
}

}  // namespace ramsey
