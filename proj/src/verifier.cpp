#include "ramsey/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <unordered_set>

#include "json.hpp"
#include "ramsey/lemma.hpp"
#include "ramsey/patterns.hpp"
#include "ramsey/session.hpp"

namespace ramsey {

using nlohmann::json;

std::string Verdict::result() const {
  return violations.empty() ? "safe" : "violated";
}

namespace {

uint64_t fnv(uint64_t h, std::string_view s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h ^= 0xff;
  h *= 1099511628211ull;
  return h;
}

struct Pos {
  GameState s;
  Automaton a;
  int p1_moves = 0;
};

enum class Reply { Continue, P2Won, Abort };

struct Candidate {
  Edge e;
  int copy = 0;
  int fresh = 0;
  std::vector<int> idx;  // touched indices, sorted
};

// Touched vertices plus any vertex the automaton has given a role, with their colours.
struct View {
  std::vector<Vertex> touched;
  std::vector<uint32_t> colors;
  std::array<uint32_t, 3> mask{};  // per copy
};

View make_view(const Pos& p) {
  View v;
  const GameState& s = p.s;
  auto copies = s.kind() == BoardKind::TwoCliques ? std::vector<int>{1, 2} : std::vector<int>{0};
  for (int c : copies)
    for (int x = 0; x < s.n(); ++x) {
      Vertex vx{c, x};
      uint32_t col = p.a.color(vx);
      if (col != 0 || !s.is_free_vertex(vx)) {
        v.touched.push_back(vx);
        v.colors.push_back(col);
        v.mask[c] |= 1u << x;
      }
    }
  return v;
}

std::vector<int> lowest_outside(const GameState& s, uint32_t mask, int copy, int count) {
  std::vector<int> out;
  for (int x = 0; x < s.n() && static_cast<int>(out.size()) < count; ++x)
    if (!(mask >> x & 1u) && s.is_free_vertex(Vertex{copy, x})) out.push_back(x);
  return out;
}

// P1 moves up to isomorphism of untouched vertices.
std::vector<Candidate> candidates(const GameState& s, const View& v) {
  std::vector<Candidate> out;
  std::map<Vertex, int> index;
  for (size_t i = 0; i < v.touched.size(); ++i) index[v.touched[i]] = static_cast<int>(i);
  if (s.kind() == BoardKind::TwoCliques) {
    for (int c = 1; c <= 2; ++c) {
      std::vector<int> t;
      for (const auto& x : v.touched)
        if (x.copy == c) t.push_back(x.v);
      auto fresh = lowest_outside(s, v.mask[c], c, 2);
      const OwnGraph& g = s.clique(c);
      for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = i + 1; j < t.size(); ++j)
          if (g.free_edge(t[i], t[j])) {
            int a = index[{c, t[i]}], b = index[{c, t[j]}];
            out.push_back({Edge::graph(c, t[i], t[j]), c, 0, {std::min(a, b), std::max(a, b)}});
          }
      if (!fresh.empty())
        for (int x : t)
          out.push_back({Edge::graph(c, std::min(x, fresh[0]), std::max(x, fresh[0])), c, 1, {index[{c, x}]}});
      if (fresh.size() == 2) out.push_back({Edge::graph(c, fresh[0], fresh[1]), c, 2, {}});
    }
    return out;
  }
  std::vector<int> t;
  for (const auto& x : v.touched) t.push_back(x.v);
  auto fresh = lowest_outside(s, v.mask[0], 0, 4);
  int m = static_cast<int>(t.size());
  for (int k = 0; k <= 4 && k <= m; ++k) {
    if (static_cast<int>(fresh.size()) < 4 - k) continue;
    std::vector<int> pick(k);
    std::function<void(int, int)> rec = [&](int from, int depth) {
      if (depth == k) {
        std::vector<int> vs;
        for (int i : pick) vs.push_back(t[i]);
        for (int i = 0; i < 4 - k; ++i) vs.push_back(fresh[i]);
        Edge e = Edge::hyper(vs[0], vs[1], vs[2], vs[3]);
        if (s.owner(e) == Owner::None) out.push_back({e, 0, 4 - k, pick});
        return;
      }
      for (int i = from; i < m; ++i) {
        pick[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
  }
  return out;
}

std::vector<Candidate> all_moves(const GameState& s) {
  std::vector<Candidate> out;
  for (const auto& e : s.unclaimed_edges()) out.push_back({e, e.copy, 0, {}});
  return out;
}

// One representative per orbit of the automorphisms found by the canonical search.
std::vector<Candidate> orbit_reps(const std::vector<Candidate>& cands, const CanonResult& cr) {
  if (cr.automorphisms.size() <= 1) return cands;
  std::map<std::tuple<int, int, std::vector<int>>, int> where;
  for (size_t i = 0; i < cands.size(); ++i) where[{cands[i].copy, cands[i].fresh, cands[i].idx}] = static_cast<int>(i);
  std::vector<int> parent(cands.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& sigma : cr.automorphisms)
    for (size_t i = 0; i < cands.size(); ++i) {
      std::vector<int> img;
      for (int x : cands[i].idx) img.push_back(sigma[x]);
      std::sort(img.begin(), img.end());
      auto it = where.find({cands[i].copy, cands[i].fresh, img});
      if (it == where.end()) throw InternalInvariantViolation("automorphism maps a candidate outside the move set");
      int a = find(static_cast<int>(i)), b = find(it->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<Candidate> out;
  for (size_t i = 0; i < cands.size(); ++i)
    if (find(static_cast<int>(i)) == static_cast<int>(i)) out.push_back(cands[i]);
  return out;
}

struct Key128 {
  uint64_t a, b;
  bool operator==(const Key128&) const = default;
};
struct KeyHash {
  size_t operator()(const Key128& k) const { return k.a ^ (k.b * 0x9e3779b97f4a7c15ull); }
};
Key128 hash_key(const std::string& k) { return {std::hash<std::string>{}(k), fnv(1469598103934665603ull, k)}; }

class Engine {
 public:
  Engine(Verdict& v, const VerifyOptions& o) : v_(v), o_(o) {}

  bool full() const { return v_.violations.size() >= o_.max_issues; }

  void violation(const std::string& inv, const std::string& detail, const GameState& s) {
    ++violation_count;
    if (v_.violations.size() < o_.max_issues) v_.violations.push_back(Issue{inv, detail, s.history()});
  }
  void finding(const std::string& inv, const std::string& detail, const GameState& s) {
    if (v_.findings.size() < o_.max_issues) v_.findings.push_back(Issue{inv, detail, s.history()});
  }

  Pos initial() const {
    return Pos{GameState::create(o_.kind, o_.n), Automaton(o_.kind, o_.strategy), 0};
  }

  Reply p2_reply(Pos& p) {
    StepResult r;
    try {
      r = p.s.history().size() == 1 ? p.a.open(p.s) : p.a.respond(p.s);
    } catch (const BoardTooSmall& e) {
      ++v_.board_too_small;
      finding("BoardTooSmall", e.what(), p.s);
      return Reply::Abort;
    } catch (const IllegalMove& e) {
      violation("IllegalMove", e.what(), p.s);
      return Reply::Abort;
    } catch (const InternalInvariantViolation& e) {
      violation("InternalInvariantViolation", e.what(), p.s);
      return Reply::Abort;
    } catch (const std::exception& e) {
      violation("StrategyError", e.what(), p.s);
      return Reply::Abort;
    }
    for (const auto& ev : r.events) {
      if (ev.ok) continue;
      std::string inv = std::string(event_kind_name(ev.kind)) + " " + ev.node;
      if (ev.kind == CheckEvent::Finding)
        finding(inv, ev.detail, p.s);
      else
        violation(inv, ev.detail, p.s);
    }
    if (!r.move) {
      violation("P2 has no move", p.a.current_case(), p.s);
      return Reply::Abort;
    }
    try {
      p.s = p.s.apply_move(Player::P2, *r.move);
    } catch (const std::exception& e) {
      violation("IllegalMove", e.what(), p.s);
      return Reply::Abort;
    }
    ++v_.cases[r.label];
    check_star_fan(p);
    if (on_reply) on_reply(p);
    if (patterns::move_completed_target(p.s, Player::P2, *r.move)) return Reply::P2Won;
    return Reply::Continue;
  }

  void check_star_fan(const Pos& p) {
    if (o_.kind != BoardKind::TwoCliques) return;
    auto fan = star_fan_available(p.s, p.a.g);
    if (!fan) return;
    ++v_.star_fans;
    if (!*fan) finding("star fan", "B1F_i fan not available after five answers", p.s);
  }

  // False when P1 completed a target with this move.
  bool p1_move(Pos& p, const Edge& e) {
    p.s = p.s.apply_move(Player::P1, e);
    ++p.p1_moves;
    v_.trace_hash = fnv(v_.trace_hash, to_string(e));
    if (patterns::move_completed_target(p.s, Player::P1, e)) {
      violation("P1 owns a target copy", to_string(e), p.s);
      return false;
    }
    return true;
  }

  // P1 stops here; P2 must finish within the cap, and within two moves once its final star is running.
  void evaluate_stop(Pos p) {
    bool final_star = p.a.in_final_star();
    p.s = p.s.apply_stop();
    ++v_.stops;
    v_.trace_hash = fnv(v_.trace_hash, "stop");
    for (int moves = 1; moves <= o_.completion_cap; ++moves) {
      Reply r = p2_reply(p);
      if (r == Reply::Abort) return;
      if (r == Reply::P2Won) {
        ++v_.completions;
        v_.max_p2_after_stop = std::max(v_.max_p2_after_stop, moves);
        if (final_star && moves > 2)
          violation("slow completion", "final star needed " + std::to_string(moves) + " moves", p.s);
        if (patterns::owns_target(p.s, Player::P1)) violation("P1 owns a target copy", "after stop", p.s);
        return;
      }
    }
    violation("no completion after stop", "P2 did not finish within " + std::to_string(o_.completion_cap) + " moves",
              p.s);
  }

  // Applies the configured start: the prefix strings or explicit P1 edges, each answered by P2.
  std::optional<Pos> start_position() {
    Pos p = initial();
    if (o_.prefix.empty()) {
      for (const auto& e : o_.start) {
        if (!p1_move(p, e)) return std::nullopt;
        if (p2_reply(p) != Reply::Continue) return std::nullopt;
      }
      return p;
    }
    if (o_.kind != BoardKind::TwoCliques) throw ConfigError("prefixes apply to the graph game only");
    auto pr = play_prefix(o_.n, o_.prefix, o_.strategy);
    if (!pr.ok) throw ConfigError("prefix: " + pr.error);
    // replay the P1 edges so the automaton carries over
    for (const auto& m : pr.state.history()) {
      if (m.player != Player::P1) continue;
      if (!p1_move(p, m.edge)) return std::nullopt;
      if (p2_reply(p) != Reply::Continue) return std::nullopt;
    }
    return p;
  }

  std::function<void(const Pos&)> on_reply;
  long violation_count = 0;

 private:
  Verdict& v_;
  const VerifyOptions& o_;
};

std::string tag_for(const Pos& p, int left) { return p.a.fingerprint() + "#" + std::to_string(left); }

class Exhaustive {
 public:
  Exhaustive(Verdict& v, const VerifyOptions& o) : v_(v), o_(o), eng_(v, o) {}

  void run() {
    auto start = eng_.start_position();
    if (!start) return;
    dfs(*start, o_.depth);
  }

 private:
  void dfs(const Pos& p, int left) {
    if (eng_.full()) return;
    ++v_.states;
    View view = make_view(p);
    std::vector<Candidate> cands;
    if (o_.reduce) {
      CanonResult cr = canonical_form(canon_input(p.s, view.touched, view.colors, tag_for(p, left)), true);
      if (!tt_.insert(hash_key(cr.key)).second) {
        ++v_.tt_hits;
        return;
      }
      if (left > 0) cands = orbit_reps(candidates(p.s, view), cr);
    } else if (left > 0) {
      cands = all_moves(p.s);
    }
    if (p.p1_moves >= 1) eng_.evaluate_stop(p);
    if (left == 0) {
      ++v_.leaves;
      return;
    }
    for (const auto& c : cands) {
      if (eng_.full()) return;
      Pos child = p;
      if (!eng_.p1_move(child, c.e)) continue;
      Reply r = eng_.p2_reply(child);
      if (r == Reply::Continue)
        dfs(child, left - 1);
      else
        ++v_.leaves;
    }
  }

  Verdict& v_;
  const VerifyOptions& o_;
  Engine eng_;
  std::unordered_set<Key128, KeyHash> tt_;
};

enum class Policy { Uniform, Threat, Adjacent };

class Stochastic {
 public:
  Stochastic(Verdict& v, const VerifyOptions& o) : v_(v), o_(o), eng_(v, o), rng_(o.seed) {}

  Engine& engine() { return eng_; }

  void run() {
    auto start = eng_.start_position();
    if (!start) return;
    for (long i = 0; i < o_.playouts && !eng_.full(); ++i) {
      ++v_.playouts_run;
      playout(*start, static_cast<Policy>(i % 3));
    }
  }

 private:
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng_); }

  void playout(Pos p, Policy pol) {
    for (;;) {
      if (p.p1_moves >= 1 && (p.p1_moves >= o_.max_p1_moves || unit() < o_.stop_chance)) {
        eng_.evaluate_stop(p);
        return;
      }
      View view = make_view(p);
      auto cands = candidates(p.s, view);
      if (cands.empty()) {
        eng_.evaluate_stop(p);
        return;
      }
      Edge e = choose(p, view, cands, pol);
      if (!eng_.p1_move(p, e)) return;
      Reply r = eng_.p2_reply(p);
      if (r == Reply::Abort) return;
      if (r == Reply::P2Won) {
        if (patterns::owns_target(p.s, Player::P1)) eng_.violation("P1 owns a target copy", "at P2 win", p.s);
        return;
      }
    }
  }

  int score(const GameState& s, const Edge& e) {
    GameState t = s.apply_move(Player::P1, e);
    if (s.kind() == BoardKind::TwoCliques) return patterns::exact_max_ep1(t.clique(e.copy));
    int best = 0;
    for (const auto& f : s.edges_owned(Owner::P1)) {
      int shared = 0;
      for (int i = 0; i < 4; ++i) shared += e.contains(f.v[i]);
      best += shared == 3;
    }
    return best;
  }

  Edge choose(const Pos& p, const View& view, const std::vector<Candidate>& cands, Policy pol) {
    if (pol == Policy::Uniform || unit() < 0.25) return cands[pick(cands.size())].e;
    if (pol == Policy::Threat) {
      auto th = patterns::threats(p.s, Player::P1);
      if (!th.empty()) return th[pick(th.size())].edge;
      Edge best = cands[pick(cands.size())].e;
      int best_score = -1;
      for (int i = 0; i < 6; ++i) {
        const Edge& e = cands[pick(cands.size())].e;
        int sc = score(p.s, e);
        if (sc > best_score) best_score = sc, best = e;
      }
      return best;
    }
    // strategy-adjacent: edges between vertices the automaton cares about, or building in the copy P2 left alone
    std::vector<const Candidate*> near;
    std::map<Vertex, uint32_t> col;
    for (size_t i = 0; i < view.touched.size(); ++i) col[view.touched[i]] = view.colors[i];
    for (const auto& c : cands) {
      if (c.fresh > 1) continue;
      int coloured = 0, arity = c.e.arity;
      for (int i = 0; i < arity; ++i) coloured += col[Vertex{c.e.copy, c.e.v[i]}] != 0;
      bool k1_build = p.s.kind() == BoardKind::TwoCliques && c.e.copy == p.a.g.k1 && c.fresh == 0;
      if (coloured >= std::min(arity, 3) || k1_build) near.push_back(&c);
    }
    if (near.empty()) return cands[pick(cands.size())].e;
    return near[pick(near.size())]->e;
  }

  Verdict& v_;
  const VerifyOptions& o_;
  Engine eng_;
  std::mt19937_64 rng_;
};

template <class F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::optional<bool> star_fan_available(const GameState& s, const StrategyState& g) {
  if (g.phase != Phase::Endgame || g.stage != EndStage::Star1 || !g.witness || g.star1.size() != 6) return std::nullopt;
  const auto& w = *g.witness;
  auto own = [&](int a, int b) { return s.owner(Edge::graph(g.k2, a, b)); };
  bool ok = own(w.a0, w.a1) == Owner::P2 && own(w.a0, w.b1) == Owner::P2 && own(w.a1, w.b1) == Owner::P2;
  for (int i = 0; i < 5; ++i) {
    int f = g.star1[i];
    ok &= own(w.a1, f) == Owner::P2 && own(w.a0, f) == Owner::P1 && own(w.b1, f) == Owner::None;
  }
  return ok;
}

Verdict exhaustive_verify(const VerifyOptions& o) {
  if (o.depth < 0) throw ConfigError("depth must be non-negative");
  Verdict v;
  v.mode = "exhaustive";
  v.opts = o;
  Exhaustive ex(v, o);
  v.seconds = timed([&] { ex.run(); });
  return v;
}

Verdict stochastic_verify(const VerifyOptions& o) {
  if (o.max_p1_moves < 1) throw ConfigError("budget must be at least one P1 move");
  Verdict v;
  v.mode = "stochastic";
  v.opts = o;
  Stochastic st(v, o);
  v.seconds = timed([&] { st.run(); });
  return v;
}

std::string verdict_json(const Verdict& v, bool with_moves) {
  auto issues = [&](const std::vector<Issue>& xs) {
    json a = json::array();
    for (const auto& i : xs) {
      json j{{"invariant", i.invariant}, {"detail", i.detail}};
      if (with_moves) {
        json ms = json::array();
        for (const auto& m : i.moves) ms.push_back(std::string(player_name(m.player)) + ":" + (m.stop ? "stop" : to_string(m.edge)));
        j["trace"] = ms;
      }
      a.push_back(j);
    }
    return a;
  };
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(v.trace_hash));
  json j{
      {"mode", v.mode},
      {"game", v.opts.kind == BoardKind::TwoCliques ? "graph" : "hyper"},
      {"n", v.opts.n},
      {"depth", v.mode == "exhaustive" ? json(v.opts.depth) : json(nullptr)},
      {"playouts", v.mode == "stochastic" ? json(v.opts.playouts) : json(nullptr)},
      {"budget", v.mode == "stochastic" ? json(v.opts.max_p1_moves) : json(nullptr)},
      {"seed", v.opts.seed},
      {"states", v.states},
      {"tt_hits", v.tt_hits},
      {"leaves", v.leaves},
      {"stops", v.stops},
      {"completions", v.completions},
      {"max_p2_moves_after_stop", v.max_p2_after_stop},
      {"board_too_small", v.board_too_small},
      {"star_fans", v.star_fans},
      {"result", v.result()},
      {"violations", issues(v.violations)},
      {"findings", issues(v.findings)},
      {"cases", v.cases},
      {"trace_hash", hash},
      {"seconds", v.seconds},
  };
  if (!v.opts.prefix.empty()) j["prefix"] = v.opts.prefix;
  return j.dump();
}

std::string issue_trace_jsonl(const Verdict& v, const Issue& issue) {
  std::string out;
  int ply = 0;
  (void)v;
  for (const auto& m : issue.moves) {
    PlyRecord r;
    r.ply = ++ply;
    r.player = m.player;
    r.stop = m.stop;
    r.edge = m.edge;
    out += trace_line(r) + "\n";
  }
  return out;
}

std::set<CanonicalKey> reachable_keys(BoardKind kind, int n, int depth, bool reduce) {
  VerifyOptions o;
  o.kind = kind;
  o.n = n;
  o.max_issues = 1u << 30;
  Verdict v;
  Engine eng(v, o);
  std::set<CanonicalKey> keys;
  std::unordered_set<Key128, KeyHash> tt;
  std::function<void(const Pos&, int)> dfs = [&](const Pos& p, int left) {
    View view = make_view(p);
    CanonResult cr = canonical_form(canon_input(p.s, view.touched, view.colors, p.a.fingerprint()), reduce);
    keys.insert(cr.key);
    if (left == 0) return;
    std::vector<Candidate> cands;
    if (reduce) {
      if (!tt.insert(hash_key(cr.key + "#" + std::to_string(left))).second) return;
      cands = orbit_reps(candidates(p.s, view), cr);
    } else {
      cands = all_moves(p.s);
    }
    for (const auto& c : cands) {
      Pos child = p;
      if (!eng.p1_move(child, c.e)) continue;
      if (eng.p2_reply(child) == Reply::Continue) dfs(child, left - 1);
    }
  };
  dfs(eng.initial(), depth);
  return keys;
}

PrefixResult play_prefix(int n, const std::vector<std::string>& prefix, std::shared_ptr<const StrategyOptions> strategy) {
  PrefixResult out;
  Session sess(BoardKind::TwoCliques, n, strategy);
  try {
    sess.p1_move(Edge::graph(1, 0, 1));
    for (const auto& item : prefix) {
      if (sess.finished()) throw ConfigError("game over before " + item);
      const auto& st = sess.automaton().g;
      const GameState& s = sess.state();
      Edge e;
      if (item.rfind("k1:", 0) == 0) {
        int a = -1, b = -1;
        if (std::sscanf(item.c_str() + 3, "%d-%d", &a, &b) != 2) throw ConfigError("bad prefix item " + item);
        e = Edge::graph(st.k1, a, b);
      } else if (item == "K1") {
        auto a = s.require_free_vertex(st.k1);
        auto b = s.require_free_vertex(st.k1, 1u << a);
        e = Edge::graph(st.k1, a, b);
      } else {
        auto pairs = parse_role_pairs(item);
        if (pairs.size() != 1) throw ConfigError("bad prefix item " + item);
        auto [r0, r1] = pairs[0];
        int a = st.role[r0], b = st.role[r1];
        uint32_t used = 0;
        for (int x : st.role)
          if (x >= 0) used |= 1u << x;
        if (a < 0) a = s.require_free_vertex(st.k2, used), used |= 1u << a;
        if (b < 0) b = s.require_free_vertex(st.k2, used);
        e = Edge::graph(st.k2, std::min(a, b), std::max(a, b));
      }
      sess.p1_move(e);
    }
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
  }
  out.state = sess.state();
  out.node = sess.current_case();
  return out;
}

std::map<std::string, std::vector<Edge>> label_prefixes(BoardKind kind, int n, int max_depth, int per_signature) {
  VerifyOptions o;
  o.kind = kind;
  o.n = n;
  o.max_issues = 0;
  Verdict v;
  Engine eng(v, o);
  std::map<std::string, std::vector<Edge>> found;
  auto labels_of = [&](const Automaton& a) { return kind == BoardKind::TwoCliques ? a.g.path : a.h.path; };
  auto p1_edges = [](const GameState& s) {
    std::vector<Edge> es;
    for (const auto& m : s.history())
      if (m.player == Player::P1 && !m.stop) es.push_back(m.edge);
    return es;
  };
  std::vector<Pos> layer{eng.initial()};
  for (int d = 0; d < max_depth && !layer.empty(); ++d) {
    std::map<std::string, int> seen;
    std::vector<Pos> next;
    for (const auto& p : layer) {
      View view = make_view(p);
      for (const auto& c : candidates(p.s, view)) {
        Pos child = p;
        auto before = labels_of(child.a).size();
        if (!eng.p1_move(child, c.e)) continue;
        if (eng.p2_reply(child) != Reply::Continue) continue;
        auto labs = labels_of(child.a);
        for (size_t i = before; i < labs.size(); ++i)
          if (!found.count(labs[i])) found[labs[i]] = p1_edges(child.s);
        std::string sig = child.a.fingerprint();
        for (const auto& l : labs) sig += "/" + l;
        if (kind == BoardKind::TwoCliques) {
          const OwnGraph& k1 = child.s.clique(child.a.g.k1);
          sig += "#" + std::to_string(k1.count(Owner::P1)) + ":" + std::to_string(patterns::exact_max_ep1(k1));
        }
        if (seen[sig]++ < per_signature) next.push_back(std::move(child));
      }
    }
    layer = std::move(next);
  }
  return found;
}

const std::map<std::string, std::vector<std::string>>& scripted_prefixes() {
  static const std::map<std::string, std::vector<std::string>> lines = {
      {"B.1.1.2.1.1", {"CD", "AE", "BC", "AF", "CF"}},
      {"B.1.1.2.1.1.1", {"CD", "AE", "BC", "AF", "CF", "BI"}},
      {"B.1.1.2.1.1.2", {"CD", "AE", "BC", "AF", "CF", "K1"}},
      {"B.1.1.2.1.2.1", {"CD", "AE", "BC", "BD", "CF", "DF"}},
      {"B.1.1.2.1.2.1.1", {"CD", "AE", "BC", "BD", "CF", "DF", "BI", "BJ", "BK", "K1"}},
      {"B.1.1.2.1.2.1.2", {"CD", "AE", "BC", "BD", "CF", "DF", "K1"}},
      // P1 stays in K^1 and builds G minus its base 0-2
      {"Block.II", {"k1:1-2", "k1:0-3", "k1:2-3", "k1:0-4", "k1:2-4", "k1:0-5", "k1:2-5"}},
  };
  return lines;
}

std::vector<BranchReach> branch_reach(int hunt_depth) {
  auto hunted = label_prefixes(BoardKind::TwoCliques, 14, hunt_depth, 2);
  std::vector<BranchReach> out;
  for (const auto& label : branch_labels()) {
    auto it = scripted_prefixes().find(label);
    if (it != scripted_prefixes().end()) {
      auto pr = play_prefix(14, it->second);
      if (!pr.ok) continue;
      std::vector<Edge> es;
      for (const auto& m : pr.state.history())
        if (m.player == Player::P1 && !m.stop) es.push_back(m.edge);
      out.push_back({label, es, true});
    } else if (auto h = hunted.find(label); h != hunted.end()) {
      out.push_back({label, h->second, false});
    }
  }
  return out;
}

std::vector<OwnGraph> random_k2_states(int n, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<OwnGraph> out;
  while (static_cast<int>(out.size()) < count) {
    double p1 = 0.05 + 0.35 * u(rng), p2 = 0.05 + 0.35 * u(rng);
    OwnGraph g = OwnGraph::empty(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        double x = u(rng);
        if (x < p1)
          g.set(a, b, Owner::P1);
        else if (x < p1 + p2)
          g.set(a, b, Owner::P2);
      }
    if (g.count(Owner::P2) > 0) out.push_back(g);
  }
  return out;
}

std::vector<OwnGraph> reachable_k2_states(int n, int playouts, uint64_t seed) {
  VerifyOptions o;
  o.n = n;
  o.playouts = playouts;
  o.seed = seed;
  o.max_issues = 1u << 30;
  Verdict v;
  Stochastic st(v, o);
  std::set<std::string> seen;
  std::vector<OwnGraph> out;
  auto grab = [&](const Pos& p) {
    if (p.s.history().empty()) return;
    const OwnGraph& g = p.s.clique(p.a.g.k2);
    if (g.count(Owner::P2) == 0) return;
    View view = make_view(p);
    if (seen.insert(std::to_string(p.a.g.k2) + canonicalize(p.s, view.touched)).second) out.push_back(g);
  };
  st.engine().on_reply = grab;
  st.run();
  return out;
}

CrosscheckReport crosscheck_lemmas(const std::vector<OwnGraph>& corpus) {
  CrosscheckReport r;
  auto note = [&](const std::string& s) {
    if (r.examples.size() < 10) r.examples.push_back(s);
  };
  for (const auto& g : corpus) {
    ++r.states;
    for (int a0 = 0; a0 < g.n; ++a0)
      for (int a1 = a0 + 1; a1 < g.n; ++a1) {
        if (!g.p2(a0, a1)) continue;
        auto l3 = lemma::lemma3_check(g, a0, a1);
        if (l3.holds) {
          ++r.lemma3_holds;
          if (!lemma::is_potential_base(g, a0, a1).witness) {
            ++r.implication_failures;
            note("lemma3 holds but base " + std::to_string(a0) + "," + std::to_string(a1) + " is not potential");
          }
        }
        bool brute = false;
        for (int x = 0; x < g.n && !brute; ++x)
          for (int y = x + 1; y < g.n && !brute; ++y) {
            if (x == a0 || x == a1 || y == a0 || y == a1) continue;
            brute = g.p1(a0, x) && g.p1(a1, x) && g.p1(a0, y) && g.p1(a1, y) && g.p1(x, y);
          }
        if (brute != lemma::has_two_delta(g, a0, a1).has_value()) {
          ++r.two_delta_disagreements;
          note("two-delta mismatch at " + std::to_string(a0) + "," + std::to_string(a1));
        }
      }
    int bound = patterns::max_ep1_over_bases(g).global_max;
    int exact = patterns::exact_max_ep1(g);
    if (bound < exact) {
      ++r.bound_failures;
      note("counting bound " + std::to_string(bound) + " below exact " + std::to_string(exact));
    }
  }
  return r;
}

LedgerReport ledger_exhaust(const std::string& label, int pool) {
  LedgerReport rep;
  rep.label = label;
  const NodeConfig* c = node_config(label);
  rep.l = marked_loss(label);
  if (!c || rep.l == 0) throw ConfigError(label + " is not a marked split-case");
  std::array<int, kRoles> at;
  at.fill(-1);
  int next = 0;
  for (const auto* list : {&c->p2, &c->p1})
    for (auto [a, b] : *list)
      for (int r : {a, b})
        if (at[r] < 0) at[r] = next++;
  if (at[rB] < 0) at[rB] = next++;
  if (next > pool) throw ConfigError("pool too small for " + label);
  OwnGraph base = OwnGraph::empty(pool);
  for (auto [a, b] : c->p2) base.set(at[a], at[b], Owner::P2);
  for (auto [a, b] : c->p1) base.set(at[a], at[b], Owner::P1);
  std::vector<std::pair<int, int>> free;
  for (int a = 0; a < pool; ++a)
    for (int b = a + 1; b < pool; ++b)
      if (base.free_edge(a, b)) free.emplace_back(a, b);
  std::vector<int> unlabeled;
  for (int x = next; x < pool; ++x) unlabeled.push_back(x);
  int specified = static_cast<int>(c->p1.size());
  rep.worst = -100;
  auto check = [&](const OwnGraph& g, int m) {
    ++rep.placements;
    int k = specified + m;  // P1's first edge lies in K^1
    int bound = patterns::max_ep1_over_bases(g).global_max;
    if (m == c->plus) rep.k = k;
    rep.worst = std::max(rep.worst, bound - (k - rep.l));
    if (bound > k - rep.l && rep.ok) {
      rep.ok = false;
      std::string w;
      for (auto [a, b] : g.edges(Owner::P1)) w += std::to_string(a) + "-" + std::to_string(b) + " ";
      rep.witness = "m=" + std::to_string(m) + " bound=" + std::to_string(bound) + " P1: " + w;
    }
  };
  std::function<void(OwnGraph&, size_t, int, int)> place = [&](OwnGraph& g, size_t from, int left, int m) {
    if (left == 0) return check(g, m);
    for (size_t i = from; i < free.size(); ++i) {
      auto [a, b] = free[i];
      if (!g.free_edge(a, b)) continue;
      g.set(a, b, Owner::P1);
      place(g, i + 1, left - 1, m);
      g.set(a, b, Owner::None);
    }
  };
  for (int m = c->star ? 1 : 0; m <= c->plus; ++m) {
    if (!c->star) {
      OwnGraph g = base;
      place(g, 0, m, m);
      continue;
    }
    // P1's second move: either in K^1 or B to an unlabeled vertex
    OwnGraph g = base;
    place(g, 0, m - 1, m);
    for (int x : unlabeled) {
      if (!base.free_edge(at[rB], x)) continue;
      OwnGraph h = base;
      h.set(at[rB], x, Owner::P1);
      place(h, 0, m - 1, m);
    }
  }
  return rep;
}

}  // namespace ramsey
