#include "ramsey/hyper.hpp"

#include <algorithm>
#include <sstream>

#include "ramsey/lemma.hpp"
#include "ramsey/patterns.hpp"

namespace ramsey {

std::optional<std::pair<int, int>> XYBoardView::project(const Edge& e) const {
  if (e.arity != 4 || !e.contains(x) || !e.contains(y)) return std::nullopt;
  int rest[2], k = 0;
  for (int q = 0; q < 4; ++q)
    if (e.v[q] != x && e.v[q] != y) rest[k++] = e.v[q];
  return std::pair{rest[0], rest[1]};
}

long long board_intersection(std::pair<int, int> c1, std::pair<int, int> c2, int n) {
  auto norm = [](std::pair<int, int> p) { return std::pair{std::min(p.first, p.second), std::max(p.first, p.second)}; };
  c1 = norm(c1);
  c2 = norm(c2);
  if (c1.first == c1.second || c2.first == c2.second) throw PreconditionError("centre pair needs two vertices");
  if (c1 == c2) throw PreconditionError("centre pairs must differ");
  int u = 2;
  if (c2.first != c1.first && c2.first != c1.second) ++u;
  if (c2.second != c1.first && c2.second != c1.second) ++u;
  return binom(n - u, 4 - u);
}

namespace {

struct HCtx {
  const GameState& s;
  HyperState& hs;
  StepResult& out;

  void emit(CheckEvent::Kind k, bool ok, std::string detail) {
    out.events.push_back(CheckEvent{k, "hyper.stage" + std::to_string(hs.stage), ok, std::move(detail)});
  }

  uint32_t role_mask() const {
    uint32_t m = 0;
    for (int x : {hs.X, hs.Y, hs.A, hs.B, hs.C, hs.D})
      if (x >= 0) m |= 1u << x;
    for (int x : hs.first4)
      if (x >= 0) m |= 1u << x;
    return m;
  }
  int fresh() const { return s.require_free_vertex(0, role_mask()); }

  void take(const Edge& e, const std::string& name) {
    if (out.move) throw InternalInvariantViolation("hyper: second P2 move in one turn");
    if (s.owner(e) != Owner::None) throw InternalInvariantViolation("hyper: " + name + " is already claimed");
    out.move = e;
    if (out.label.empty()) out.label = "hyper.stage" + std::to_string(hs.stage);
    if (!out.note.empty()) out.note += "; ";
    out.note += out.label + "→" + name;
  }
  Edge xy(int a, int b) const { return Edge::hyper(hs.X, hs.Y, a, b); }

  std::optional<Edge> fresh_p1_move() const {
    const auto& h = s.history();
    if (h.empty() || h.back().player != Player::P1 || h.back().stop) return std::nullopt;
    return h.back().edge;
  }

  bool star_step(std::vector<int>& star) {
    if (hs.pending_f >= 0) {
      int f = hs.pending_f;
      if (s.owner(xy(hs.a0, f)) != Owner::P1) {
        hs.pending_f = -1;
        take(xy(hs.a0, f), "A0F" + std::to_string(star.size()));
        return true;
      }
    }
    int f = s.require_free_vertex(0, 0);
    star.push_back(f);
    hs.pending_f = f;
    take(xy(hs.a1, f), "A1F" + std::to_string(star.size()));
    return false;
  }

  void end_stage1() {
    OwnGraph view = s.xy_view(hs.X, hs.Y);
    int p1_total = s.count(Owner::P1);
    int on_xy = view.count(Owner::P1);
    bool p2_ok = view.p2(hs.A, hs.B) && view.p2(hs.B, hs.C) && view.p2(hs.A, hs.C) && view.p2(hs.C, hs.D) &&
                 view.p2(hs.D, hs.A);
    bool ok = p2_ok && on_xy <= 4 && (p1_total == 6 || s.p1_stopped());
    emit(CheckEvent::Config, ok,
         "P1 " + std::to_string(p1_total) + " hyperedges, " + std::to_string(on_xy) + " on XY" +
             (p2_ok ? "" : ", P2 misses a stage-1 edge"));
    auto only = [&](int a, int b) {
      int c = 0;
      for (const auto& e : s.edges_owned(Owner::P1))
        if (e.contains(a) && !e.contains(b)) ++c;
      return c;
    };
    hs.a0 = -1;
    std::string why;
    for (auto [x, y] : {std::pair{hs.A, hs.C}, std::pair{hs.C, hs.A}}) {
      auto pb = lemma::is_potential_base(view, x, y, x);
      int c = only(x, y);
      if (pb.witness && c <= 2) {
        hs.a0 = x;
        hs.a1 = y;
        break;
      }
      why += (pb.witness ? "" : pb.refutation + " ") + std::to_string(c) + " private; ";
    }
    if (hs.a0 < 0) {
      emit(CheckEvent::Lemma2, false, "no special endpoint of AC: " + why);
      hs.a0 = hs.A;
      hs.a1 = hs.C;
    } else {
      emit(CheckEvent::Lemma2, true, "A0 private hyperedges " + std::to_string(only(hs.a0, hs.a1)));
    }
    hs.stage = 2;
    hs.step = 0;
    hs.pending_f = -1;
    hs.path.push_back("stage2");
    out.label = "hyper.stage2";
    star_step(hs.star1);
  }

  void stage1() {
    switch (hs.step) {
      case 1: {
        auto m = fresh_p1_move();
        std::vector<int> outside, inside;
        for (int v : hs.first4) (m && m->contains(v) ? inside : outside).push_back(v);
        if (outside.empty()) throw InternalInvariantViolation("hyper: P1 owns P2's first hyperedge");
        std::sort(outside.begin(), outside.end());
        std::sort(inside.begin(), inside.end());
        hs.X = outside.front();
        std::vector<int> rest(inside.begin(), inside.end());
        rest.insert(rest.end(), outside.begin() + 1, outside.end());
        hs.Y = rest[0];
        hs.A = rest[1];
        hs.B = rest[2];
        hs.C = fresh();
        hs.step = 2;
        return take(xy(hs.B, hs.C), "XYBC");
      }
      case 2: {
        hs.step = 3;
        if (s.owner(Edge::hyper(hs.X, hs.A, hs.Y, hs.C)) != Owner::P1)
          return take(Edge::hyper(hs.X, hs.A, hs.Y, hs.C), "XAYC");
        std::swap(hs.Y, hs.B);
        return take(Edge::hyper(hs.X, hs.A, hs.Y, hs.C), "XABC");
      }
      case 3:
        hs.D = fresh();
        hs.step = 4;
        return take(xy(hs.C, hs.D), "XYCD");
      case 4:
        hs.step = 5;
        if (s.owner(xy(hs.D, hs.A)) != Owner::P1) return take(xy(hs.D, hs.A), "XYDA");
        std::swap(hs.A, hs.B);
        return take(xy(hs.D, hs.A), "XYDB");
      default:
        return end_stage1();
    }
  }

  bool choose(const std::string& label) const { return !(hs.options && hs.options->removed_branches.count(label)); }

  void stage3() {
    if (hs.step == 1) return mirror();
    if (hs.step == 2) return start_stage4();
    // copies of G' through TUVW with centres inside it
    std::optional<std::array<int, 6>> case1, case2;  // t u missing-a missing-b c0 c1
    const auto& q = hs.tuvw;
    for (int i = 0; i < 4 && !case1; ++i)
      for (int j = i + 1; j < 4 && !case1; ++j) {
        int t = q[i], u = q[j];
        int r0 = -1, r1 = -1;
        for (int k = 0; k < 4; ++k)
          if (k != i && k != j) (r0 < 0 ? r0 : r1) = q[k];
        OwnGraph view = s.xy_view(t, u);
        for (const auto& c : patterns::heavy_p1_copies(view, 8)) {
          bool through = false;
          for (auto [a, b] : c.edges())
            if ((a == r0 && b == r1) || (a == r1 && b == r0)) through = true;
          if (!through) continue;
          for (auto [a, b] : c.edges()) {
            if (view.p1(a, b)) continue;
            bool base = (a == c.a0 && b == c.a1) || (a == c.a1 && b == c.a0);
            if (base) {
              if (!case2) case2 = std::array<int, 6>{t, u, a, b, c.a0, c.a1};
            } else if (!case1) {
              int hub = (a == c.a0 || a == c.a1) ? a : b;
              case1 = std::array<int, 6>{t, u, a, b, hub, hub == c.a0 ? c.a1 : c.a0};
            }
          }
        }
      }
    if (case1 && choose("Hyper.I")) {
      auto [t, u, a, b, c0, c1] = *case1;
      hs.hcase = 'I';
      hs.path.push_back("Hyper.I");
      hs.t = t, hs.u = u, hs.c0 = c0, hs.c1 = c1;
      hs.step = 1;
      out.label = "hyper.stage3.I";
      return take(Edge::hyper(t, u, a, b), "C0D1");
    }
    if (case2 && choose("Hyper.II")) {
      auto [t, u, a, b, c0, c1] = *case2;
      hs.hcase = '2';
      hs.path.push_back("Hyper.II");
      hs.t = t, hs.u = u, hs.c0 = c0, hs.c1 = c1;
      hs.step = 2;
      out.label = "hyper.stage3.II";
      return take(Edge::hyper(t, u, a, b), "C0C1");
    }
    hs.hcase = '3';
    start_stage4();
  }

  void mirror() {
    auto m = fresh_p1_move();
    if (m && m->contains(hs.t) && m->contains(hs.u)) {
      XYBoardView tu{hs.t, hs.u};
      auto pr = tu.project(*m);
      for (auto [hub, d] : {*pr, std::pair{pr->second, pr->first}}) {
        if (hub != hs.c0 && hub != hs.c1) continue;
        if (d == hs.c0 || d == hs.c1) continue;
        int other = hub == hs.c0 ? hs.c1 : hs.c0;
        Edge e = tu.lift(other, d);
        Owner o = s.owner(e);
        if (o == Owner::None) {
          out.label = "hyper.stage3.mirror";
          return take(e, "C1D");
        }
        if (o == Owner::P1) emit(CheckEvent::Finding, false, "mirror edge " + to_string(e) + " already P1's");
      }
    }
    start_stage4();
  }

  void start_stage4() {
    hs.stage = 4;
    hs.step = 0;
    hs.pending_f = -1;
    hs.path.push_back("stage4");
    out.label = "hyper.stage4";
    star_step(hs.star2);
  }
};

}  // namespace

StepResult hyper_open(const GameState& s, HyperState& hs) {
  if (s.kind() != BoardKind::Hyper4) throw PreconditionError("hyper strategy needs a hypergraph board");
  if (s.history().size() != 1 || s.history()[0].stop)
    throw PreconditionError("hyper_open expects exactly one P1 hyperedge played");
  auto opts = hs.options;
  hs = HyperState{};
  hs.options = opts;
  for (int i = 0; i < 4; ++i) hs.tuvw[i] = s.history()[0].edge.v[i];
  hs.path.push_back("stage1");
  StepResult out;
  HCtx c{s, hs, out};
  for (int i = 0; i < 4; ++i) hs.first4[i] = c.fresh();
  hs.step = 1;
  c.take(Edge::hyper(hs.first4[0], hs.first4[1], hs.first4[2], hs.first4[3]), "XYAB");
  return out;
}

StepResult hyper_respond(const GameState& s, HyperState& hs) {
  if (s.to_move() != Player::P2) throw TurnError("hyper_respond called when P2 is not to move");
  StepResult out;
  HCtx c{s, hs, out};
  if (hs.done) return out;
  switch (hs.stage) {
    case 1: c.stage1(); break;
    case 2:
      out.label = "hyper.stage2";
      if (c.star_step(hs.star1)) {
        hs.stage = 3;
        hs.step = 0;
        hs.path.push_back("stage3");
      }
      break;
    case 3: c.stage3(); break;
    case 4:
      out.label = "hyper.stage4";
      if (c.star_step(hs.star2)) {
        hs.done = true;
        hs.path.push_back("done");
      }
      break;
  }
  return out;
}

std::string hyper_fingerprint(const HyperState& hs) {
  std::ostringstream o;
  o << hs.stage << '|' << hs.step << '|' << static_cast<int>(hs.hcase) << '|' << (hs.pending_f >= 0) << hs.done;
  return o.str();
}

uint32_t hyper_vertex_color(const HyperState& hs, int v) {
  uint32_t c = 0;
  int roles[] = {hs.X, hs.Y, hs.A, hs.B, hs.C, hs.D, hs.a0, hs.a1, hs.t, hs.u, hs.c0, hs.c1};
  for (int i = 0; i < 12; ++i)
    if (roles[i] == v) c |= 1u << i;
  if (std::find(hs.first4.begin(), hs.first4.end(), v) != hs.first4.end()) c |= 1u << 12;
  if (std::find(hs.tuvw.begin(), hs.tuvw.end(), v) != hs.tuvw.end()) c |= 1u << 13;
  if (std::find(hs.star1.begin(), hs.star1.end(), v) != hs.star1.end()) c |= 1u << 14;
  if (std::find(hs.star2.begin(), hs.star2.end(), v) != hs.star2.end()) c |= 1u << 15;
  if (hs.pending_f == v) c |= 1u << 16;
  return c;
}

}  // namespace ramsey
