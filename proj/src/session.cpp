#include "ramsey/session.hpp"

#include <sstream>

#include "json.hpp"
#include "ramsey/patterns.hpp"

namespace ramsey {

using nlohmann::json;

Automaton::Automaton(BoardKind k, std::shared_ptr<const StrategyOptions> opts) : kind(k) {
  g.options = opts;
  h.options = opts;
}

namespace {

// Copycat: same pair in the other clique, else the first unclaimed edge.
StepResult mirror_stub(const GameState& s) {
  StepResult r;
  r.label = "stub";
  if (auto last = s.last_p1_edge(); last && s.kind() == BoardKind::TwoCliques) {
    Edge e = Edge::graph(3 - last->copy, last->v[0], last->v[1]);
    if (s.owner(e) == Owner::None) r.move = e;
  }
  if (!r.move) {
    auto free = s.unclaimed_edges();
    if (!free.empty()) r.move = free.front();
  }
  return r;
}

}  // namespace

StepResult Automaton::open(const GameState& s) {
  if (g.options && g.options->mirror_stub) return mirror_stub(s);
  return kind == BoardKind::TwoCliques ? strategy_open(s, g) : hyper_open(s, h);
}
StepResult Automaton::respond(const GameState& s) {
  if (g.options && g.options->mirror_stub) return mirror_stub(s);
  return kind == BoardKind::TwoCliques ? strategy_respond(s, g) : hyper_respond(s, h);
}
bool Automaton::in_final_star() const {
  if (kind == BoardKind::Hyper4) return h.stage == 4;
  return (g.phase == Phase::Endgame && g.stage == EndStage::Star2) || g.phase == Phase::Special1 ||
         g.phase == Phase::Special2 || g.phase == Phase::Done;
}
bool Automaton::done() const { return kind == BoardKind::TwoCliques ? g.phase == Phase::Done : h.done; }
std::string Automaton::fingerprint() const {
  return kind == BoardKind::TwoCliques ? strategy_fingerprint(g) : hyper_fingerprint(h);
}
uint32_t Automaton::color(const Vertex& v) const {
  return kind == BoardKind::TwoCliques ? strategy_vertex_color(g, v) : hyper_vertex_color(h, v.v);
}

std::string Automaton::current_case() const {
  if (kind == BoardKind::Hyper4) {
    std::string c = "hyper.stage" + std::to_string(h.stage);
    if (h.hcase == 'I') c += ".I";
    if (h.hcase == '2') c += ".II";
    if (h.hcase == '3') c += ".III";
    return h.done ? "hyper.done" : c;
  }
  if (g.phase == Phase::Done) return "done";
  if (g.phase == Phase::Endgame) return g.end_case + "/" + stage_name(g.stage);
  return g.node;
}

std::optional<lemma::LostEdgeLedger> Automaton::ledger() const {
  if (kind == BoardKind::TwoCliques && g.has_ledger) return g.last_ledger;
  return std::nullopt;
}

std::optional<std::string> Automaton::potential_base(const GameState& s) const {
  (void)s;
  if (kind == BoardKind::TwoCliques) {
    if (!g.witness) return std::nullopt;
    int a = g.witness->a0, b = g.witness->a1;
    return to_string(Edge::graph(g.k2, std::min(a, b), std::max(a, b)));
  }
  if (h.a0 < 0) return std::nullopt;
  return to_string(Edge::hyper(h.X, h.Y, h.a0, h.a1));
}

int Automaton::star_edges() const {
  if (kind == BoardKind::TwoCliques)
    return static_cast<int>(g.star1.size() + g.star2.size() + g.lstar.size());
  return static_cast<int>(h.star1.size() + h.star2.size());
}

std::string trace_line(const PlyRecord& r) {
  json j;
  j["ply"] = r.ply;
  j["player"] = player_name(r.player);
  j["edge"] = r.stop ? std::string("stop") : to_string(r.edge);
  j["case"] = r.label.empty() ? json(nullptr) : json(r.label);
  j["ledger"] = r.ledger ? json{{"k", r.ledger->k}, {"l", r.ledger->l}} : json(nullptr);
  return j.dump();
}

std::vector<PlyRecord> parse_trace(const std::string& jsonl) {
  std::vector<PlyRecord> out;
  std::istringstream in(jsonl);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      PlyRecord r;
      r.ply = j.at("ply").get<int>();
      auto p = j.at("player").get<std::string>();
      if (p != "P1" && p != "P2") throw ParseError("bad player " + p);
      r.player = p == "P1" ? Player::P1 : Player::P2;
      auto e = j.at("edge").get<std::string>();
      if (e == "stop")
        r.stop = true;
      else
        r.edge = parse_edge(e);
      if (j.contains("case") && !j["case"].is_null()) r.label = j["case"].get<std::string>();
      if (j.contains("ledger") && !j["ledger"].is_null())
        r.ledger = lemma::LostEdgeLedger{j["ledger"].at("k").get<int>(), j["ledger"].at("l").get<int>()};
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

Session::Session(BoardKind kind, int n, std::shared_ptr<const StrategyOptions> opts)
    : state_(GameState::create(kind, n)), aut_(kind, std::move(opts)) {}

std::vector<Edge> Session::p1_move(const Edge& e) {
  if (finished()) throw TurnError("game is over");
  GameState next = state_.apply_move(Player::P1, e);
  std::vector<Edge> out;
  state_ = std::move(next);
  trace_.push_back(PlyRecord{static_cast<int>(state_.history().size()), Player::P1, false, e, "", "", std::nullopt, {}});
  if (patterns::move_completed_target(state_, Player::P1, e)) {
    winner_ = Player::P1;
    return out;
  }
  p2_turn(out);
  return out;
}

std::vector<Edge> Session::p1_stop(int max_p2_moves) {
  if (finished()) throw TurnError("game is over");
  state_ = state_.apply_stop();
  trace_.push_back(PlyRecord{static_cast<int>(state_.history().size()), Player::P1, true, {}, "", "", std::nullopt, {}});
  std::vector<Edge> out;
  if (state_.history().size() == 1) {
    stalled_ = true;  // nothing to answer: P2 has no opening edge to respond to
    return out;
  }
  for (int i = 0; i < max_p2_moves && !finished(); ++i) p2_turn(out);
  if (!finished()) stalled_ = true;
  return out;
}

void Session::p2_turn(std::vector<Edge>& out) {
  StepResult r = state_.history().size() == 1 ? aut_.open(state_) : aut_.respond(state_);
  if (!r.move) {
    stalled_ = true;
    return;
  }
  state_ = state_.apply_move(Player::P2, *r.move);
  out.push_back(*r.move);
  trace_.push_back(PlyRecord{static_cast<int>(state_.history().size()), Player::P2, false, *r.move, r.label, r.note,
                             aut_.ledger(), r.events});
  if (patterns::move_completed_target(state_, Player::P2, *r.move)) winner_ = Player::P2;
}

}  // namespace ramsey
