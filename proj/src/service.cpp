#include "ramsey/service.hpp"

#include <random>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "ramsey/patterns.hpp"

namespace ramsey {

using nlohmann::json;

namespace {

HttpReply error(int status, const std::string& code, const std::string& message) {
  return {status, json{{"error", code}, {"message", message}}.dump()};
}

json edge_list(const std::vector<Edge>& es) {
  json a = json::array();
  for (const auto& e : es) a.push_back(to_string(e));
  return a;
}

json threat_list(const GameState& s, Player p) {
  std::set<Edge> seen;
  for (const auto& t : patterns::threats(s, p)) seen.insert(t.edge);
  return edge_list({seen.begin(), seen.end()});
}

json winner_json(const Session& s) { return s.winner() ? json(player_name(*s.winner())) : json(nullptr); }

json ledger_json(const Session& s) {
  auto l = s.automaton().ledger();
  return l ? json{{"k", l->k}, {"l", l->l}} : json(nullptr);
}

json pb_json(const Session& s) {
  auto pb = s.automaton().potential_base(s.state());
  return pb ? json(*pb) : json(nullptr);
}

}  // namespace

std::shared_ptr<GameRegistry::Entry> GameRegistry::find(const std::string& id) {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = games_.find(id);
  return it == games_.end() ? nullptr : it->second;
}

HttpReply GameRegistry::create(const std::string& body) {
  json req;
  try {
    req = body.empty() ? json::object() : json::parse(body);
  } catch (const json::exception& e) {
    return error(400, "bad_request", e.what());
  }
  std::string game;
  int n = 0;
  std::shared_ptr<Entry> entry;
  try {
    if (!req.is_object()) return error(400, "bad_request", "expected a JSON object");
    game = req.value("game", std::string("graph"));
    if (game != "graph" && game != "hyper") return error(400, "bad_request", "game must be graph or hyper");
    BoardKind kind = game == "graph" ? BoardKind::TwoCliques : BoardKind::Hyper4;
    n = req.value("n", kind == BoardKind::TwoCliques ? 14 : 10);
    entry = std::make_shared<Entry>(kind, n);
  } catch (const std::exception& e) {
    return error(400, "bad_request", e.what());
  }
  evict_idle();
  std::string id;
  {
    std::lock_guard<std::mutex> lk(mu_);
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    char buf[32];
    std::snprintf(buf, sizeof buf, "g%llu-%06llx", ++next_, static_cast<unsigned long long>(rng() & 0xffffff));
    id = buf;
    games_[id] = entry;
  }
  return {201, json{{"id", id}, {"to_move", "P1"}, {"game", game}, {"n", n}}.dump()};
}

HttpReply GameRegistry::move(const std::string& id, const std::string& body) {
  auto entry = find(id);
  if (!entry) return error(404, "unknown_game", "no game " + id);
  std::string text;
  try {
    json req = json::parse(body);
    text = req.at("edge").get<std::string>();
  } catch (const json::exception& e) {
    return error(400, "bad_request", std::string("expected {\"edge\": ...}: ") + e.what());
  }
  std::lock_guard<std::mutex> lk(entry->mu);
  entry->touched = std::chrono::steady_clock::now();
  Session& s = entry->session;
  if (s.finished()) return error(409, "game_over", "the game has finished");
  std::vector<Edge> replies;
  try {
    if (text == "stop") {
      replies = s.p1_stop();
    } else {
      replies = s.p1_move(parse_edge(text));
    }
  } catch (const ParseError& e) {
    return error(400, "bad_edge", e.what());
  } catch (const IllegalMove& e) {
    return error(400, "illegal_move", e.what());
  } catch (const TurnError& e) {
    return error(409, "turn_error", e.what());
  } catch (const BoardTooSmall& e) {
    return error(500, "board_too_small", e.what());
  } catch (const std::exception& e) {
    return error(500, "internal", e.what());
  }
  json out{{"p2_moves", edge_list(replies)},
           {"case", s.current_case()},
           {"ledger", ledger_json(s)},
           {"threats", {{"P1", threat_list(s.state(), Player::P1)}, {"P2", threat_list(s.state(), Player::P2)}}},
           {"potential_base", pb_json(s)},
           {"finished", s.finished()},
           {"winner", winner_json(s)}};
  return {200, out.dump()};
}

HttpReply GameRegistry::state(const std::string& id) {
  auto entry = find(id);
  if (!entry) return error(404, "unknown_game", "no game " + id);
  std::lock_guard<std::mutex> lk(entry->mu);
  const Session& s = entry->session;
  const GameState& g = s.state();
  json trace = json::array();
  for (const auto& r : s.trace()) trace.push_back(json::parse(trace_line(r)));
  json out{{"id", id},
           {"game", g.kind() == BoardKind::TwoCliques ? "graph" : "hyper"},
           {"n", g.n()},
           {"to_move", s.finished() ? json(nullptr) : json(player_name(g.to_move()))},
           {"p1_stopped", g.p1_stopped()},
           {"edges", {{"P1", edge_list(g.edges_owned(Owner::P1))}, {"P2", edge_list(g.edges_owned(Owner::P2))}}},
           {"case", s.current_case()},
           {"ledger", ledger_json(s)},
           {"potential_base", pb_json(s)},
           {"finished", s.finished()},
           {"winner", winner_json(s)},
           {"trace", trace}};
  return {200, out.dump()};
}

HttpReply GameRegistry::hints(const std::string& id) {
  auto entry = find(id);
  if (!entry) return error(404, "unknown_game", "no game " + id);
  std::lock_guard<std::mutex> lk(entry->mu);
  const Session& s = entry->session;
  json legal = s.finished() ? json::array() : edge_list(s.state().unclaimed_edges());
  return {200, json{{"legal", legal}, {"stop_allowed", !s.finished() && !s.state().history().empty()}}.dump()};
}

size_t GameRegistry::evict_idle() {
  auto now = std::chrono::steady_clock::now();
  std::lock_guard<std::mutex> lk(mu_);
  size_t gone = 0;
  for (auto it = games_.begin(); it != games_.end();) {
    if (now - it->second->touched > idle_) {
      it = games_.erase(it);
      ++gone;
    } else {
      ++it;
    }
  }
  return gone;
}

size_t GameRegistry::size() {
  std::lock_guard<std::mutex> lk(mu_);
  return games_.size();
}

int serve(const std::string& host, int port, ServeControl* ctl) {
  GameRegistry reg;
  httplib::Server srv;
  auto send = [](httplib::Response& res, const HttpReply& r) {
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body, "application/json");
  };
  srv.Post("/game", [&](const httplib::Request& req, httplib::Response& res) { send(res, reg.create(req.body)); });
  srv.Post(R"(/game/([^/]+)/move)", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, reg.move(req.matches[1], req.body));
  });
  srv.Get(R"(/game/([^/]+)/state)", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, reg.state(req.matches[1]));
  });
  srv.Get(R"(/game/([^/]+)/hints)", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, reg.hints(req.matches[1]));
  });
  srv.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.status = 204;
  });
  if (port == 0) {
    port = srv.bind_to_any_port(host);
    if (port < 0) return 1;
  } else if (!srv.bind_to_port(host, port)) {
    return 1;
  }
  std::thread watcher;
  if (ctl) {
    ctl->port = port;
    watcher = std::thread([&] {
      while (!ctl->stop) std::this_thread::sleep_for(std::chrono::milliseconds(20));
      srv.stop();
    });
  }
  bool ok = srv.listen_after_bind();
  if (watcher.joinable()) {
    ctl->stop = true;
    watcher.join();
  }
  return ok ? 0 : 1;
}

}  // namespace ramsey
