#include "ramsey/explain.hpp"

#include <algorithm>

#include "json.hpp"

namespace ramsey {

using nlohmann::json;

ExplainResult explain_trace(const std::vector<PlyRecord>& trace, int n) {
  ExplainResult out;
  auto first = std::find_if(trace.begin(), trace.end(), [](const PlyRecord& r) { return !r.stop; });
  if (first == trace.end()) throw ParseError("trace has no edges");
  BoardKind kind = first->edge.arity == 4 ? BoardKind::Hyper4 : BoardKind::TwoCliques;
  int need = 0;
  for (const auto& r : trace)
    if (!r.stop)
      for (int i = 0; i < r.edge.arity; ++i) need = std::max(need, r.edge.v[i] + 1);
  if (n <= 0) n = kind == BoardKind::TwoCliques ? 14 : 10;
  n = std::max(n, need);

  Session sess(kind, n);
  for (const auto& r : trace) {
    if (r.player != Player::P1) continue;
    if (sess.finished()) break;
    if (r.stop)
      sess.p1_stop();
    else
      sess.p1_move(r.edge);
  }

  const auto& replayed = sess.trace();
  for (size_t i = 0; i < replayed.size(); ++i) {
    const PlyRecord& p = replayed[i];
    json j = json::parse(trace_line(p));
    if (!p.note.empty()) j["note"] = p.note;
    json failed = json::array();
    for (const auto& ev : p.events)
      if (!ev.ok) failed.push_back(std::string(event_kind_name(ev.kind)) + " " + ev.node + ": " + ev.detail);
    if (!failed.empty()) j["failed_checks"] = failed;
    if (i < trace.size()) {
      const PlyRecord& t = trace[i];
      bool same = t.player == p.player && t.stop == p.stop && (t.stop || t.edge == p.edge);
      if (!same) {
        out.consistent = false;
        j["recorded"] = t.stop ? std::string("stop") : to_string(t.edge);
      }
    }
    out.lines.push_back(j.dump());
  }
  if (replayed.size() < trace.size()) out.consistent = false;

  const Automaton& a = sess.automaton();
  out.path = kind == BoardKind::TwoCliques ? a.g.path : a.h.path;
  if (kind == BoardKind::TwoCliques) {
    out.end_case = a.g.end_case;
  } else if (!out.path.empty()) {
    out.end_case = out.path.back();
  }
  json summary{{"path", out.path},
               {"end_case", out.end_case.empty() ? json(nullptr) : json(out.end_case)},
               {"consistent", out.consistent},
               {"finished", sess.finished()},
               {"winner", sess.winner() ? json(player_name(*sess.winner())) : json(nullptr)}};
  out.lines.push_back(summary.dump());
  return out;
}

}  // namespace ramsey
