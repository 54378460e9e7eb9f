#include "ramsey/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ramsey/explain.hpp"
#include "ramsey/oracle.hpp"
#include "ramsey/service.hpp"
#include "ramsey/session.hpp"
#include "ramsey/verifier.hpp"

namespace ramsey {

namespace {

struct Flags {
  std::string game = "graph";
  int n = 0;
  int depth = 5;
  long playouts = 0;
  uint64_t seed = 1;
  int budget = 0;
  std::string trace;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::vector<std::string> prefix;
  std::vector<std::string> remove;
  bool no_reduce = false;
  bool stub = false;
  std::string target = "g";
  int copies = 2;
  std::string file;
};

BoardKind kind_of(const Flags& f) { return f.game == "hyper" ? BoardKind::Hyper4 : BoardKind::TwoCliques; }
int default_n(const Flags& f) { return f.n > 0 ? f.n : (f.game == "hyper" ? 10 : 14); }

void add_game(CLI::App* app, Flags& f, int min_n = 6) {
  app->add_option("--game", f.game, "graph or hyper")->check(CLI::IsMember({"graph", "hyper"}));
  app->add_option("--n", f.n, "board size")->check(CLI::Range(min_n, kMaxGraphN));
}

int cmd_play(const Flags& f, std::istream& in, std::ostream& out, std::ostream& err) {
  Session s(kind_of(f), default_n(f));
  std::string line;
  while (!s.finished() && std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    std::vector<Edge> replies;
    try {
      replies = line == "stop" ? s.p1_stop() : s.p1_move(parse_edge(line));
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      continue;
    }
    // each reply is printed with the case that produced it
    const auto& tr = s.trace();
    size_t first = tr.size() - replies.size();
    for (size_t i = first; i < tr.size(); ++i) out << to_string(tr[i].edge) << " case=" << tr[i].label << "\n";
    out.flush();
  }
  if (s.finished()) out << "winner=" << (s.winner() ? player_name(*s.winner()) : "none") << "\n";
  if (!f.trace.empty()) {
    std::ofstream t(f.trace);
    for (const auto& r : s.trace()) t << trace_line(r) << "\n";
  }
  return s.winner() == Player::P1 ? 1 : 0;
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream& err) {
  VerifyOptions o;
  o.kind = kind_of(f);
  o.n = default_n(f);
  o.depth = f.depth;
  o.playouts = f.playouts;
  o.seed = f.seed;
  o.reduce = !f.no_reduce;
  o.prefix = f.prefix;
  if (f.budget > 0) o.max_p1_moves = f.budget;
  if (!f.remove.empty() || f.stub) {
    auto so = std::make_shared<StrategyOptions>();
    so->removed_branches = {f.remove.begin(), f.remove.end()};
    so->mirror_stub = f.stub;
    o.strategy = so;
  }
  Verdict v;
  try {
    v = f.playouts > 0 ? stochastic_verify(o) : exhaustive_verify(o);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  out << verdict_json(v) << "\n";
  if (!f.trace.empty())
    for (size_t i = 0; i < v.violations.size(); ++i) {
      std::ofstream t(i == 0 ? f.trace : f.trace + "." + std::to_string(i));
      t << issue_trace_jsonl(v, v.violations[i]);
    }
  return v.safe() ? 0 : 1;
}

int cmd_solve(const Flags& f, std::ostream& out, std::ostream& err) {
  oracle::Target t = f.target == "k3" ? oracle::Target::triangle() : oracle::Target::k6_minus_k4();
  int n = f.n > 0 ? f.n : 6;
  try {
    auto r = oracle::oracle_solve({f.copies, n}, t, f.budget);
    out << r.json() << "\n";
  } catch (const oracle::ResourceError& e) {
    out << nlohmann::json{{"mode", "oracle"}, {"error", e.what()}, {"states", e.nodes}}.dump() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_explain(const Flags& f, std::ostream& out, std::ostream& err) {
  std::ifstream in(f.file);
  if (!in) {
    err << "error: cannot read " << f.file << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    auto r = explain_trace(parse_trace(ss.str()), f.n);
    for (const auto& l : r.lines) out << l << "\n";
    return r.consistent ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"strong Ramsey game drawing strategies"};
  app.require_subcommand(1);

  auto* play = app.add_subcommand("play", "play P1 from standard input against P2's strategy");
  add_game(play, f);
  play->add_option("--trace", f.trace, "write the game trace (JSON lines)");

  auto* verify = app.add_subcommand("verify", "exhaustive or stochastic verification");
  add_game(verify, f);
  verify->add_option("--depth", f.depth, "P1 moves enumerated exhaustively")->check(CLI::Range(0, 12));
  verify->add_option("--playouts", f.playouts, "random playouts (switches to stochastic mode)")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", f.seed, "playout seed (RAMSEY_SEED overrides)");
  verify->add_option("--budget", f.budget, "P1 moves per playout")->check(CLI::PositiveNumber);
  verify->add_option("--trace", f.trace, "write violation traces here");
  verify->add_option("--prefix", f.prefix, "P1 moves played first, e.g. CD AE K1")->delimiter(',');
  verify->add_option("--remove-branch", f.remove, "drop a strategy branch (mutation)");
  verify->add_flag("--no-reduce", f.no_reduce, "disable isomorphism reduction");
  verify->add_flag("--stub", f.stub, "replace P2 by a copycat");

  auto* solve = app.add_subcommand("solve", "exact minimax oracle for small boards");
  add_game(solve, f, 3);
  solve->add_option("--budget", f.budget, "total move budget")->required()->check(CLI::NonNegativeNumber);
  solve->add_option("--target", f.target, "g or k3")->check(CLI::IsMember({"g", "k3"}));
  solve->add_option("--copies", f.copies, "1 or 2 cliques")->check(CLI::Range(1, 2));

  auto* explain = app.add_subcommand("explain", "annotate a trace with case labels");
  explain->add_option("file", f.file, "trace file (JSON lines)")->required();
  explain->add_option("--n", f.n, "board size");

  auto* serve_cmd = app.add_subcommand("serve", "HTTP bridge for the playground");
  serve_cmd->add_option("--port", f.port, "port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", f.host, "bind address");

  // CLI11 prints through std::cout / std::cerr; route through the given streams
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }
  if (const char* s = std::getenv("RAMSEY_SEED")) {
    try {
      f.seed = std::stoull(s);
    } catch (const std::exception&) {
      err << "usage error: RAMSEY_SEED must be an unsigned integer\n";
      return 2;
    }
  }
  if (f.game == "hyper" && f.n > kMaxHyperN) {
    err << "usage error: hyper boards allow n <= " << kMaxHyperN << "\n";
    return 2;
  }
  try {
    if (*play) return cmd_play(f, in, out, err);
    if (*verify) return cmd_verify(f, out, err);
    if (*solve) return cmd_solve(f, out, err);
    if (*explain) return cmd_explain(f, out, err);
    if (*serve_cmd) {
      err << "serving on " << f.host << ":" << f.port << "\n";
      if (serve(f.host, f.port) != 0) {
        err << "error: cannot listen on " << f.host << ":" << f.port << "\n";
        return 2;
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ramsey
