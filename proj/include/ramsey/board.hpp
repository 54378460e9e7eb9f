#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ramsey {

enum class BoardKind : uint8_t { TwoCliques, Hyper4 };
enum class Player : uint8_t { P1, P2 };
enum class Owner : uint8_t { None, P1, P2 };

inline Owner owner_of(Player p) { return p == Player::P1 ? Owner::P1 : Owner::P2; }
inline Player other(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }
const char* player_name(Player p);
const char* owner_name(Owner o);

constexpr int kMaxGraphN = 32;
constexpr int kMaxHyperN = 24;

struct ConfigError : std::runtime_error { using std::runtime_error::runtime_error; };
struct IllegalMove : std::runtime_error { using std::runtime_error::runtime_error; };
struct TurnError : std::runtime_error { using std::runtime_error::runtime_error; };
struct BoardTooSmall : std::runtime_error { using std::runtime_error::runtime_error; };
struct InternalInvariantViolation : std::runtime_error { using std::runtime_error::runtime_error; };
struct PreconditionError : std::runtime_error { using std::runtime_error::runtime_error; };
struct ParseError : std::runtime_error { using std::runtime_error::runtime_error; };

// copy is 1 or 2 on the two-cliques board and 0 on the hypergraph board.
struct Vertex {
  int copy = 0;
  int v = 0;
  auto operator<=>(const Vertex&) const = default;
};

std::string to_string(const Vertex& v);

struct Edge {
  uint8_t copy = 0;
  uint8_t arity = 2;
  std::array<uint8_t, 4> v{};

  static Edge graph(int copy, int a, int b);
  static Edge hyper(int a, int b, int c, int d);

  bool contains(int x) const;
  int other(int x) const;  // graph edges only
  bool operator==(const Edge& o) const {
    return copy == o.copy && arity == o.arity && v == o.v;
  }
  bool operator<(const Edge& o) const {
    if (copy != o.copy) return copy < o.copy;
    if (arity != o.arity) return arity < o.arity;
    return v < o.v;
  }
};

std::string to_string(const Edge& e);
Edge parse_edge(std::string_view text);

struct Move {
  Player player = Player::P1;
  bool stop = false;
  Edge edge{};
};

// Ownership of one clique (or one XY view of the hypergraph) as adjacency bitmasks.
struct OwnGraph {
  int n = 0;
  uint32_t verts = 0;
  std::array<uint32_t, kMaxGraphN> adj1{};
  std::array<uint32_t, kMaxGraphN> adj2{};

  static OwnGraph empty(int n);

  Owner at(int a, int b) const {
    if (adj1[a] >> b & 1u) return Owner::P1;
    if (adj2[a] >> b & 1u) return Owner::P2;
    return Owner::None;
  }
  bool p1(int a, int b) const { return adj1[a] >> b & 1u; }
  bool p2(int a, int b) const { return adj2[a] >> b & 1u; }
  bool free_edge(int a, int b) const { return !((adj1[a] | adj2[a]) >> b & 1u); }
  uint32_t nb(Owner o, int v) const {
    if (o == Owner::P1) return adj1[v];
    if (o == Owner::P2) return adj2[v];
    return verts & ~(adj1[v] | adj2[v] | 1u << v);
  }
  int deg1(int v) const { return std::popcount(adj1[v]); }
  int deg2(int v) const { return std::popcount(adj2[v]); }
  void set(int a, int b, Owner o);
  int count(Owner o) const;
  std::vector<std::pair<int, int>> edges(Owner o) const;
};

// Immutable game position. apply_move and apply_stop return new values.
class GameState {
 public:
  static GameState create(BoardKind kind, int n);

  BoardKind kind() const { return kind_; }
  int n() const { return n_; }
  Player to_move() const { return to_move_; }
  bool p1_stopped() const { return p1_stopped_; }
  const std::vector<Move>& history() const { return history_; }

  bool on_board(const Edge& e) const;
  Owner owner(const Edge& e) const;
  GameState apply_move(Player p, const Edge& e) const;
  GameState apply_stop() const;

  int degree(Player p, const Vertex& v) const;
  bool is_free_vertex(const Vertex& v) const;
  bool is_p1_free_vertex(const Vertex& v) const;
  std::optional<int> lowest_free_vertex(int copy, uint32_t exclude = 0) const;
  int require_free_vertex(int copy, uint32_t exclude = 0) const;

  const OwnGraph& clique(int copy) const;
  OwnGraph xy_view(int x, int y) const;

  int count(Owner o) const;
  std::size_t edge_count() const;
  std::vector<Edge> all_edges() const;
  std::vector<Edge> edges_owned(Owner o) const;
  std::vector<Edge> unclaimed_edges() const;
  std::optional<Edge> last_p1_edge() const;

 private:
  void claim(const Edge& e, Owner o);

  BoardKind kind_ = BoardKind::TwoCliques;
  int n_ = 0;
  Player to_move_ = Player::P1;
  bool p1_stopped_ = false;
  std::vector<Move> history_;
  std::array<OwnGraph, 2> cliques_{};
  std::vector<uint8_t> hyper_;
  std::array<std::array<uint8_t, kMaxHyperN>, 2> hdeg_{};
};

int hyper_rank(const Edge& e);
Edge hyper_unrank(int rank);
long long binom(int n, int k);

GameState replay(BoardKind kind, int n, const std::vector<Move>& moves);

}  // namespace ramsey
