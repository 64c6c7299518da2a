#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <unordered_set>
#include <vector>

namespace tripack {

using VertexId = std::uint32_t;

/// Undirected edge with canonical ordering u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  /// Canonicalizes the endpoint order. Throws std::invalid_argument on a loop.
  static Edge make(VertexId a, VertexId b);

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Vertex triple a < b < c.
struct Triangle {
  VertexId a = 0;
  VertexId b = 0;
  VertexId c = 0;

  static Triangle make(VertexId x, VertexId y, VertexId z);
  std::array<Edge, 3> edges() const { return {Edge{a, b}, Edge{a, c}, Edge{b, c}}; }

  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

enum class EdgeState : std::uint8_t { Unmatched, Matched };

enum class EdgeScope : std::uint8_t { All, Unmatched };

/// Collision-free integer key u*n + v for a canonical edge.
inline std::uint64_t edge_key(const Edge& e, std::size_t n) {
  return static_cast<std::uint64_t>(e.u) * n + e.v;
}

/// Graph whose edges are partitioned into an unmatched class U and a matched
/// class M. Neighbor lists are kept sorted so codegrees are merge scans.
class EdgeStateGraph {
 public:
  explicit EdgeStateGraph(std::size_t n);

  std::size_t vertex_count() const { return adj_u_.size(); }
  std::size_t unmatched_edge_count() const { return edges_u_; }
  std::size_t matched_edge_count() const { return edges_m_; }
  std::size_t edge_count() const { return edges_u_ + edges_m_; }

  std::span<const VertexId> unmatched_neighbors(VertexId v) const { return adj_u_.at(v); }
  std::span<const VertexId> matched_neighbors(VertexId v) const { return adj_m_.at(v); }
  /// Sorted union of both neighbor classes.
  std::vector<VertexId> neighbors(VertexId v) const;

  std::size_t unmatched_degree(VertexId v) const { return adj_u_.at(v).size(); }
  std::size_t matched_degree(VertexId v) const { return adj_m_.at(v).size(); }
  std::size_t degree(VertexId v) const { return unmatched_degree(v) + matched_degree(v); }

  std::optional<EdgeState> state(VertexId u, VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const { return state(u, v).has_value(); }

  /// Inserts a new edge. Throws std::invalid_argument if it is already present.
  void add_edge(Edge e, EdgeState s = EdgeState::Unmatched);
  /// Removes an edge of either class. Throws std::invalid_argument if absent.
  void remove_edge(Edge e);
  /// Moves a present edge to class `s`.
  void set_state(Edge e, EdgeState s);
  /// Drops every unmatched edge; matched edges are untouched.
  void clear_unmatched();

  std::size_t codeg_unmatched(VertexId u, VertexId v) const;
  std::vector<VertexId> common_unmatched_neighbors(VertexId u, VertexId v) const;
  /// Codegree over U ∪ M.
  std::size_t codeg(VertexId u, VertexId v) const;
  std::vector<VertexId> common_neighbors(VertexId u, VertexId v) const;

  /// Inserts uv as matched and moves {uw, vw : w in witnesses} from U to M.
  /// With no witnesses uv is inserted unmatched instead and 0 is returned;
  /// otherwise returns the number of edges that entered M (2s + 1).
  std::size_t apply_k11s_match(VertexId u, VertexId v, std::span<const VertexId> witnesses);

  std::vector<Edge> edges(EdgeScope scope = EdgeScope::All) const;

 private:
  void check_vertex(VertexId v) const;
  std::vector<VertexId>& list(VertexId v, EdgeState s) { return s == EdgeState::Unmatched ? adj_u_[v] : adj_m_[v]; }

  std::vector<std::vector<VertexId>> adj_u_;
  std::vector<std::vector<VertexId>> adj_m_;
  std::size_t edges_u_ = 0;
  std::size_t edges_m_ = 0;
};

std::size_t count_triangles(const EdgeStateGraph& g, EdgeScope scope = EdgeScope::All);
std::vector<Triangle> enumerate_triangles(const EdgeStateGraph& g, EdgeScope scope = EdgeScope::All);

EdgeStateGraph complete_graph(std::size_t n);

/// Source of edges for the insertion processes.
class EdgeSource {
 public:
  virtual ~EdgeSource() = default;
  /// Next edge, or nullopt once the source is exhausted.
  virtual std::optional<Edge> next() = 0;
};

/// Uniform edges without replacement over all C(n,2) pairs. Uses rejection
/// sampling against the drawn set until half of the pairs are gone, then
/// shuffles the remainder once and serves it in order.
class EdgeStream final : public EdgeSource {
 public:
  EdgeStream(std::size_t n, std::uint64_t seed);

  std::optional<Edge> next() override;

  std::size_t vertex_count() const { return n_; }
  std::uint64_t drawn() const { return drawn_; }
  std::uint64_t total() const { return total_; }
  bool exhausted() const { return drawn_ == total_; }
  /// Generator shared with consumers that need extra randomness per run.
  std::mt19937_64& rng() { return rng_; }

 private:
  bool test_and_mark(std::uint64_t key);
  bool is_marked(std::uint64_t key) const;
  void switch_to_shuffled();

  std::size_t n_;
  std::uint64_t total_;
  std::uint64_t drawn_ = 0;
  std::mt19937_64 rng_;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> drawn_set_;
  bool use_bits_;
  bool shuffled_ = false;
  std::vector<Edge> remaining_;
};

/// Replays a fixed edge list; used for scripted process runs.
class ScriptedEdgeSource final : public EdgeSource {
 public:
  explicit ScriptedEdgeSource(std::vector<Edge> edges) : edges_(std::move(edges)) {}
  std::optional<Edge> next() override {
    if (pos_ == edges_.size()) return std::nullopt;
    return edges_[pos_++];
  }

 private:
  std::vector<Edge> edges_;
  std::size_t pos_ = 0;
};

/// Uniform G(n, m) sample (distinct edges, all unmatched).
EdgeStateGraph sample_gnm(std::size_t n, std::uint64_t m, std::uint64_t seed);
/// Binomial G(n, p) sample.
EdgeStateGraph sample_gnp(std::size_t n, double p, std::uint64_t seed);

// Edge-list text format: "u v [U|M]" per line, '#' starts a comment line.
// When n is not given it is taken from a "# n=<count>" comment, else inferred
// as max id + 1.
EdgeStateGraph read_edge_list(std::istream& in, std::optional<std::size_t> n = std::nullopt);
void write_edge_list(std::ostream& out, const EdgeStateGraph& g);

}  // namespace tripack
