#include "tripack/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tripack {

namespace {

bool sorted_contains(const std::vector<VertexId>& xs, VertexId x) {
  return std::binary_search(xs.begin(), xs.end(), x);
}

void sorted_insert(std::vector<VertexId>& xs, VertexId x) {
  xs.insert(std::lower_bound(xs.begin(), xs.end(), x), x);
}

void sorted_erase(std::vector<VertexId>& xs, VertexId x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  xs.erase(it);
}

std::size_t intersection_size(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// Forward triangle listing over sorted adjacency: each triangle a<b<c is
// reported once, from its smallest vertex.
template <typename Emit>
void for_each_triangle(const std::vector<std::vector<VertexId>>& adj, Emit&& emit) {
  for (VertexId a = 0; a < adj.size(); ++a) {
    const auto& na = adj[a];
    auto first_b = std::upper_bound(na.begin(), na.end(), a);
    for (auto bi = first_b; bi != na.end(); ++bi) {
      const VertexId b = *bi;
      const auto& nb = adj[b];
      auto i = bi + 1;
      auto j = std::upper_bound(nb.begin(), nb.end(), b);
      while (i != na.end() && j != nb.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          emit(a, b, *i);
          ++i;
          ++j;
        }
      }
    }
  }
}

std::vector<std::vector<VertexId>> adjacency(const EdgeStateGraph& g, EdgeScope scope) {
  std::vector<std::vector<VertexId>> adj(g.vertex_count());
  for (VertexId v = 0; v < adj.size(); ++v) {
    if (scope == EdgeScope::Unmatched) {
      auto nu = g.unmatched_neighbors(v);
      adj[v].assign(nu.begin(), nu.end());
    } else {
      adj[v] = g.neighbors(v);
    }
  }
  return adj;
}

}  // namespace

Edge Edge::make(VertexId a, VertexId b) {
  if (a == b) throw std::invalid_argument("edge endpoints must differ");
  return a < b ? Edge{a, b} : Edge{b, a};
}

Triangle Triangle::make(VertexId x, VertexId y, VertexId z) {
  if (x == y || y == z || x == z) throw std::invalid_argument("triangle vertices must differ");
  std::array<VertexId, 3> vs{x, y, z};
  std::sort(vs.begin(), vs.end());
  return Triangle{vs[0], vs[1], vs[2]};
}

EdgeStateGraph::EdgeStateGraph(std::size_t n) {
  if (n == 0) throw std::invalid_argument("graph needs at least one vertex");
  adj_u_.resize(n);
  adj_m_.resize(n);
}

void EdgeStateGraph::check_vertex(VertexId v) const {
  if (v >= vertex_count()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range for n=" +
                            std::to_string(vertex_count()));
  }
}

std::vector<VertexId> EdgeStateGraph::neighbors(VertexId v) const {
  check_vertex(v);
  std::vector<VertexId> out;
  out.reserve(degree(v));
  std::merge(adj_u_[v].begin(), adj_u_[v].end(), adj_m_[v].begin(), adj_m_[v].end(),
             std::back_inserter(out));
  return out;
}

std::optional<EdgeState> EdgeStateGraph::state(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return std::nullopt;
  if (sorted_contains(adj_u_[u], v)) return EdgeState::Unmatched;
  if (sorted_contains(adj_m_[u], v)) return EdgeState::Matched;
  return std::nullopt;
}

void EdgeStateGraph::add_edge(Edge e, EdgeState s) {
  e = Edge::make(e.u, e.v);
  if (has_edge(e.u, e.v)) {
    throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                ") already present");
  }
  sorted_insert(list(e.u, s), e.v);
  sorted_insert(list(e.v, s), e.u);
  (s == EdgeState::Unmatched ? edges_u_ : edges_m_) += 1;
}

void EdgeStateGraph::remove_edge(Edge e) {
  auto s = state(e.u, e.v);
  if (!s) {
    throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                ") not present");
  }
  sorted_erase(list(e.u, *s), e.v);
  sorted_erase(list(e.v, *s), e.u);
  (*s == EdgeState::Unmatched ? edges_u_ : edges_m_) -= 1;
}

void EdgeStateGraph::set_state(Edge e, EdgeState s) {
  auto cur = state(e.u, e.v);
  if (!cur) throw std::invalid_argument("cannot change state of an absent edge");
  if (*cur == s) return;
  remove_edge(e);
  add_edge(e, s);
}

void EdgeStateGraph::clear_unmatched() {
  for (auto& nbrs : adj_u_) nbrs.clear();
  edges_u_ = 0;
}

std::size_t EdgeStateGraph::codeg_unmatched(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("codegree needs two distinct vertices");
  return intersection_size(adj_u_[u], adj_u_[v]);
}

std::vector<VertexId> EdgeStateGraph::common_unmatched_neighbors(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("codegree needs two distinct vertices");
  std::vector<VertexId> out;
  std::set_intersection(adj_u_[u].begin(), adj_u_[u].end(), adj_u_[v].begin(), adj_u_[v].end(),
                        std::back_inserter(out));
  return out;
}

std::size_t EdgeStateGraph::codeg(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("codegree needs two distinct vertices");
  // U and M are disjoint at every vertex, so the four cross terms add up.
  return intersection_size(adj_u_[u], adj_u_[v]) + intersection_size(adj_u_[u], adj_m_[v]) +
         intersection_size(adj_m_[u], adj_u_[v]) + intersection_size(adj_m_[u], adj_m_[v]);
}

std::vector<VertexId> EdgeStateGraph::common_neighbors(VertexId u, VertexId v) const {
  if (u == v) throw std::invalid_argument("codegree needs two distinct vertices");
  const auto nu = neighbors(u);
  const auto nv = neighbors(v);
  std::vector<VertexId> out;
  std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(out));
  return out;
}

std::size_t EdgeStateGraph::apply_k11s_match(VertexId u, VertexId v,
                                             std::span<const VertexId> witnesses) {
  const Edge uv = Edge::make(u, v);
  if (has_edge(u, v)) throw std::invalid_argument("matched edge must not be present yet");
  for (VertexId w : witnesses) {
    if (w == u || w == v || state(u, w) != EdgeState::Unmatched ||
        state(v, w) != EdgeState::Unmatched) {
      throw std::invalid_argument("witness " + std::to_string(w) +
                                  " is not an unmatched common neighbor");
    }
  }
  if (witnesses.empty()) {
    add_edge(uv, EdgeState::Unmatched);
    return 0;
  }
  add_edge(uv, EdgeState::Matched);
  for (VertexId w : witnesses) {
    set_state(Edge::make(u, w), EdgeState::Matched);
    set_state(Edge::make(v, w), EdgeState::Matched);
  }
  return 2 * witnesses.size() + 1;
}

std::vector<Edge> EdgeStateGraph::edges(EdgeScope scope) const {
  std::vector<Edge> out;
  out.reserve(scope == EdgeScope::All ? edge_count() : edges_u_);
  for (VertexId u = 0; u < vertex_count(); ++u) {
    const auto nbrs = scope == EdgeScope::All ? neighbors(u) : adj_u_[u];
    for (auto it = std::upper_bound(nbrs.begin(), nbrs.end(), u); it != nbrs.end(); ++it) {
      out.push_back(Edge{u, *it});
    }
  }
  return out;
}

std::size_t count_triangles(const EdgeStateGraph& g, EdgeScope scope) {
  std::size_t count = 0;
  for_each_triangle(adjacency(g, scope), [&](VertexId, VertexId, VertexId) { ++count; });
  return count;
}

std::vector<Triangle> enumerate_triangles(const EdgeStateGraph& g, EdgeScope scope) {
  std::vector<Triangle> out;
  for_each_triangle(adjacency(g, scope),
                    [&](VertexId a, VertexId b, VertexId c) { out.push_back(Triangle{a, b, c}); });
  return out;
}

EdgeStateGraph complete_graph(std::size_t n) {
  EdgeStateGraph g(n);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) g.add_edge(Edge{u, v});
  }
  return g;
}

// ---------------------------------------------------------------------------
// EdgeStream

namespace {
constexpr std::size_t kBitsetVertexLimit = 16384;
}

EdgeStream::EdgeStream(std::size_t n, std::uint64_t seed)
    : n_(n),
      total_(static_cast<std::uint64_t>(n) * (n - 1) / 2),
      rng_(seed),
      use_bits_(n <= kBitsetVertexLimit) {
  if (n == 0) throw std::invalid_argument("edge stream needs at least one vertex");
  if (use_bits_) bits_.assign((static_cast<std::uint64_t>(n) * n + 63) / 64, 0);
}

bool EdgeStream::is_marked(std::uint64_t key) const {
  if (use_bits_) return (bits_[key >> 6] >> (key & 63)) & 1U;
  return drawn_set_.contains(key);
}

bool EdgeStream::test_and_mark(std::uint64_t key) {
  if (use_bits_) {
    auto& word = bits_[key >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (key & 63);
    if (word & mask) return false;
    word |= mask;
    return true;
  }
  return drawn_set_.insert(key).second;
}

void EdgeStream::switch_to_shuffled() {
  remaining_.reserve(total_ - drawn_);
  for (VertexId u = 0; u < n_; ++u) {
    for (VertexId v = u + 1; v < n_; ++v) {
      const Edge e{u, v};
      if (!is_marked(edge_key(e, n_))) remaining_.push_back(e);
    }
  }
  std::shuffle(remaining_.begin(), remaining_.end(), rng_);
  shuffled_ = true;
}

std::optional<Edge> EdgeStream::next() {
  if (drawn_ == total_) return std::nullopt;
  if (!shuffled_ && 2 * drawn_ >= total_) switch_to_shuffled();
  if (shuffled_) {
    const Edge e = remaining_.back();
    remaining_.pop_back();
    test_and_mark(edge_key(e, n_));
    ++drawn_;
    return e;
  }
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n_ - 1));
  for (;;) {
    const VertexId a = pick(rng_);
    const VertexId b = pick(rng_);
    if (a == b) continue;
    const Edge e = Edge::make(a, b);
    if (test_and_mark(edge_key(e, n_))) {
      ++drawn_;
      return e;
    }
  }
}

EdgeStateGraph sample_gnm(std::size_t n, std::uint64_t m, std::uint64_t seed) {
  EdgeStream stream(n, seed);
  if (m > stream.total()) throw std::invalid_argument("m exceeds C(n,2)");
  EdgeStateGraph g(n);
  for (std::uint64_t i = 0; i < m; ++i) g.add_edge(*stream.next());
  return g;
}

EdgeStateGraph sample_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  EdgeStateGraph g(n);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(Edge{u, v});
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Edge-list text format

EdgeStateGraph read_edge_list(std::istream& in, std::optional<std::size_t> n) {
  struct Row {
    Edge e;
    EdgeState s;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  VertexId max_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      // "# n=<count>" written by write_edge_list preserves isolated vertices.
      if (!n && line.compare(first, 4, "# n=") == 0) n = std::stoul(line.substr(first + 4));
      continue;
    }
    std::istringstream fields(line);
    long long a = -1;
    long long b = -1;
    if (!(fields >> a >> b) || a < 0 || b < 0) {
      throw std::runtime_error("edge list line " + std::to_string(line_no) + ": expected \"u v\"");
    }
    EdgeState s = EdgeState::Unmatched;
    std::string tag;
    if (fields >> tag) {
      if (tag == "M") {
        s = EdgeState::Matched;
      } else if (tag != "U") {
        throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                 ": state must be U or M");
      }
    }
    if (a == b) throw std::runtime_error("edge list line " + std::to_string(line_no) + ": loop");
    rows.push_back({Edge::make(static_cast<VertexId>(a), static_cast<VertexId>(b)), s});
    max_id = std::max(max_id, rows.back().e.v);
  }
  const std::size_t vertices = n.value_or(rows.empty() ? 1 : std::size_t{max_id} + 1);
  EdgeStateGraph g(vertices);
  for (const auto& r : rows) {
    if (r.e.v >= vertices) throw std::runtime_error("edge list vertex id exceeds n");
    if (g.has_edge(r.e.u, r.e.v)) {
      throw std::runtime_error("edge list repeats edge " + std::to_string(r.e.u) + " " +
                               std::to_string(r.e.v));
    }
    g.add_edge(r.e, r.s);
  }
  return g;
}

void write_edge_list(std::ostream& out, const EdgeStateGraph& g) {
  out << "# n=" << g.vertex_count() << '\n';
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << (g.state(e.u, e.v) == EdgeState::Matched ? 'M' : 'U')
        << '\n';
  }
}

}  // namespace tripack
