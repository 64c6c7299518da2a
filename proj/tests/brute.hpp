// Naive reference computations used as test oracles. Everything here works on
// a dense adjacency matrix and shares no code with the library beyond the
// graph container used to read edges out.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "tripack/graph.hpp"

namespace brute {

using Matrix = std::vector<std::vector<char>>;

inline Matrix adjacency(const tripack::EdgeStateGraph& g, tripack::EdgeScope scope) {
  const std::size_t n = g.vertex_count();
  Matrix a(n, std::vector<char>(n, 0));
  for (const auto& e : g.edges(scope)) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

inline std::size_t codegree(const Matrix& a, std::size_t u, std::size_t v) {
  std::size_t c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) c += a[u][w] && a[v][w];
  return c;
}

inline std::size_t triangles(const Matrix& a) {
  const std::size_t n = a.size();
  std::size_t t = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) t += a[i][j] && a[j][k] && a[i][k];
  return t;
}

inline bool triangle_free(const Matrix& a) { return triangles(a) == 0; }

struct EdgeTriangles {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::uint32_t> tri_masks;  // bit e set if edge e is in the triangle
};

inline EdgeTriangles edge_triangles(const Matrix& a) {
  EdgeTriangles et;
  const std::size_t n = a.size();
  std::vector<std::vector<int>> id(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a[i][j]) {
        id[i][j] = static_cast<int>(et.edges.size());
        et.edges.emplace_back(i, j);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (a[i][j] && a[j][k] && a[i][k]) {
          et.tri_masks.push_back((1U << id[i][j]) | (1U << id[j][k]) | (1U << id[i][k]));
        }
  return et;
}

/// Largest family of pairwise edge-disjoint triangles, over all subsets.
/// Needs at most 20 edges and 20 triangles.
inline std::size_t nu(const EdgeTriangles& et) {
  const std::size_t t = et.tri_masks.size();
  std::size_t best = 0;
  for (std::uint32_t sub = 0; sub < (1U << t); ++sub) {
    std::uint32_t used = 0;
    bool ok = true;
    for (std::size_t k = 0; k < t && ok; ++k) {
      if (!(sub >> k & 1U)) continue;
      ok = (used & et.tri_masks[k]) == 0;
      used |= et.tri_masks[k];
    }
    if (ok) best = std::max<std::size_t>(best, std::popcount(sub));
  }
  return best;
}

/// Smallest edge set meeting every triangle, over all edge subsets.
inline std::size_t tau(const EdgeTriangles& et) {
  const std::size_t m = et.edges.size();
  std::size_t best = m;
  for (std::uint32_t sub = 0; sub < (1U << m); ++sub) {
    const std::size_t size = std::popcount(sub);
    if (size >= best) continue;
    bool ok = true;
    for (auto mask : et.tri_masks) {
      if ((mask & sub) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) best = size;
  }
  return et.tri_masks.empty() ? 0 : best;
}

/// |C_r(v)| for all r: vertices u != v by their U-codegree with v.
inline std::vector<std::size_t> c_counts(const Matrix& u_adj, std::size_t v) {
  std::vector<std::size_t> out(u_adj.size(), 0);
  for (std::size_t x = 0; x < u_adj.size(); ++x)
    if (x != v) ++out[codegree(u_adj, v, x)];
  return out;
}

/// |P_r(u,v)|: w adjacent in U to exactly one of u, v, bucketed by its
/// U-codegree with the other endpoint.
inline std::vector<std::size_t> p_counts(const Matrix& u_adj, std::size_t u, std::size_t v) {
  std::vector<std::size_t> out(u_adj.size(), 0);
  for (std::size_t w = 0; w < u_adj.size(); ++w) {
    if (w == u || w == v) continue;
    const bool wu = u_adj[w][u], wv = u_adj[w][v];
    if (wu == wv) continue;
    ++out[codegree(u_adj, w, wu ? v : u)];
  }
  return out;
}

/// |Q_{r,s}(u,v)| as a dense (n x n) table indexed [r][s].
inline std::vector<std::vector<std::size_t>> q_counts(const Matrix& u_adj, std::size_t u, std::size_t v) {
  const std::size_t n = u_adj.size();
  std::vector<std::vector<std::size_t>> out(n, std::vector<std::size_t>(n, 0));
  for (std::size_t w = 0; w < n; ++w) {
    if (w == u || w == v) continue;
    ++out[codegree(u_adj, w, u)][codegree(u_adj, w, v)];
  }
  return out;
}

}  // namespace brute
