#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "tripack/graph.hpp"

namespace tripack {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;
inline constexpr std::size_t kOracleTriangleLimit = 50'000;

/// Triangles of a graph indexed by edge. Edge indices follow the sorted edge
/// order, so ties broken by lowest index are deterministic.
struct TriangleSystem {
  std::vector<Edge> edges;
  std::vector<Triangle> triangles;
  std::vector<std::array<std::uint32_t, 3>> triangle_edges;  ///< sorted edge indices
  std::vector<std::vector<std::uint32_t>> edge_to_triangles;

  /// Throws std::length_error above kOracleTriangleLimit triangles.
  static TriangleSystem build(const EdgeStateGraph& g);
  std::size_t edge_count() const { return edges.size(); }
  std::size_t triangle_count() const { return triangles.size(); }
};

struct PackingResult {
  std::size_t nu = 0;
  std::vector<Triangle> certificate;
  std::uint64_t nodes = 0;
  bool optimal = true;
  std::size_t upper_bound = 0;  ///< equals nu when optimal
};

struct CoverResult {
  std::size_t tau = 0;
  std::vector<Edge> certificate;
  std::uint64_t nodes = 0;
  bool optimal = true;
  std::size_t lower_bound = 0;  ///< equals tau when optimal
};

/// Maximum set of edge-disjoint triangles by branch and bound. Branches on the
/// live edge contained in the fewest live triangles: one child per triangle
/// through it, plus a child where the edge stays unused. On budget exhaustion
/// the best packing found is returned with optimal = false.
PackingResult exact_nu(const TriangleSystem& sys, std::uint64_t budget = kDefaultNodeBudget);

/// Minimum set of edges meeting every triangle by branch and bound. Branches
/// on the edges of an unhit triangle; the lower bound counts a greedy family
/// of edge-disjoint unhit triangles. The incumbent starts from the better of a
/// local-search max-cut complement (at most m/2 edges) and a greedy cover.
CoverResult exact_tau(const TriangleSystem& sys, std::uint64_t budget = kDefaultNodeBudget);

struct OracleResult {
  std::size_t triangles = 0;
  std::size_t edges = 0;
  PackingResult packing;
  CoverResult cover;
  bool optimal() const { return packing.optimal && cover.optimal; }
};

OracleResult solve_exact(const EdgeStateGraph& g, std::uint64_t budget = kDefaultNodeBudget);

bool is_edge_disjoint_packing(const EdgeStateGraph& g, const std::vector<Triangle>& packing);
bool is_triangle_cover(const EdgeStateGraph& g, const std::vector<Edge>& cover);

/// Triangles none of whose edges lies in a second triangle.
std::size_t independent_triangle_count(const EdgeStateGraph& g);

struct TuzaSample {
  std::uint64_t seed = 0;
  std::size_t triangles = 0;
  std::size_t nu = 0;
  std::size_t tau = 0;
  bool optimal = true;
};

struct TuzaBatchReport {
  std::size_t n = 0;
  std::uint64_t m = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t solved = 0;
  std::size_t skipped = 0;               ///< budget exhausted
  std::vector<TuzaSample> violations;    ///< τ > 2ν
  std::size_t half_m_violations = 0;     ///< τ > ⌊m/2⌋
  std::size_t t_count_violations = 0;    ///< ν > t_△ or τ > t_△
  std::size_t triangle_free_samples = 0;
  std::map<double, std::size_t> ratio_histogram;  ///< τ/ν over samples with ν > 0
  double max_ratio = 0.0;
  std::size_t nu_equals_t_count = 0;  ///< samples with ν = t_△
};

/// Samples G(n, m) `samples` times (sample k uses derive_seed(seed, k)),
/// solves both oracles and tallies violations. Samples run on `jobs` threads.
TuzaBatchReport verify_tuza_batch(std::size_t n, std::uint64_t m, std::size_t samples,
                                  std::uint64_t seed, std::uint64_t budget = kDefaultNodeBudget,
                                  std::size_t jobs = 1);

}  // namespace tripack
