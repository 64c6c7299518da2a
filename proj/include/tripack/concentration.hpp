#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tripack/graph.hpp"
#include "tripack/ode.hpp"

namespace tripack {

/// Vertices and pairs whose statistics are followed through a run.
struct SamplePlan {
  std::vector<VertexId> vertices;
  std::vector<std::pair<VertexId, VertexId>> pairs;  ///< distinct endpoints
  int r_max = 8;
  int s_max = 8;
};

SamplePlan make_sample_plan(std::size_t n, std::uint64_t seed, std::size_t vertex_samples = 100,
                            std::size_t pair_samples = 100, int r_max = 8, int s_max = 8);

/// Raw counts for one sampled vertex v.
struct VertexCounts {
  VertexId v = 0;
  std::size_t d_g = 0;
  std::size_t d_u = 0;
  std::vector<std::size_t> c;  ///< c[r] = |C_r(v)| for r <= r_max
  std::size_t c_tail = 0;      ///< vertices with codegree > r_max

  friend bool operator==(const VertexCounts&, const VertexCounts&) = default;
};

/// Raw counts for one sampled pair (u, v).
struct PairCounts {
  VertexId u = 0;
  VertexId v = 0;
  std::vector<std::size_t> p;  ///< p[r] = |P_r(u,v)| for r <= r_max
  std::size_t p_tail = 0;
  std::vector<std::size_t> q;  ///< q[r*(s_max+1)+s] = |Q_{r,s}(u,v)|
  std::size_t q_tail = 0;      ///< w with either codegree beyond its cap

  std::size_t q_at(int r, int s, int s_max) const { return q[static_cast<std::size_t>(r * (s_max + 1) + s)]; }
  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

struct Measurement {
  std::uint64_t i = 0;
  double t = 0.0;
  std::vector<VertexCounts> vertices;
  std::vector<PairCounts> pairs;

  friend bool operator==(const Measurement&, const Measurement&) = default;
};

/// Counts every tracked family for the plan's samples on the current state.
/// Codegrees are taken in the unmatched graph U. P_r(u,v) holds the w != u,v
/// adjacent in U to exactly one of u, v whose U-codegree with the other one
/// is r; Q_{r,s}(u,v) holds the w != u,v with codeg_U(w,u) = r and
/// codeg_U(w,v) = s.
Measurement measure(const EdgeStateGraph& g, const SamplePlan& plan, std::uint64_t i, double t);

enum class Family { DG, DU, C, P, Q };
inline constexpr std::array<Family, 5> kFamilies{Family::DG, Family::DU, Family::C, Family::P, Family::Q};
std::string_view to_string(Family f);

struct Witness {
  VertexId a = 0;
  VertexId b = 0;  ///< equals a for vertex families
  int r = -1;
  int s = -1;
  double t = 0.0;
};

/// Deviation of one family at one checkpoint. Scaled empirical values are
/// d/√n, |C_r|/n, |P_r|/√n and |Q_{r,s}|/n; predictions are 2t, z, c_r, p_r
/// and q_{r,s}. Envelope units divide by f(t), or (r+1)^{-3} f(t) for C_r.
struct Deviation {
  double t = 0.0;
  double max_abs = 0.0;        ///< max over samples and indices of |emp - det|
  double max_env_units = 0.0;  ///< same, in envelope units
  /// max |emp - det| / det over entries with det >= relative_floor; 0 when t <
  /// min_t_relative or no entry qualifies.
  double max_relative = 0.0;
  /// Deviation of the sample mean: max over indices of |mean(emp) - det|, and
  /// its relative form under the same rules as max_relative.
  double mean_abs = 0.0;
  double mean_relative = 0.0;
  Witness witness;
};

struct FamilyReport {
  Family family = Family::DG;
  std::vector<Deviation> checkpoints;
  Deviation global;       ///< componentwise maxima over checkpoints
  bool outside_envelope = false;  ///< global max_env_units > 1
};

struct ReportOptions {
  double min_t_relative = 0.1;
  double relative_floor = 0.01;
};

struct ConcentrationReport {
  std::size_t n = 0;
  std::array<FamilyReport, 5> families;
  const FamilyReport& family(Family f) const { return families[static_cast<std::size_t>(f)]; }
};

/// Throws std::invalid_argument with fewer than two measurements or n < 16.
ConcentrationReport report(std::span<const Measurement> measurements, const CurveTable& z_table,
                           std::size_t n, const ReportOptions& opts = {});

/// Structural conditions on the full graph G = U ∪ M.
struct StructuralChecks {
  bool applicable = false;  ///< false for n < 16, where ln ln n is degenerate
  bool no_huge_codegree = true;
  std::size_t max_codegree = 0;
  double codegree_bound = 0.0;  ///< 3 ln n / ln ln n
  bool no_dense_set = true;
  std::size_t dense_set_size = 0;   ///< ⌊10 √n ln ln n⌋ capped at n
  std::size_t worst_dense_edges = 0;
  double dense_bound = 0.0;         ///< √n ln² n
  bool no_k37 = true;
  bool all_pass() const { return no_huge_codegree && no_dense_set && no_k37; }
};

/// (i) max codegree over all pairs, (ii) `dense_samples` uniformly random sets
/// of the largest admissible size, (iii) search for three vertices with seven
/// common neighbors among pairs of codegree >= 7.
StructuralChecks structural_checks(const EdgeStateGraph& g, std::uint64_t seed,
                                   std::size_t dense_samples = 100);

}  // namespace tripack
