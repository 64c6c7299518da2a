#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "tripack/graph.hpp"

namespace tripack {

enum class ProcessKind {
  K11sPacking,
  TriangleOnly,
  TriangleFree,
  ReverseTriangleFree,
  RandomTriangleRemoval,
};

/// Short names used on the command line and in outputs: k11s, tonly, tf, rtf, rtr.
std::string_view to_string(ProcessKind kind);
std::optional<ProcessKind> parse_process_kind(std::string_view name);
bool is_insertion(ProcessKind kind);

/// Codegree histogram cap; match events with r > kCodegreeCap go to the
/// overflow bucket.
inline constexpr std::size_t kCodegreeCap = 64;

/// Process state at one step. Meaning of the edge counters by kind:
///   k11s / tonly: edges_u = |U|, edges_m = |M|
///   tf:           edges_u = accepted, edges_m = rejected
///   rtf / rtr:    edges_u = remaining edges, edges_m = removed edges
struct Checkpoint {
  std::uint64_t i = 0;  ///< step index (draws, or removal steps)
  double t = 0.0;       ///< i / n^{3/2}
  std::uint64_t edges_u = 0;
  std::uint64_t edges_m = 0;
  std::uint64_t packing = 0;    ///< accepted K_{1,1,s} copies, triangles, or removals
  std::uint64_t wasted = 0;     ///< Σ 2(r-1) over match events
  std::uint64_t abandoned = 0;  ///< unmatched edges dropped between sprinkling rounds
  /// xr[r] counts match events at codegree r for 1 <= r <= kCodegreeCap;
  /// xr[kCodegreeCap + 1] is the overflow bucket. xr[0] stays 0.
  std::array<std::uint64_t, kCodegreeCap + 2> xr{};
  std::uint64_t overflow_matched = 0;  ///< Σ (2r+1) over overflow events

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct ProcessTrace {
  ProcessKind kind = ProcessKind::K11sPacking;
  std::size_t n = 0;
  double c_target = 0.0;
  std::uint64_t seed = 0;
  std::vector<Checkpoint> checkpoints;  ///< ordered by i; the last entry equals `final`
  Checkpoint final;
  std::size_t rounds = 1;
  std::vector<std::uint64_t> round_draws;  ///< draws per sprinkling round
  std::size_t max_codegree = 0;            ///< largest unmatched codegree seen at a draw
  std::vector<Triangle> packing;           ///< one triangle per packing event, if recorded
  std::optional<EdgeStateGraph> final_graph;

  friend bool operator==(const ProcessTrace& a, const ProcessTrace& b) {
    return a.kind == b.kind && a.n == b.n && a.c_target == b.c_target && a.seed == b.seed &&
           a.checkpoints == b.checkpoints && a.final == b.final && a.rounds == b.rounds &&
           a.round_draws == b.round_draws && a.max_codegree == b.max_codegree &&
           a.packing == b.packing;
  }
};

using CheckpointObserver = std::function<void(const EdgeStateGraph&, const Checkpoint&)>;

struct RunOptions {
  std::size_t checkpoint_count = 100;
  bool record_packing = false;
  bool keep_final_graph = false;
  /// Called at every checkpoint with the live graph (insertion processes and
  /// rtr). For rtf it is called once on the final graph.
  CheckpointObserver on_checkpoint;
  /// Upper bound on the triangle list of random triangle removal (n > 4096).
  std::size_t triangle_limit = 20'000'000;
};

/// ⌊c n^{3/2}⌋; throws std::invalid_argument if c <= 0 or it exceeds C(n,2).
std::uint64_t edge_budget(std::size_t n, double c);

/// Online K_{1,1,s} packing: each drawn edge with unmatched codegree r >= 1
/// moves the whole K_{1,1,r} into M; with r = 0 the edge joins U.
ProcessTrace run_packing(std::size_t n, double c, std::uint64_t seed, const RunOptions& opts = {});
ProcessTrace run_packing(std::size_t n, EdgeSource& source, std::uint64_t draws,
                         const RunOptions& opts = {});

/// Packing in `rounds` consecutive segments of ⌊c n^{3/2}⌋ draws each from one
/// stream. U is emptied between rounds and its edges are never reconsidered.
ProcessTrace run_packing_sprinkled(std::size_t n, double c, std::uint64_t seed, std::size_t rounds,
                                   const RunOptions& opts = {});

/// Like run_packing but only one uniformly chosen triangle through the drawn
/// edge is matched.
ProcessTrace run_triangle_only(std::size_t n, double c, std::uint64_t seed,
                               const RunOptions& opts = {});
ProcessTrace run_triangle_only(std::size_t n, EdgeSource& source, std::uint64_t draws,
                               std::uint64_t selection_seed, const RunOptions& opts = {});

/// Triangle-free process over ⌊c n^{3/2}⌋ proposals. Accepted edges are kept
/// as U, rejected ones as M.
ProcessTrace run_triangle_free(std::size_t n, double c, std::uint64_t seed,
                               const RunOptions& opts = {});
ProcessTrace run_triangle_free(std::size_t n, EdgeSource& source, std::uint64_t draws,
                               const RunOptions& opts = {});

/// Insertion process (k11s, tonly or tf) over `rounds` segments of `draws`
/// edges from EdgeStream(n, seed); matches the c-based runners when draws =
/// edge_budget(n, c). Only k11s accepts rounds > 1.
ProcessTrace run_insertion_process(ProcessKind kind, std::size_t n, std::uint64_t draws,
                                   std::uint64_t seed, std::size_t rounds = 1,
                                   const RunOptions& opts = {});

/// Removes a uniformly random edge lying in a triangle until none is left.
/// Limited to n <= 4096 (dense codegree table).
ProcessTrace run_reverse_triangle_free(const EdgeStateGraph& start, std::uint64_t seed,
                                       const RunOptions& opts = {});

/// Removes the three edges of a uniformly random triangle until none is left.
/// For n <= 4096 triangles are sampled from a dense codegree table; larger
/// graphs keep an explicit triangle list and throw std::length_error above
/// opts.triangle_limit triangles.
ProcessTrace run_random_triangle_removal(const EdgeStateGraph& start, std::uint64_t seed,
                                         const RunOptions& opts = {});

}  // namespace tripack
