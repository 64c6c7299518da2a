#include "tripack/process.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace tripack {

std::string_view to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::K11sPacking:
      return "k11s";
    case ProcessKind::TriangleOnly:
      return "tonly";
    case ProcessKind::TriangleFree:
      return "tf";
    case ProcessKind::ReverseTriangleFree:
      return "rtf";
    case ProcessKind::RandomTriangleRemoval:
      return "rtr";
  }
  return "?";
}

std::optional<ProcessKind> parse_process_kind(std::string_view name) {
  for (auto k : {ProcessKind::K11sPacking, ProcessKind::TriangleOnly, ProcessKind::TriangleFree,
                 ProcessKind::ReverseTriangleFree, ProcessKind::RandomTriangleRemoval}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

bool is_insertion(ProcessKind kind) {
  return kind == ProcessKind::K11sPacking || kind == ProcessKind::TriangleOnly ||
         kind == ProcessKind::TriangleFree;
}

std::uint64_t edge_budget(std::size_t n, double c) {
  if (n < 3) throw std::invalid_argument("processes need n >= 3");
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("c must be positive");
  const double m = std::floor(c * std::pow(static_cast<double>(n), 1.5));
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  if (m > pairs) {
    throw std::invalid_argument("c n^{3/2} = " + std::to_string(m) + " exceeds C(n,2) = " +
                                std::to_string(pairs));
  }
  return static_cast<std::uint64_t>(m);
}

namespace {

double scaled_time(std::uint64_t i, std::size_t n) {
  return static_cast<double>(i) / std::pow(static_cast<double>(n), 1.5);
}

/// Emits checkpoints at i_k = ⌊k·total/K⌋, k = 0..K, each index once.
class Schedule {
 public:
  Schedule(std::uint64_t total, std::size_t count) : total_(total), count_(std::max<std::size_t>(count, 1)) {}

  bool due(std::uint64_t i) {
    if (i < next_target_ || k_ > count_) return false;
    while (k_ <= count_ && target(k_) <= i) ++k_;
    next_target_ = k_ <= count_ ? target(k_) : UINT64_MAX;
    return true;
  }

 private:
  std::uint64_t target(std::size_t k) const {
    return static_cast<std::uint64_t>((static_cast<long double>(total_) * k) / count_);
  }
  std::uint64_t total_;
  std::size_t count_;
  std::size_t k_ = 0;
  std::uint64_t next_target_ = 0;
};

class TraceBuilder {
 public:
  TraceBuilder(ProcessTrace& trace, const RunOptions& opts) : trace_(trace), opts_(opts) {}

  void emit(const EdgeStateGraph& g, Checkpoint cp) {
    cp.t = scaled_time(cp.i, trace_.n);
    if (!trace_.checkpoints.empty() && trace_.checkpoints.back().i == cp.i) {
      trace_.checkpoints.back() = cp;
      return;
    }
    trace_.checkpoints.push_back(cp);
    if (opts_.on_checkpoint) opts_.on_checkpoint(g, cp);
  }

  void finish(const EdgeStateGraph& g, Checkpoint cp) {
    cp.t = scaled_time(cp.i, trace_.n);
    if (trace_.checkpoints.empty() || trace_.checkpoints.back().i != cp.i) {
      trace_.checkpoints.push_back(cp);
      if (opts_.on_checkpoint) opts_.on_checkpoint(g, cp);
    }
    trace_.final = cp;
    if (opts_.keep_final_graph) trace_.final_graph = g;
  }

 private:
  ProcessTrace& trace_;
  const RunOptions& opts_;
};

void record_event(Checkpoint& cp, std::size_t r) {
  if (r <= kCodegreeCap) {
    ++cp.xr[r];
  } else {
    ++cp.xr[kCodegreeCap + 1];
    cp.overflow_matched += 2 * r + 1;
  }
}

/// Shared loop of the three insertion processes. `round_sizes` splits the
/// draws into sprinkling rounds; U is cleared between rounds.
ProcessTrace run_insertion(ProcessKind kind, std::size_t n, double c_target, std::uint64_t seed,
                           EdgeSource& source, const std::vector<std::uint64_t>& round_sizes,
                           std::mt19937_64* selection_rng, const RunOptions& opts) {
  ProcessTrace trace;
  trace.kind = kind;
  trace.n = n;
  trace.c_target = c_target;
  trace.seed = seed;
  trace.rounds = round_sizes.size();

  std::uint64_t total = 0;
  for (auto r : round_sizes) total += r;

  EdgeStateGraph g(n);
  Checkpoint cp;
  TraceBuilder builder(trace, opts);
  Schedule schedule(total, opts.checkpoint_count);
  if (schedule.due(0)) builder.emit(g, cp);

  std::vector<VertexId> witnesses;
  for (std::size_t round = 0; round < round_sizes.size(); ++round) {
    if (round > 0) {
      cp.abandoned += g.unmatched_edge_count();
      g.clear_unmatched();
      cp.edges_u = 0;
    }
    std::uint64_t drawn_this_round = 0;
    for (; drawn_this_round < round_sizes[round]; ++drawn_this_round) {
      const auto e = source.next();
      if (!e) break;
      witnesses = g.common_unmatched_neighbors(e->u, e->v);
      const std::size_t r = witnesses.size();
      trace.max_codegree = std::max(trace.max_codegree, r);

      if (kind == ProcessKind::TriangleFree) {
        if (r == 0) {
          g.add_edge(*e, EdgeState::Unmatched);
          ++cp.edges_u;
        } else {
          g.add_edge(*e, EdgeState::Matched);
          ++cp.edges_m;
        }
      } else if (r == 0) {
        g.apply_k11s_match(e->u, e->v, {});
        ++cp.edges_u;
      } else {
        if (kind == ProcessKind::TriangleOnly && r > 1) {
          std::uniform_int_distribution<std::size_t> pick(0, r - 1);
          const VertexId w = witnesses[pick(*selection_rng)];
          witnesses.assign(1, w);
        }
        const std::size_t s = witnesses.size();
        const std::size_t moved = g.apply_k11s_match(e->u, e->v, witnesses);
        cp.edges_u -= 2 * s;
        cp.edges_m += moved;
        cp.wasted += 2 * (s - 1);
        ++cp.packing;
        record_event(cp, r);
        if (opts.record_packing) trace.packing.push_back(Triangle::make(e->u, e->v, witnesses[0]));
      }
      ++cp.i;
      if (schedule.due(cp.i)) builder.emit(g, cp);
    }
    trace.round_draws.push_back(drawn_this_round);
    if (drawn_this_round < round_sizes[round]) break;
  }
  builder.finish(g, cp);
  return trace;
}

}  // namespace

ProcessTrace run_packing(std::size_t n, double c, std::uint64_t seed, const RunOptions& opts) {
  const auto m = edge_budget(n, c);
  EdgeStream stream(n, seed);
  return run_insertion(ProcessKind::K11sPacking, n, c, seed, stream, {m}, nullptr, opts);
}

ProcessTrace run_packing(std::size_t n, EdgeSource& source, std::uint64_t draws,
                         const RunOptions& opts) {
  if (n < 3) throw std::invalid_argument("processes need n >= 3");
  return run_insertion(ProcessKind::K11sPacking, n, scaled_time(draws, n), 0, source, {draws},
                       nullptr, opts);
}

ProcessTrace run_packing_sprinkled(std::size_t n, double c, std::uint64_t seed, std::size_t rounds,
                                   const RunOptions& opts) {
  if (rounds == 0) throw std::invalid_argument("sprinkling needs at least one round");
  const auto per_round = edge_budget(n, c);
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  if (static_cast<double>(per_round) * static_cast<double>(rounds) > pairs) {
    throw std::invalid_argument("rounds x c n^{3/2} exceeds C(n,2)");
  }
  EdgeStream stream(n, seed);
  return run_insertion(ProcessKind::K11sPacking, n, c * static_cast<double>(rounds), seed, stream,
                       std::vector<std::uint64_t>(rounds, per_round), nullptr, opts);
}

ProcessTrace run_triangle_only(std::size_t n, double c, std::uint64_t seed, const RunOptions& opts) {
  const auto m = edge_budget(n, c);
  EdgeStream stream(n, seed);
  return run_insertion(ProcessKind::TriangleOnly, n, c, seed, stream, {m}, &stream.rng(), opts);
}

ProcessTrace run_triangle_only(std::size_t n, EdgeSource& source, std::uint64_t draws,
                               std::uint64_t selection_seed, const RunOptions& opts) {
  if (n < 3) throw std::invalid_argument("processes need n >= 3");
  std::mt19937_64 rng(selection_seed);
  return run_insertion(ProcessKind::TriangleOnly, n, scaled_time(draws, n), selection_seed, source,
                       {draws}, &rng, opts);
}

ProcessTrace run_triangle_free(std::size_t n, double c, std::uint64_t seed, const RunOptions& opts) {
  const auto m = edge_budget(n, c);
  EdgeStream stream(n, seed);
  return run_insertion(ProcessKind::TriangleFree, n, c, seed, stream, {m}, nullptr, opts);
}

ProcessTrace run_triangle_free(std::size_t n, EdgeSource& source, std::uint64_t draws,
                               const RunOptions& opts) {
  if (n < 3) throw std::invalid_argument("processes need n >= 3");
  return run_insertion(ProcessKind::TriangleFree, n, scaled_time(draws, n), 0, source, {draws},
                       nullptr, opts);
}

ProcessTrace run_insertion_process(ProcessKind kind, std::size_t n, std::uint64_t draws,
                                   std::uint64_t seed, std::size_t rounds, const RunOptions& opts) {
  if (!is_insertion(kind)) throw std::invalid_argument("not an insertion process");
  if (n < 3) throw std::invalid_argument("processes need n >= 3");
  if (rounds == 0) throw std::invalid_argument("need at least one round");
  if (rounds > 1 && kind != ProcessKind::K11sPacking) {
    throw std::invalid_argument("sprinkling rounds apply to k11s only");
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  if (static_cast<double>(draws) * static_cast<double>(rounds) > pairs) {
    throw std::invalid_argument("requested draws exceed C(n,2)");
  }
  EdgeStream stream(n, seed);
  const double c = scaled_time(draws * rounds, n);
  std::vector<std::uint64_t> segments(rounds, draws);
  std::mt19937_64* rng = kind == ProcessKind::TriangleOnly ? &stream.rng() : nullptr;
  return run_insertion(kind, n, c, seed, stream, segments, rng, opts);
}

// ---------------------------------------------------------------------------
// Reverse triangle-free process

namespace {

/// Dense adjacency with a full codegree table; supports edge deletion and the
/// set of edges that currently lie in a triangle.
class DenseRemovalState {
 public:
  explicit DenseRemovalState(const EdgeStateGraph& start)
      : n_(start.vertex_count()), words_((n_ + 63) / 64), rows_(n_ * words_, 0),
        codeg_(n_ * n_, 0), pos_(n_ * n_, kAbsent) {
    for (const auto& e : start.edges()) {
      set_bit(e.u, e.v);
      set_bit(e.v, e.u);
    }
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t v = u + 1; v < n_; ++v) {
        std::size_t count = 0;
        for (std::size_t w = 0; w < words_; ++w) {
          count += std::popcount(rows_[u * words_ + w] & rows_[v * words_ + w]);
        }
        codeg_[u * n_ + v] = codeg_[v * n_ + u] = static_cast<std::uint16_t>(count);
      }
    }
    edge_count_ = start.edge_count();
    row_weight_.assign(n_, 0);
    for (const auto& e : start.edges()) {
      const std::uint16_t w = codeg_[e.u * n_ + e.v];
      if (w > 0) insert_live(e.u, e.v);
      row_weight_[e.u] += w;
      row_weight_[e.v] += w;
      total_weight_ += 2 * std::uint64_t{w};
    }
  }

  std::size_t live_count() const { return live_.size(); }
  /// Six times the number of triangles.
  std::uint64_t total_weight() const { return total_weight_; }

  /// Uniform random triangle. An ordered edge (u, x) is drawn with weight
  /// codeg(u, x) and then one of its common neighbors uniformly, so every
  /// triangle has probability 6 / total_weight(). Requires total_weight() > 0.
  Triangle sample_triangle(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> pick(0, total_weight_ - 1);
    std::uint64_t r = pick(rng);
    std::size_t u = 0;
    while (r >= row_weight_[u]) r -= row_weight_[u++];
    std::size_t x = 0;
    bool found = false;
    for_each_neighbor(u, [&](std::size_t y) {
      if (found) return;
      const std::uint64_t w = codeg_[u * n_ + y];
      if (r < w) {
        x = y;
        found = true;
      } else {
        r -= w;
      }
    });
    // r is now uniform below codeg(u, x): take that common neighbor.
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = rows_[u * words_ + w] & rows_[x * words_ + w];
      const auto count = static_cast<std::uint64_t>(std::popcount(word));
      if (r >= count) {
        r -= count;
        continue;
      }
      for (; r > 0; --r) word &= word - 1;
      const auto y = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
      return Triangle::make(static_cast<VertexId>(u), static_cast<VertexId>(x), static_cast<VertexId>(y));
    }
    throw std::logic_error("triangle sampler out of sync");
  }
  std::size_t edge_count() const { return edge_count_; }

  Edge live_edge(std::size_t idx) const {
    const std::uint32_t key = live_[idx];
    return Edge{static_cast<VertexId>(key / n_), static_cast<VertexId>(key % n_)};
  }

  void remove_edge(Edge e) {
    const std::uint16_t w = codeg_[e.u * n_ + e.v];
    row_weight_[e.u] -= w;
    row_weight_[e.v] -= w;
    total_weight_ -= 2 * std::uint64_t{w};
    clear_bit(e.u, e.v);
    clear_bit(e.v, e.u);
    --edge_count_;
    erase_live(e.u, e.v);
    update_pairs(e.u, e.v);
    update_pairs(e.v, e.u);
  }

  EdgeStateGraph to_graph() const {
    EdgeStateGraph g(n_);
    for (std::size_t u = 0; u < n_; ++u) {
      for_each_neighbor(u, [&](std::size_t v) {
        if (v > u) g.add_edge(Edge{static_cast<VertexId>(u), static_cast<VertexId>(v)});
      });
    }
    return g;
  }

 private:
  static constexpr std::uint32_t kAbsent = UINT32_MAX;

  // Pairs (a, x) with x adjacent to b lose the common neighbor b.
  void update_pairs(std::size_t a, std::size_t b) {
    for_each_neighbor(b, [&](std::size_t x) {
      if (x == a) return;
      auto& ab = codeg_[a * n_ + x];
      --ab;
      codeg_[x * n_ + a] = ab;
      if (has_bit(a, x)) {
        --row_weight_[a];
        --row_weight_[x];
        total_weight_ -= 2;
        if (ab == 0) erase_live(a, x);
      }
    });
  }

  template <typename F>
  void for_each_neighbor(std::size_t v, F&& f) const {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = rows_[v * words_ + w];
      while (word) {
        const int bit = std::countr_zero(word);
        f(w * 64 + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }

  std::uint32_t key(std::size_t a, std::size_t b) const {
    return static_cast<std::uint32_t>(std::min(a, b) * n_ + std::max(a, b));
  }
  void insert_live(std::size_t a, std::size_t b) {
    const auto k = key(a, b);
    pos_[k] = static_cast<std::uint32_t>(live_.size());
    live_.push_back(k);
  }
  void erase_live(std::size_t a, std::size_t b) {
    const auto k = key(a, b);
    const auto p = pos_[k];
    if (p == kAbsent) return;
    const auto last = live_.back();
    live_[p] = last;
    pos_[last] = p;
    live_.pop_back();
    pos_[k] = kAbsent;
  }

  void set_bit(std::size_t u, std::size_t v) { rows_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }
  void clear_bit(std::size_t u, std::size_t v) { rows_[u * words_ + v / 64] &= ~(std::uint64_t{1} << (v % 64)); }
  bool has_bit(std::size_t u, std::size_t v) const { return (rows_[u * words_ + v / 64] >> (v % 64)) & 1U; }

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint16_t> codeg_;
  std::vector<std::uint32_t> pos_;
  std::vector<std::uint32_t> live_;
  std::vector<std::uint64_t> row_weight_;  ///< Σ_x codeg(u, x) over edges ux
  std::uint64_t total_weight_ = 0;
  std::size_t edge_count_ = 0;
};

constexpr std::size_t kDenseVertexLimit = 4096;

}  // namespace

ProcessTrace run_reverse_triangle_free(const EdgeStateGraph& start, std::uint64_t seed,
                                       const RunOptions& opts) {
  const std::size_t n = start.vertex_count();
  if (n > kDenseVertexLimit) {
    throw std::invalid_argument("reverse triangle-free process supports n <= " +
                                std::to_string(kDenseVertexLimit));
  }
  ProcessTrace trace;
  trace.kind = ProcessKind::ReverseTriangleFree;
  trace.n = n;
  trace.seed = seed;

  DenseRemovalState state(start);
  std::mt19937_64 rng(seed);
  const std::size_t cadence =
      std::max<std::size_t>(1, (start.edge_count() + opts.checkpoint_count - 1) /
                                   std::max<std::size_t>(opts.checkpoint_count, 1));
  Checkpoint cp;
  cp.edges_u = state.edge_count();
  cp.t = 0.0;
  trace.checkpoints.push_back(cp);

  while (state.live_count() > 0) {
    std::uniform_int_distribution<std::size_t> pick(0, state.live_count() - 1);
    state.remove_edge(state.live_edge(pick(rng)));
    ++cp.i;
    ++cp.edges_m;
    cp.edges_u = state.edge_count();
    if (cp.i % cadence == 0) {
      cp.t = scaled_time(cp.i, n);
      trace.checkpoints.push_back(cp);
    }
  }
  cp.t = scaled_time(cp.i, n);
  if (trace.checkpoints.back().i != cp.i) trace.checkpoints.push_back(cp);
  trace.final = cp;
  if (opts.keep_final_graph || opts.on_checkpoint) {
    auto g = state.to_graph();
    if (opts.on_checkpoint) opts.on_checkpoint(g, cp);
    if (opts.keep_final_graph) trace.final_graph = std::move(g);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Random triangle removal

ProcessTrace run_random_triangle_removal(const EdgeStateGraph& start, std::uint64_t seed,
                                         const RunOptions& opts) {
  const std::size_t n = start.vertex_count();
  ProcessTrace trace;
  trace.kind = ProcessKind::RandomTriangleRemoval;
  trace.n = n;
  trace.seed = seed;

  EdgeStateGraph g(n);
  for (const auto& e : start.edges()) g.add_edge(e);

  const std::size_t expected_steps = std::max<std::size_t>(1, g.edge_count() / 3);
  const std::size_t cadence = std::max<std::size_t>(
      1, (expected_steps + opts.checkpoint_count - 1) / std::max<std::size_t>(opts.checkpoint_count, 1));
  std::mt19937_64 rng(seed);
  Checkpoint cp;
  cp.edges_u = g.edge_count();
  TraceBuilder builder(trace, opts);
  builder.emit(g, cp);

  auto step = [&](const Triangle& chosen) {
    if (opts.record_packing) trace.packing.push_back(chosen);
    ++cp.i;
    ++cp.packing;
    cp.edges_m += 3;
    cp.edges_u = g.edge_count();
    if (cp.i % cadence == 0) builder.emit(g, cp);
  };

  if (n <= kDenseVertexLimit) {
    DenseRemovalState state(start);
    while (state.total_weight() > 0) {
      const Triangle chosen = state.sample_triangle(rng);
      for (const auto& e : chosen.edges()) {
        state.remove_edge(e);
        g.remove_edge(e);
      }
      step(chosen);
    }
    builder.finish(g, cp);
    return trace;
  }

  const auto initial = enumerate_triangles(g, EdgeScope::Unmatched);
  if (initial.size() > opts.triangle_limit) {
    throw std::length_error("start graph has " + std::to_string(initial.size()) +
                            " triangles, above the limit of " + std::to_string(opts.triangle_limit));
  }
  const std::uint64_t nn = n;
  auto tkey = [nn](const Triangle& t) { return (t.a * nn + t.b) * nn + t.c; };
  std::vector<Triangle> live = initial;
  std::unordered_map<std::uint64_t, std::size_t> pos;
  pos.reserve(live.size() * 2);
  for (std::size_t i = 0; i < live.size(); ++i) pos.emplace(tkey(live[i]), i);

  auto erase = [&](const Triangle& t) {
    auto it = pos.find(tkey(t));
    if (it == pos.end()) return;
    const std::size_t p = it->second;
    pos.erase(it);
    if (p + 1 != live.size()) {
      live[p] = live.back();
      pos[tkey(live[p])] = p;
    }
    live.pop_back();
  };

  while (!live.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
    const Triangle chosen = live[pick(rng)];
    for (const auto& e : chosen.edges()) {
      for (VertexId w : g.common_unmatched_neighbors(e.u, e.v)) erase(Triangle::make(e.u, e.v, w));
      g.remove_edge(e);
    }
    step(chosen);
  }
  builder.finish(g, cp);
  return trace;
}

}  // namespace tripack
