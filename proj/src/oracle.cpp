#include "tripack/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "tripack/parallel.hpp"
#include "tripack/random.hpp"

namespace tripack {

TriangleSystem TriangleSystem::build(const EdgeStateGraph& g) {
  TriangleSystem sys;
  sys.edges = g.edges();
  sys.triangles = enumerate_triangles(g);
  if (sys.triangles.size() > kOracleTriangleLimit) {
    throw std::length_error("graph has " + std::to_string(sys.triangles.size()) +
                            " triangles; exact oracles are limited to " +
                            std::to_string(kOracleTriangleLimit));
  }
  auto index_of = [&](const Edge& e) {
    auto it = std::lower_bound(sys.edges.begin(), sys.edges.end(), e);
    return static_cast<std::uint32_t>(it - sys.edges.begin());
  };
  sys.edge_to_triangles.resize(sys.edges.size());
  for (std::uint32_t t = 0; t < sys.triangles.size(); ++t) {
    const auto es = sys.triangles[t].edges();
    std::array<std::uint32_t, 3> idx{index_of(es[0]), index_of(es[1]), index_of(es[2])};
    std::sort(idx.begin(), idx.end());
    sys.triangle_edges.push_back(idx);
    for (auto e : idx) sys.edge_to_triangles[e].push_back(t);
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Packing number

namespace {

class PackingSearch {
 public:
  PackingSearch(const TriangleSystem& sys, std::uint64_t budget)
      : sys_(sys), budget_(budget), edge_alive_(sys.edge_count(), 1),
        tri_alive_(sys.triangle_count(), 1), live_count_(sys.edge_count(), 0) {
    alive_tris_ = sys.triangle_count();
    for (std::size_t e = 0; e < sys.edge_count(); ++e) {
      live_count_[e] = static_cast<std::uint32_t>(sys.edge_to_triangles[e].size());
      if (live_count_[e] > 0) ++useful_;
    }
  }

  PackingResult run() {
    greedy_incumbent();
    search(0);
    PackingResult res;
    res.nu = best_.size();
    for (auto t : best_) res.certificate.push_back(sys_.triangles[t]);
    res.nodes = nodes_;
    res.optimal = !aborted_;
    res.upper_bound = aborted_ ? std::max(best_.size(), root_bound_) : best_.size();
    return res;
  }

 private:
  struct LogEntry {
    bool is_edge;
    std::uint32_t index;
  };

  void greedy_incumbent() {
    std::vector<std::uint8_t> used(sys_.edge_count(), 0);
    for (std::uint32_t t = 0; t < sys_.triangle_count(); ++t) {
      const auto& es = sys_.triangle_edges[t];
      if (used[es[0]] || used[es[1]] || used[es[2]]) continue;
      for (auto e : es) used[e] = 1;
      best_.push_back(t);
    }
    root_bound_ = std::min(alive_tris_, useful_ / 3);
  }

  void kill_tri(std::uint32_t t) {
    tri_alive_[t] = 0;
    --alive_tris_;
    log_.push_back({false, t});
    for (auto f : sys_.triangle_edges[t]) {
      if (--live_count_[f] == 0 && edge_alive_[f]) --useful_;
    }
  }

  void kill_edge(std::uint32_t e) {
    if (!edge_alive_[e]) return;
    edge_alive_[e] = 0;
    log_.push_back({true, e});
    if (live_count_[e] > 0) --useful_;
    for (auto t : sys_.edge_to_triangles[e]) {
      if (tri_alive_[t]) kill_tri(t);
    }
  }

  void restore(std::size_t mark) {
    while (log_.size() > mark) {
      const auto entry = log_.back();
      log_.pop_back();
      if (entry.is_edge) {
        edge_alive_[entry.index] = 1;
        if (live_count_[entry.index] > 0) ++useful_;
      } else {
        tri_alive_[entry.index] = 1;
        ++alive_tris_;
        for (auto f : sys_.triangle_edges[entry.index]) {
          if (live_count_[f]++ == 0 && edge_alive_[f]) ++useful_;
        }
      }
    }
  }

  void search(std::size_t current) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (alive_tris_ == 0) {
      if (current > best_.size()) best_ = chosen_;
      return;
    }
    if (current + std::min(alive_tris_, useful_ / 3) <= best_.size()) return;

    std::uint32_t pivot = 0;
    std::uint32_t pivot_count = UINT32_MAX;
    for (std::uint32_t e = 0; e < sys_.edge_count(); ++e) {
      if (edge_alive_[e] && live_count_[e] > 0 && live_count_[e] < pivot_count) {
        pivot = e;
        pivot_count = live_count_[e];
      }
    }
    std::vector<std::uint32_t> options;
    for (auto t : sys_.edge_to_triangles[pivot]) {
      if (tri_alive_[t]) options.push_back(t);
    }
    for (auto t : options) {
      const std::size_t mark = log_.size();
      for (auto e : sys_.triangle_edges[t]) kill_edge(e);
      chosen_.push_back(t);
      search(current + 1);
      chosen_.pop_back();
      restore(mark);
      if (aborted_) return;
    }
    const std::size_t mark = log_.size();
    kill_edge(pivot);
    search(current);
    restore(mark);
  }

  const TriangleSystem& sys_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<std::uint8_t> edge_alive_;
  std::vector<std::uint8_t> tri_alive_;
  std::vector<std::uint32_t> live_count_;
  std::size_t alive_tris_ = 0;
  std::size_t useful_ = 0;
  std::size_t root_bound_ = 0;
  std::vector<LogEntry> log_;
  std::vector<std::uint32_t> chosen_;
  std::vector<std::uint32_t> best_;
};

// ---------------------------------------------------------------------------
// Covering number

class CoverSearch {
 public:
  CoverSearch(const TriangleSystem& sys, std::uint64_t budget)
      : sys_(sys), budget_(budget), hit_(sys.triangle_count(), 0),
        forbidden_(sys.edge_count(), 0), unhit_degree_(sys.edge_count(), 0),
        stamp_(sys.edge_count(), 0) {
    unhit_ = sys.triangle_count();
    for (std::size_t e = 0; e < sys.edge_count(); ++e) {
      unhit_degree_[e] = static_cast<std::uint32_t>(sys.edge_to_triangles[e].size());
    }
  }

  CoverResult run() {
    best_ = initial_incumbent();
    root_lower_ = disjoint_unhit_bound();
    search();
    CoverResult res;
    res.tau = best_.size();
    for (auto e : best_) res.certificate.push_back(sys_.edges[e]);
    std::sort(res.certificate.begin(), res.certificate.end());
    res.nodes = nodes_;
    res.optimal = !aborted_;
    res.lower_bound = aborted_ ? std::min(root_lower_, best_.size()) : best_.size();
    return res;
  }

 private:
  void choose(std::uint32_t e) {
    chosen_.push_back(e);
    for (auto t : sys_.edge_to_triangles[e]) {
      if (hit_[t]++ == 0) {
        --unhit_;
        for (auto f : sys_.triangle_edges[t]) --unhit_degree_[f];
      }
    }
  }

  void unchoose(std::uint32_t e) {
    chosen_.pop_back();
    for (auto t : sys_.edge_to_triangles[e]) {
      if (--hit_[t] == 0) {
        ++unhit_;
        for (auto f : sys_.triangle_edges[t]) ++unhit_degree_[f];
      }
    }
  }

  // Edge-disjoint unhit triangles each need their own cover edge.
  std::size_t disjoint_unhit_bound() {
    ++epoch_;
    std::size_t count = 0;
    for (std::uint32_t t = 0; t < sys_.triangle_count(); ++t) {
      if (hit_[t]) continue;
      const auto& es = sys_.triangle_edges[t];
      if (stamp_[es[0]] == epoch_ || stamp_[es[1]] == epoch_ || stamp_[es[2]] == epoch_) continue;
      for (auto e : es) stamp_[e] = epoch_;
      ++count;
    }
    return count;
  }

  std::vector<std::uint32_t> initial_incumbent() {
    // Local-search max cut: the monochromatic edges cover every triangle and
    // number at most m/2 at a local optimum.
    std::size_t n = 0;
    for (const auto& e : sys_.edges) n = std::max<std::size_t>(n, e.v + 1);
    std::vector<std::vector<VertexId>> adj(n);
    for (const auto& e : sys_.edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::vector<std::uint8_t> side(n, 0);
    for (std::size_t v = 0; v < n; ++v) side[v] = v & 1U;
    for (bool improved = true; improved;) {
      improved = false;
      for (std::size_t v = 0; v < n; ++v) {
        std::size_t same = 0;
        for (auto w : adj[v]) same += side[w] == side[v];
        if (2 * same > adj[v].size()) {
          side[v] ^= 1U;
          improved = true;
        }
      }
    }
    std::vector<std::uint32_t> cut_cover;
    for (std::uint32_t e = 0; e < sys_.edge_count(); ++e) {
      const auto& ed = sys_.edges[e];
      if (side[ed.u] == side[ed.v] && !sys_.edge_to_triangles[e].empty()) cut_cover.push_back(e);
    }

    // Greedy: repeatedly take the edge meeting the most unhit triangles.
    std::vector<std::uint32_t> greedy;
    while (unhit_ > 0) {
      std::uint32_t best_e = 0;
      for (std::uint32_t e = 1; e < sys_.edge_count(); ++e) {
        if (unhit_degree_[e] > unhit_degree_[best_e]) best_e = e;
      }
      choose(best_e);
      greedy.push_back(best_e);
    }
    for (auto it = greedy.rbegin(); it != greedy.rend(); ++it) unchoose(*it);
    return cut_cover.size() < greedy.size() ? cut_cover : greedy;
  }

  void search() {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (unhit_ == 0) {
      if (chosen_.size() < best_.size()) best_ = chosen_;
      return;
    }
    if (chosen_.size() + disjoint_unhit_bound() >= best_.size()) return;

    // Most constrained unhit triangle: fewest free edges, then the one whose
    // free edges meet the most unhit triangles, then lowest index.
    std::uint32_t pivot = UINT32_MAX;
    int pivot_free = 4;
    std::uint32_t pivot_reach = 0;
    for (std::uint32_t t = 0; t < sys_.triangle_count(); ++t) {
      if (hit_[t]) continue;
      int free = 0;
      std::uint32_t reach = 0;
      for (auto e : sys_.triangle_edges[t]) {
        if (!forbidden_[e]) {
          ++free;
          reach += unhit_degree_[e];
        }
      }
      if (free == 0) return;
      if (free < pivot_free || (free == pivot_free && reach > pivot_reach)) {
        pivot = t;
        pivot_free = free;
        pivot_reach = reach;
      }
    }

    std::array<std::uint32_t, 3> order{};
    std::size_t k = 0;
    for (auto e : sys_.triangle_edges[pivot]) {
      if (!forbidden_[e]) order[k++] = e;
    }
    std::stable_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                     [&](std::uint32_t a, std::uint32_t b) { return unhit_degree_[a] > unhit_degree_[b]; });
    std::size_t forbidden_here = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const auto e = order[j];
      choose(e);
      search();
      unchoose(e);
      if (aborted_) break;
      forbidden_[e] = 1;
      ++forbidden_here;
    }
    for (std::size_t j = 0; j < forbidden_here; ++j) forbidden_[order[j]] = 0;
  }

  const TriangleSystem& sys_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<std::uint32_t> hit_;
  std::vector<std::uint8_t> forbidden_;
  std::vector<std::uint32_t> unhit_degree_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::size_t unhit_ = 0;
  std::size_t root_lower_ = 0;
  std::vector<std::uint32_t> chosen_;
  std::vector<std::uint32_t> best_;
};

}  // namespace

PackingResult exact_nu(const TriangleSystem& sys, std::uint64_t budget) {
  return PackingSearch(sys, budget).run();
}

CoverResult exact_tau(const TriangleSystem& sys, std::uint64_t budget) {
  return CoverSearch(sys, budget).run();
}

OracleResult solve_exact(const EdgeStateGraph& g, std::uint64_t budget) {
  const auto sys = TriangleSystem::build(g);
  OracleResult res;
  res.triangles = sys.triangle_count();
  res.edges = sys.edge_count();
  res.packing = exact_nu(sys, budget);
  res.cover = exact_tau(sys, budget);
  return res;
}

bool is_edge_disjoint_packing(const EdgeStateGraph& g, const std::vector<Triangle>& packing) {
  std::set<Edge> used;
  for (const auto& t : packing) {
    for (const auto& e : t.edges()) {
      if (!g.has_edge(e.u, e.v) || !used.insert(e).second) return false;
    }
  }
  return true;
}

bool is_triangle_cover(const EdgeStateGraph& g, const std::vector<Edge>& cover) {
  const std::set<Edge> chosen(cover.begin(), cover.end());
  for (const auto& e : chosen) {
    if (!g.has_edge(e.u, e.v)) return false;
  }
  for (const auto& t : enumerate_triangles(g)) {
    const auto es = t.edges();
    if (!chosen.contains(es[0]) && !chosen.contains(es[1]) && !chosen.contains(es[2])) return false;
  }
  return true;
}

std::size_t independent_triangle_count(const EdgeStateGraph& g) {
  std::size_t count = 0;
  for (const auto& t : enumerate_triangles(g)) {
    const auto es = t.edges();
    if (g.codeg(es[0].u, es[0].v) == 1 && g.codeg(es[1].u, es[1].v) == 1 &&
        g.codeg(es[2].u, es[2].v) == 1) {
      ++count;
    }
  }
  return count;
}

TuzaBatchReport verify_tuza_batch(std::size_t n, std::uint64_t m, std::size_t samples,
                                  std::uint64_t seed, std::uint64_t budget, std::size_t jobs) {
  if (n > 40) throw std::invalid_argument("Tuza batches are limited to n <= 40");
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (m > static_cast<std::uint64_t>(n) * (n - 1) / 2) throw std::invalid_argument("m exceeds C(n,2)");

  struct Outcome {
    TuzaSample sample;
    bool solved = false;
  };
  std::vector<Outcome> outcomes(samples);
  parallel_for(samples, jobs, [&](std::size_t k) {
    const std::uint64_t s = derive_seed(seed, k);
    const auto g = sample_gnm(n, m, s);
    const auto res = solve_exact(g, budget);
    outcomes[k].sample = TuzaSample{s, res.triangles, res.packing.nu, res.cover.tau, res.optimal()};
    outcomes[k].solved = res.optimal();
  });

  TuzaBatchReport rep;
  rep.n = n;
  rep.m = m;
  rep.samples = samples;
  rep.seed = seed;
  for (const auto& o : outcomes) {
    if (!o.solved) {
      ++rep.skipped;
      continue;
    }
    ++rep.solved;
    const auto& s = o.sample;
    if (s.tau > 2 * s.nu) rep.violations.push_back(s);
    if (s.tau > m / 2) ++rep.half_m_violations;
    if (s.nu > s.triangles || s.tau > s.triangles) ++rep.t_count_violations;
    if (s.triangles == 0) ++rep.triangle_free_samples;
    if (s.nu == s.triangles) ++rep.nu_equals_t_count;
    if (s.nu > 0) {
      const double ratio = static_cast<double>(s.tau) / static_cast<double>(s.nu);
      ++rep.ratio_histogram[ratio];
      rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
  }
  return rep;
}

}  // namespace tripack
