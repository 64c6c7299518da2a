#include "tripack/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace tripack {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::DG:
      return "D_G";
    case Family::DU:
      return "D_U";
    case Family::C:
      return "C_r";
    case Family::P:
      return "P_r";
    case Family::Q:
      return "Q_rs";
  }
  return "?";
}

SamplePlan make_sample_plan(std::size_t n, std::uint64_t seed, std::size_t vertex_samples,
                            std::size_t pair_samples, int r_max, int s_max) {
  if (n < 2) throw std::invalid_argument("sample plan needs n >= 2");
  if (r_max < 0 || s_max < 0) throw std::invalid_argument("tracking caps must be nonnegative");
  SamplePlan plan;
  plan.r_max = r_max;
  plan.s_max = s_max;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  for (std::size_t k = 0; k < vertex_samples; ++k) plan.vertices.push_back(pick(rng));
  for (std::size_t k = 0; k < pair_samples; ++k) {
    VertexId a = pick(rng);
    VertexId b = pick(rng);
    while (b == a) b = pick(rng);
    plan.pairs.emplace_back(a, b);
  }
  return plan;
}

namespace {

/// codeg_U(v, x) for every x != v, stored sparsely in `count` with the list of
/// touched x. `count` must be zero on entry and is left dirty.
void unmatched_codegrees(const EdgeStateGraph& g, VertexId v, std::vector<std::uint32_t>& count,
                         std::vector<VertexId>& touched) {
  touched.clear();
  for (VertexId w : g.unmatched_neighbors(v)) {
    for (VertexId x : g.unmatched_neighbors(w)) {
      if (x == v) continue;
      if (count[x]++ == 0) touched.push_back(x);
    }
  }
}

void reset(std::vector<std::uint32_t>& count, const std::vector<VertexId>& touched) {
  for (VertexId x : touched) count[x] = 0;
}

}  // namespace

Measurement measure(const EdgeStateGraph& g, const SamplePlan& plan, std::uint64_t i, double t) {
  const std::size_t n = g.vertex_count();
  const auto r_cap = static_cast<std::size_t>(plan.r_max);
  const auto s_cap = static_cast<std::size_t>(plan.s_max);
  Measurement m;
  m.i = i;
  m.t = t;

  std::vector<std::uint32_t> cu(n, 0);
  std::vector<std::uint32_t> cv(n, 0);
  std::vector<VertexId> tu;
  std::vector<VertexId> tv;

  for (VertexId v : plan.vertices) {
    VertexCounts vc;
    vc.v = v;
    vc.d_g = g.degree(v);
    vc.d_u = g.unmatched_degree(v);
    vc.c.assign(r_cap + 1, 0);
    unmatched_codegrees(g, v, cu, tu);
    vc.c[0] = (n - 1) - tu.size();
    for (VertexId x : tu) {
      if (cu[x] <= r_cap) {
        ++vc.c[cu[x]];
      } else {
        ++vc.c_tail;
      }
    }
    reset(cu, tu);
    m.vertices.push_back(std::move(vc));
  }

  std::vector<std::uint8_t> seen(n, 0);
  for (auto [u, v] : plan.pairs) {
    PairCounts pc;
    pc.u = u;
    pc.v = v;
    pc.p.assign(r_cap + 1, 0);
    pc.q.assign((r_cap + 1) * (s_cap + 1), 0);
    unmatched_codegrees(g, u, cu, tu);
    unmatched_codegrees(g, v, cv, tv);

    std::size_t nonzero = 0;
    auto tally = [&](VertexId w) {
      if (w == u || w == v || seen[w]) return;
      seen[w] = 1;
      ++nonzero;
      const std::size_t r = cu[w];
      const std::size_t s = cv[w];
      if (r <= r_cap && s <= s_cap) {
        ++pc.q[r * (s_cap + 1) + s];
      } else {
        ++pc.q_tail;
      }
    };
    for (VertexId w : tu) tally(w);
    for (VertexId w : tv) tally(w);
    pc.q[0] += (n - 2) - nonzero;
    for (VertexId w : tu) seen[w] = 0;
    for (VertexId w : tv) seen[w] = 0;

    const auto nu = g.unmatched_neighbors(u);
    const auto nv = g.unmatched_neighbors(v);
    auto add_p = [&](std::size_t r) {
      if (r <= r_cap) {
        ++pc.p[r];
      } else {
        ++pc.p_tail;
      }
    };
    for (VertexId w : nu) {
      if (w != v && !std::binary_search(nv.begin(), nv.end(), w)) add_p(cv[w]);
    }
    for (VertexId w : nv) {
      if (w != u && !std::binary_search(nu.begin(), nu.end(), w)) add_p(cu[w]);
    }
    reset(cu, tu);
    reset(cv, tv);
    m.pairs.push_back(std::move(pc));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Report

namespace {

class DeviationAccumulator {
 public:
  DeviationAccumulator(double t, double envelope, const ReportOptions& opts)
      : opts_(opts) {
    dev_.t = t;
    envelope_ = envelope;
  }

  void sample(double emp, double det, double env_weight, Witness w) {
    const double diff = std::abs(emp - det);
    dev_.max_abs = std::max(dev_.max_abs, diff);
    const double env = diff / (envelope_ * env_weight);
    if (env > dev_.max_env_units || !has_witness_) {
      dev_.max_env_units = std::max(dev_.max_env_units, env);
      dev_.witness = w;
      has_witness_ = true;
    }
    if (relative_ok(det)) dev_.max_relative = std::max(dev_.max_relative, diff / det);
  }

  void mean(double emp_mean, double det) {
    const double diff = std::abs(emp_mean - det);
    dev_.mean_abs = std::max(dev_.mean_abs, diff);
    if (relative_ok(det)) dev_.mean_relative = std::max(dev_.mean_relative, diff / det);
  }

  const Deviation& result() const { return dev_; }

 private:
  bool relative_ok(double det) const {
    return dev_.t >= opts_.min_t_relative && det >= opts_.relative_floor;
  }

  const ReportOptions& opts_;
  Deviation dev_;
  double envelope_ = 1.0;
  bool has_witness_ = false;
};

void merge_global(Deviation& global, const Deviation& d) {
  if (d.max_env_units >= global.max_env_units) {
    global.max_env_units = d.max_env_units;
    global.witness = d.witness;
    global.t = d.t;
  }
  global.max_abs = std::max(global.max_abs, d.max_abs);
  global.max_relative = std::max(global.max_relative, d.max_relative);
  global.mean_abs = std::max(global.mean_abs, d.mean_abs);
  global.mean_relative = std::max(global.mean_relative, d.mean_relative);
}

}  // namespace

ConcentrationReport report(std::span<const Measurement> measurements, const CurveTable& z_table,
                           std::size_t n, const ReportOptions& opts) {
  if (measurements.size() < 2) throw std::invalid_argument("report needs at least two checkpoints");
  if (n < 16) throw std::invalid_argument("report needs n >= 16");
  ConcentrationReport rep;
  rep.n = n;
  for (std::size_t k = 0; k < kFamilies.size(); ++k) rep.families[k].family = kFamilies[k];

  const double nd = static_cast<double>(n);
  const double sqrt_n = std::sqrt(nd);
  for (const auto& m : measurements) {
    const double z = z_table.eval(m.t);
    const double f = error_envelope(m.t, nd);

    DeviationAccumulator dg(m.t, f, opts);
    DeviationAccumulator du(m.t, f, opts);
    DeviationAccumulator cr(m.t, f, opts);
    DeviationAccumulator pr(m.t, f, opts);
    DeviationAccumulator qr(m.t, f, opts);

    if (!m.vertices.empty()) {
      const std::size_t r_len = m.vertices.front().c.size();
      std::vector<double> c_mean(r_len, 0.0);
      double dg_mean = 0.0;
      double du_mean = 0.0;
      for (const auto& vc : m.vertices) {
        const Witness w{vc.v, vc.v, -1, -1, m.t};
        dg.sample(static_cast<double>(vc.d_g) / sqrt_n, 2.0 * m.t, 1.0, w);
        du.sample(static_cast<double>(vc.d_u) / sqrt_n, z, 1.0, w);
        dg_mean += static_cast<double>(vc.d_g) / sqrt_n;
        du_mean += static_cast<double>(vc.d_u) / sqrt_n;
        for (std::size_t r = 0; r < r_len; ++r) {
          const int ri = static_cast<int>(r);
          const double weight = std::pow(static_cast<double>(r + 1), -3.0);
          cr.sample(static_cast<double>(vc.c[r]) / nd, families_at(z, ri, 0).c, weight,
                    Witness{vc.v, vc.v, ri, -1, m.t});
          c_mean[r] += static_cast<double>(vc.c[r]) / nd;
        }
      }
      const double count = static_cast<double>(m.vertices.size());
      dg.mean(dg_mean / count, 2.0 * m.t);
      du.mean(du_mean / count, z);
      for (std::size_t r = 0; r < r_len; ++r) {
        cr.mean(c_mean[r] / count, families_at(z, static_cast<int>(r), 0).c);
      }
    }

    if (!m.pairs.empty()) {
      const std::size_t r_len = m.pairs.front().p.size();
      const std::size_t q_len = m.pairs.front().q.size();
      const std::size_t s_len = q_len / r_len;
      std::vector<double> p_mean(r_len, 0.0);
      std::vector<double> q_mean(q_len, 0.0);
      for (const auto& pc : m.pairs) {
        for (std::size_t r = 0; r < r_len; ++r) {
          const int ri = static_cast<int>(r);
          pr.sample(static_cast<double>(pc.p[r]) / sqrt_n, families_at(z, ri, 0).p, 1.0,
                    Witness{pc.u, pc.v, ri, -1, m.t});
          p_mean[r] += static_cast<double>(pc.p[r]) / sqrt_n;
          for (std::size_t s = 0; s < s_len; ++s) {
            const int si = static_cast<int>(s);
            const double emp = static_cast<double>(pc.q[r * s_len + s]) / nd;
            qr.sample(emp, families_at(z, ri, si).q, 1.0, Witness{pc.u, pc.v, ri, si, m.t});
            q_mean[r * s_len + s] += emp;
          }
        }
      }
      const double count = static_cast<double>(m.pairs.size());
      for (std::size_t r = 0; r < r_len; ++r) {
        pr.mean(p_mean[r] / count, families_at(z, static_cast<int>(r), 0).p);
        for (std::size_t s = 0; s < s_len; ++s) {
          qr.mean(q_mean[r * s_len + s] / count,
                  families_at(z, static_cast<int>(r), static_cast<int>(s)).q);
        }
      }
    }

    const std::array<const DeviationAccumulator*, 5> accs{&dg, &du, &cr, &pr, &qr};
    for (std::size_t k = 0; k < accs.size(); ++k) {
      auto& fam = rep.families[k];
      fam.checkpoints.push_back(accs[k]->result());
      merge_global(fam.global, accs[k]->result());
    }
  }
  for (auto& fam : rep.families) fam.outside_envelope = fam.global.max_env_units > 1.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Structural conditions

StructuralChecks structural_checks(const EdgeStateGraph& g, std::uint64_t seed,
                                   std::size_t dense_samples) {
  StructuralChecks out;
  const std::size_t n = g.vertex_count();
  if (n < 16) return out;
  out.applicable = true;

  const double nd = static_cast<double>(n);
  const double ln = std::log(nd);
  const double lnln = std::log(ln);
  out.codegree_bound = 3.0 * ln / lnln;
  out.dense_bound = std::sqrt(nd) * ln * ln;
  out.dense_set_size = std::min(n, static_cast<std::size_t>(std::floor(10.0 * std::sqrt(nd) * lnln)));

  std::vector<std::vector<VertexId>> adj(n);
  for (VertexId v = 0; v < n; ++v) adj[v] = g.neighbors(v);

  // (i) every pair's codegree via two-hop counts; remember pairs that could
  // anchor a K_{3,7}.
  std::vector<std::uint32_t> count(n, 0);
  std::vector<VertexId> touched;
  std::vector<std::pair<VertexId, VertexId>> heavy;
  for (VertexId u = 0; u < n; ++u) {
    touched.clear();
    for (VertexId w : adj[u]) {
      for (VertexId x : adj[w]) {
        if (x <= u) continue;
        if (count[x]++ == 0) touched.push_back(x);
      }
    }
    for (VertexId x : touched) {
      out.max_codegree = std::max<std::size_t>(out.max_codegree, count[x]);
      if (count[x] >= 7) heavy.emplace_back(u, x);
      count[x] = 0;
    }
  }
  out.no_huge_codegree = static_cast<double>(out.max_codegree) <= out.codegree_bound;

  // (ii) random sets of the largest admissible size.
  std::mt19937_64 rng(seed);
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint8_t> in_set(n, 0);
  for (std::size_t k = 0; k < dense_samples; ++k) {
    for (std::size_t j = 0; j < out.dense_set_size; ++j) {
      std::uniform_int_distribution<std::size_t> pick(j, n - 1);
      std::swap(perm[j], perm[pick(rng)]);
      in_set[perm[j]] = 1;
    }
    std::size_t twice_edges = 0;
    for (std::size_t j = 0; j < out.dense_set_size; ++j) {
      for (VertexId x : adj[perm[j]]) twice_edges += in_set[x];
    }
    out.worst_dense_edges = std::max(out.worst_dense_edges, twice_edges / 2);
    for (std::size_t j = 0; j < out.dense_set_size; ++j) in_set[perm[j]] = 0;
  }
  out.no_dense_set = static_cast<double>(out.worst_dense_edges) <= out.dense_bound;

  // (iii) a K_{3,7} has two vertices u, v with >= 7 common neighbors, and a
  // third vertex adjacent to 7 of them.
  for (auto [u, v] : heavy) {
    const auto common = g.common_neighbors(u, v);
    touched.clear();
    for (VertexId x : common) {
      for (VertexId w : adj[x]) {
        if (w == u || w == v) continue;
        if (count[w]++ == 0) touched.push_back(w);
        if (count[w] >= 7) out.no_k37 = false;
      }
    }
    for (VertexId w : touched) count[w] = 0;
    if (!out.no_k37) break;
  }
  return out;
}

}  // namespace tripack
