#include <doctest.h>

#include <cmath>

#include "brute.hpp"
#include "tripack/concentration.hpp"
#include "tripack/process.hpp"
#include "tripack/random.hpp"

using namespace tripack;

namespace {

const CurveTable& z_table() {
  static const CurveTable z = CurveTable::tabulate(Curve::Z);
  return z;
}

void check_against_brute(const EdgeStateGraph& g, const SamplePlan& plan) {
  const auto m = measure(g, plan, 0, 0.0);
  const auto u = brute::adjacency(g, EdgeScope::Unmatched);
  const auto n = g.vertex_count();
  REQUIRE(m.vertices.size() == plan.vertices.size());
  for (const auto& vc : m.vertices) {
    CHECK(vc.d_g == g.degree(vc.v));
    const auto c = brute::c_counts(u, vc.v);
    std::size_t tail = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (r <= static_cast<std::size_t>(plan.r_max)) {
        REQUIRE(vc.c[r] == c[r]);
      } else {
        tail += c[r];
      }
    }
    CHECK(vc.c_tail == tail);
    std::size_t total = vc.c_tail;
    for (auto x : vc.c) total += x;
    CHECK(total == n - 1);
  }
  for (const auto& pc : m.pairs) {
    const auto p = brute::p_counts(u, pc.u, pc.v);
    const auto q = brute::q_counts(u, pc.u, pc.v);
    std::size_t p_tail = 0, q_tail = 0, q_total = pc.q_tail;
    for (std::size_t r = 0; r < n; ++r) {
      if (r <= static_cast<std::size_t>(plan.r_max)) {
        REQUIRE(pc.p[r] == p[r]);
      } else {
        p_tail += p[r];
      }
      for (std::size_t s = 0; s < n; ++s) {
        if (r <= static_cast<std::size_t>(plan.r_max) && s <= static_cast<std::size_t>(plan.s_max)) {
          REQUIRE(pc.q_at(static_cast<int>(r), static_cast<int>(s), plan.s_max) == q[r][s]);
          q_total += q[r][s];
        } else {
          q_tail += q[r][s];
        }
      }
    }
    CHECK(pc.p_tail == p_tail);
    CHECK(pc.q_tail == q_tail);
    CHECK(q_total == n - 2);
  }
}

}  // namespace

TEST_CASE("sample plan") {
  const auto a = make_sample_plan(50, 3);
  CHECK(a.vertices.size() == 100);
  CHECK(a.pairs.size() == 100);
  for (auto [u, v] : a.pairs) CHECK(u != v);
  CHECK(make_sample_plan(50, 3).pairs == a.pairs);
  CHECK_THROWS(make_sample_plan(1, 3));
}

TEST_CASE("empty graph at t = 0") {
  EdgeStateGraph g(40);
  const auto plan = make_sample_plan(40, 1, 10, 10);
  const auto m = measure(g, plan, 0, 0.0);
  for (const auto& vc : m.vertices) {
    CHECK(vc.d_u == 0);
    CHECK(vc.c[0] == 39);
  }
  for (const auto& pc : m.pairs) {
    CHECK(pc.q_at(0, 0, plan.s_max) == 38);
    CHECK(pc.p[0] == 0);
  }
  // C_0/n = (n-1)/n against c_0(0) = 1: off by exactly 1/n.
  const double c0 = families_at(0.0, 0, 0).c;
  CHECK(std::abs(39.0 / 40.0 - c0) == doctest::Approx(1.0 / 40.0));
}

TEST_CASE("path u-w-v") {
  // u=0, w=1, v=2 and an extra vertex 3 hanging off w.
  EdgeStateGraph g(5);
  g.add_edge(Edge{0, 1});
  g.add_edge(Edge{1, 2});
  SamplePlan plan;
  plan.pairs = {{0, 2}};
  auto m = measure(g, plan, 0, 0.0);
  // codeg(w,u) = codeg(w,v) = 0, so w sits in Q_{0,0}; u and v share w.
  CHECK(m.pairs[0].q_at(0, 0, plan.s_max) == 3);
  // w is adjacent to both u and v, so it is not in any P_r.
  for (auto x : m.pairs[0].p) CHECK(x == 0);
  g.add_edge(Edge{1, 3});
  m = measure(g, plan, 0, 0.0);
  // Vertex 3 now shares w with both endpoints.
  CHECK(m.pairs[0].q_at(1, 1, plan.s_max) == 1);
  CHECK(m.pairs[0].q_at(0, 0, plan.s_max) == 2);
}

TEST_CASE("P_r counts neighbors of exactly one endpoint") {
  // u=0, v=1; w=2 adjacent to u only, with codeg(w, v) = 1 via vertex 3.
  EdgeStateGraph g(5);
  g.add_edge(Edge{0, 2});
  g.add_edge(Edge{2, 3});
  g.add_edge(Edge{1, 3});
  SamplePlan plan;
  plan.pairs = {{0, 1}};
  const auto m = measure(g, plan, 0, 0.0);
  // w = 2 (neighbor of u, shares 3 with v) and w = 3 (neighbor of v, shares 2 with u).
  CHECK(m.pairs[0].p[1] == 2);
  CHECK(m.pairs[0].p[0] == 0);
}

TEST_CASE("counters match brute force on process states") {
  for (std::size_t n : {30U, 120U, 200U}) {
    const auto plan = make_sample_plan(n, derive_seed(8, n), 25, 25, 3, 2);
    RunOptions opts;
    opts.checkpoint_count = 5;
    opts.on_checkpoint = [&](const EdgeStateGraph& g, const Checkpoint&) { check_against_brute(g, plan); };
    run_packing(n, 0.8, derive_seed(9, n), opts);
  }
  // Matched edges must be ignored: a dense random state with mixed classes.
  EdgeStateGraph g = sample_gnp(60, 0.3, 4);
  std::size_t k = 0;
  for (const auto& e : g.edges())
    if (++k % 2) g.set_state(e, EdgeState::Matched);
  check_against_brute(g, make_sample_plan(60, 5, 20, 20));
}

TEST_CASE("measure is pure") {
  const auto g = sample_gnp(100, 0.1, 2);
  const auto plan = make_sample_plan(100, 2);
  CHECK(measure(g, plan, 5, 0.1) == measure(g, plan, 5, 0.1));
}

TEST_CASE("report shape and degree families at t = 0") {
  const std::size_t n = 400;
  const auto plan = make_sample_plan(n, 3);
  std::vector<Measurement> ms;
  RunOptions opts;
  opts.checkpoint_count = 10;
  opts.on_checkpoint = [&](const EdgeStateGraph& g, const Checkpoint& cp) { ms.push_back(measure(g, plan, cp.i, cp.t)); };
  run_packing(n, 0.5, 3, opts);
  const auto rep = report(ms, z_table(), n);
  for (auto f : kFamilies) {
    const auto& fr = rep.family(f);
    CHECK(fr.family == f);
    CHECK(fr.checkpoints.size() == ms.size());
    CHECK(std::isfinite(fr.global.max_abs));
    CHECK(fr.global.max_abs >= 0.0);
    CHECK(fr.global.max_env_units >= 0.0);
  }
  CHECK(rep.family(Family::DG).checkpoints[0].max_abs == 0.0);
  CHECK(rep.family(Family::DU).checkpoints[0].max_abs == 0.0);
  CHECK_THROWS(report(std::span(ms).first(1), z_table(), n));
  CHECK_THROWS(report(ms, z_table(), 10));
}

TEST_CASE("structural checks on small graphs") {
  const auto empty = structural_checks(EdgeStateGraph(100), 1);
  CHECK(empty.applicable);
  CHECK(empty.all_pass());
  const auto k4 = structural_checks(complete_graph(4), 1);
  CHECK_FALSE(k4.applicable);
  // K_{3,7} inside a larger graph is found.
  EdgeStateGraph g(40);
  for (VertexId a = 0; a < 3; ++a)
    for (VertexId b = 10; b < 17; ++b) g.add_edge(Edge{a, b});
  CHECK_FALSE(structural_checks(g, 1).no_k37);
  g.remove_edge(Edge{2, 16});
  CHECK(structural_checks(g, 1).no_k37);
}

TEST_CASE("d_U and C_r track the deterministic curves at n = 5000" * doctest::timeout(120)) {
  // Single degrees fluctuate by about 25% at t = 0.1, so the bands apply to
  // the mean over 1000 sampled vertices (standard error below 1%).
  const std::size_t n = 5000;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto plan = make_sample_plan(n, derive_seed(seed, 1), 1000, 100);
    std::vector<Measurement> ms;
    RunOptions opts;
    opts.checkpoint_count = 20;
    opts.on_checkpoint = [&](const EdgeStateGraph& g, const Checkpoint& cp) { ms.push_back(measure(g, plan, cp.i, cp.t)); };
    run_packing(n, 0.5, seed, opts);
    double worst_du = 0.0, worst_c = 0.0;
    for (const auto& m : ms) {
      if (m.t < 0.1) continue;
      const double z = z_table().eval(m.t);
      double du = 0.0;
      std::vector<double> c(5, 0.0);
      for (const auto& vc : m.vertices) {
        du += vc.d_u / std::sqrt(double(n));
        for (int r = 0; r <= 4; ++r) c[r] += double(vc.c[r]) / n;
      }
      const double k = double(m.vertices.size());
      worst_du = std::max(worst_du, std::abs(du / k - z) / z);
      for (int r = 0; r <= 4; ++r) worst_c = std::max(worst_c, std::abs(c[r] / k - families_at(z, r, 0).c));
    }
    CAPTURE(seed);
    CHECK(worst_du <= 0.05);
    CHECK(worst_c <= 0.02);
    const auto rep = report(ms, z_table(), n);
    CHECK(rep.family(Family::DU).global.mean_relative <= 0.05);
  }
}

TEST_CASE("structural conditions on G(5000, c n^1.5)" * doctest::timeout(300)) {
  const std::size_t n = 5000;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CAPTURE(seed);
    const auto dense = structural_checks(sample_gnm(n, edge_budget(n, 0.5), seed), seed);
    CHECK(dense.applicable);
    CHECK(dense.no_huge_codegree);
    CHECK(dense.no_k37);
    // Random sets of the maximal admissible size induce about c·|S|²/√n edges,
    // which stays below √n ln² n only for c under roughly 0.15 at this n.
    const auto sparse = structural_checks(sample_gnm(n, edge_budget(n, 0.1), seed), seed);
    CHECK(sparse.all_pass());
  }
}
