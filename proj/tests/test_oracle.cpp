#include <doctest.h>

#include <cmath>

#include "brute.hpp"
#include "tripack/oracle.hpp"
#include "tripack/random.hpp"

using namespace tripack;

namespace {

EdgeStateGraph triangle() { return complete_graph(3); }

void check_certificates(const EdgeStateGraph& g, const OracleResult& res) {
  CHECK(res.packing.certificate.size() == res.packing.nu);
  CHECK(res.cover.certificate.size() == res.cover.tau);
  CHECK(is_edge_disjoint_packing(g, res.packing.certificate));
  CHECK(is_triangle_cover(g, res.cover.certificate));
}

}  // namespace

TEST_CASE("small tight examples") {
  struct Case {
    EdgeStateGraph g;
    std::size_t nu, tau;
  };
  for (auto& [g, nu, tau] : std::vector<Case>{{triangle(), 1, 1}, {complete_graph(4), 1, 2}, {complete_graph(5), 2, 4}}) {
    const auto res = solve_exact(g);
    CHECK(res.optimal());
    CHECK(res.packing.nu == nu);
    CHECK(res.cover.tau == tau);
    check_certificates(g, res);
  }
  const auto none = solve_exact(EdgeStateGraph(5));
  CHECK(none.packing.nu == 0);
  CHECK(none.cover.tau == 0);
}

TEST_CASE("complete graphs") {
  // ν(K_n) for n = 6, 7, 8, 9 is 4, 7, 8, 12; τ(K_n) = C(n,2) - ⌊n²/4⌋.
  const std::size_t nus[] = {4, 7, 8, 12};
  for (std::size_t n = 6; n <= 9; ++n) {
    const auto g = complete_graph(n);
    const auto res = solve_exact(g);
    CAPTURE(n);
    CHECK(res.optimal());
    CHECK(res.packing.nu == nus[n - 6]);
    CHECK(res.cover.tau == n * (n - 1) / 2 - n * n / 4);
    check_certificates(g, res);
  }
}

TEST_CASE("exhaustive enumeration agrees on random graphs") {
  std::size_t tested = 0;
  for (std::uint64_t k = 0; tested < 200; ++k) {
    const std::size_t n = 6 + k % 5;
    const std::uint64_t m = 8 + k % 13;
    if (m > n * (n - 1) / 2) continue;
    const auto g = sample_gnm(n, m, derive_seed(21, k));
    const auto et = brute::edge_triangles(brute::adjacency(g, EdgeScope::All));
    if (et.tri_masks.empty() || et.tri_masks.size() > 16) continue;
    const auto res = solve_exact(g);
    CAPTURE(k);
    REQUIRE(res.optimal());
    CHECK(res.triangles == et.tri_masks.size());
    CHECK(res.packing.nu == brute::nu(et));
    CHECK(res.cover.tau == brute::tau(et));
    check_certificates(g, res);
    ++tested;
  }
}

TEST_CASE("trivial bounds hold on mid-size graphs") {
  for (std::uint64_t k = 0; k < 40; ++k) {
    const auto g = sample_gnm(16, 50, derive_seed(4, k));
    const auto res = solve_exact(g);
    REQUIRE(res.optimal());
    CHECK(res.packing.nu <= res.cover.tau);
    CHECK(res.cover.tau <= 3 * res.packing.nu);
    CHECK(res.cover.tau <= 50 / 2);
    CHECK(res.packing.nu <= res.triangles);
    CHECK(res.packing.nu >= independent_triangle_count(g));
    check_certificates(g, res);
  }
}

TEST_CASE("budget exhaustion is reported") {
  const auto sys = TriangleSystem::build(complete_graph(12));
  const auto p = exact_nu(sys, 3);
  CHECK_FALSE(p.optimal);
  CHECK(p.upper_bound >= p.nu);
  CHECK(p.nu > 0);
  const auto c = exact_tau(sys, 3);
  CHECK_FALSE(c.optimal);
  CHECK(c.lower_bound <= c.tau);
  CHECK(is_triangle_cover(complete_graph(12), c.certificate));
}

TEST_CASE("triangle system indexing") {
  const auto g = complete_graph(4);
  const auto sys = TriangleSystem::build(g);
  CHECK(sys.edge_count() == 6);
  CHECK(sys.triangle_count() == 4);
  for (std::size_t t = 0; t < 4; ++t) {
    const auto es = sys.triangles[t].edges();
    for (int j = 0; j < 3; ++j) CHECK(sys.edges[sys.triangle_edges[t][j]] == es[j]);
  }
  for (const auto& list : sys.edge_to_triangles) CHECK(list.size() == 2);
}

TEST_CASE("validators reject bad certificates") {
  const auto g = complete_graph(5);
  CHECK_FALSE(is_edge_disjoint_packing(g, {Triangle{0, 1, 2}, Triangle{0, 1, 3}}));
  CHECK(is_edge_disjoint_packing(g, {Triangle{0, 1, 2}, Triangle{0, 3, 4}}));
  CHECK_FALSE(is_triangle_cover(g, {Edge{0, 1}}));
  EdgeStateGraph h(4);
  h.add_edge(Edge{0, 1});
  CHECK_FALSE(is_edge_disjoint_packing(h, {Triangle{0, 1, 2}}));
}

TEST_CASE("independent triangles") {
  // Two triangles sharing an edge plus one separate triangle.
  EdgeStateGraph g(7);
  for (auto [u, v] : std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {1, 2}, {0, 2}, {1, 3}, {2, 3}, {4, 5}, {5, 6}, {4, 6}})
    g.add_edge(Edge{u, v});
  CHECK(independent_triangle_count(g) == 1);
  CHECK(independent_triangle_count(complete_graph(4)) == 0);

  // In sparse G(n,p) a triangle meets another one through an edge with
  // probability about 1 - exp(-3 n p²); compare the pooled fraction.
  std::size_t independent = 0, total = 0;
  const std::size_t n = 300;
  const double p = 0.02;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto h = sample_gnp(n, p, seed);
    independent += independent_triangle_count(h);
    total += count_triangles(h);
  }
  const double expected = std::exp(-3.0 * (n - 3) * p * p);
  CHECK(double(independent) / double(total) == doctest::Approx(expected).epsilon(0.1));
}

TEST_CASE("Tuza batch") {
  const auto rep = verify_tuza_batch(12, 20, 100, 3, kDefaultNodeBudget, 2);
  CHECK(rep.solved == 100);
  CHECK(rep.violations.empty());
  CHECK(rep.half_m_violations == 0);
  CHECK(rep.t_count_violations == 0);
  CHECK(rep.max_ratio <= 2.0);
  std::size_t hist = 0;
  for (auto [ratio, count] : rep.ratio_histogram) hist += count;
  CHECK(hist + rep.triangle_free_samples == rep.solved);
  // Parallel and serial batches agree.
  const auto serial = verify_tuza_batch(12, 20, 100, 3, kDefaultNodeBudget, 1);
  CHECK(serial.ratio_histogram == rep.ratio_histogram);
  CHECK_THROWS(verify_tuza_batch(41, 10, 1, 1));
  CHECK_THROWS(verify_tuza_batch(5, 11, 1, 1));
}
