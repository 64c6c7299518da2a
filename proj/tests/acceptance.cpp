// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// when any gated line fails; heuristic lines print FINDING on a miss.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "brute.hpp"
#include "tripack/commands.hpp"
#include "tripack/concentration.hpp"
#include "tripack/ode.hpp"
#include "tripack/oracle.hpp"
#include "tripack/parallel.hpp"
#include "tripack/process.hpp"
#include "tripack/random.hpp"

using namespace tripack;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void line(bool pass, const std::string& name, const std::string& detail, bool gated = true) {
  const char* tag = pass ? "PASS" : (gated ? "FAIL" : "FINDING");
  if (!pass && gated) ++failures;
  std::printf("%-7s %-44s %s\n", tag, name.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

template <typename F>
auto timed(F&& f, double& secs) {
  const auto start = std::chrono::steady_clock::now();
  auto v = f();
  secs = seconds_since(start);
  return v;
}

void within(const std::string& name, double value, double target, double tol, double secs, double limit) {
  const bool ok = std::abs(value - target) <= tol && secs < limit;
  line(ok, name, fmt("%.10f (target %.10g +/- %.1e, %.3fs < %.0fs)", value, target, tol, secs, limit));
}

// -------------------------------------------------------------------------

void constants() {
  double s = 0;
  const double z = timed([] { return zeta(); }, s);
  within("zeta", z, 0.5930714217, 1e-9, s, 1);

  const double c1 = timed([] { return threshold_c1(); }, s);
  within("threshold_c1", c1, 0.2403, 5e-5, s, 1);
  within("threshold_c1 = sqrt(ln2/12)", c1, std::sqrt(std::numbers::ln2 / 12.0), 1e-12, s, 1);

  const double c2 = timed([] { return threshold_c2(); }, s);
  within("threshold_c2", c2, 2.1243, 5e-5, s, 1);

  const auto curves = timed([] { return TheoryCurves(); }, s);
  double s2 = 0;
  const double tf = timed([&] { return threshold_tf(curves); }, s2);
  within("threshold_tf", tf, 1.0478, 1e-3, s + s2, 1);

  const auto sup = timed([&] { return ratio_sup(curves); }, s2);
  within("ratio_sup", sup.ratio, 1.9883, 1e-3, s + s2, 1);

  const double ups = timed([] { return upsilon(); }, s);
  within("upsilon", ups, 0.6367, 5e-5, s, 1);
  within("upsilon = sqrt(ln 1.5)", ups, std::sqrt(std::log(1.5)), 1e-12, s, 1);

  const double slope = timed(
      [] {
        const TheoryCurves wide(25.0);
        const double h = 1e-3;
        return (wide.l_nu(20 + h) - wide.l_nu(20 - h)) / (2 * h);
      },
      s);
  within("slope of L_nu at c=20", slope, 0.2965, 1e-4, s, 1);
}

void ode_identity() {
  const auto start = std::chrono::steady_clock::now();
  const auto table = CurveTable::tabulate(Curve::Z, 5.0);
  double worst = 0.0;
  for (int k = 0; k <= 500; ++k) {
    for (int r = 0; r <= 10; ++r) {
      for (int s = 0; s <= 10; ++s) {
        const auto res = ode_residual(table, 0.01 * k, r, s);
        worst = std::max({worst, std::abs(res.c), std::abs(res.p), std::abs(res.q)});
      }
    }
  }
  const double secs = seconds_since(start);
  line(worst < 1e-10 && secs < 5, "ODE identity residual", fmt("max %.3e (< 1e-10, %.2fs < 5s)", worst, secs));
}

// -------------------------------------------------------------------------

struct Stats {
  double mean = 0, sd = 0;
};

Stats stats(const std::vector<double>& v) {
  Stats s;
  for (double x : v) s.mean += x;
  s.mean /= double(v.size());
  for (double x : v) s.sd += (x - s.mean) * (x - s.mean);
  s.sd = std::sqrt(s.sd / double(v.size() - 1));
  return s;
}

void band(const std::string& name, const std::vector<double>& values, double target, double rel, double secs,
          bool gated = true) {
  const auto st = stats(values);
  const double err = (st.mean - target) / target;
  line(std::abs(err) <= rel, name,
       fmt("mean %.5f sd %.5f vs %.5f (rel %+.4f, band %.0f%%, %.1fs)", st.mean, st.sd, target, err, rel * 100,
           secs),
       gated);
}

void simulations() {
  const std::size_t seeds = 10;
  const std::size_t jobs = cli::resolve_jobs(std::nullopt);
  const TheoryCurves curves;
  const std::size_t n = 5000;
  const double scale = std::pow(double(n), 1.5);
  RunOptions opts;
  opts.checkpoint_count = 1;

  {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> packing(seeds), unmatched(seeds);
    parallel_for(seeds, jobs, [&](std::size_t k) {
      const auto tr = run_packing(n, 1.0, derive_seed(1001, k), opts);
      packing[k] = double(tr.final.packing) / scale;
      unmatched[k] = double(tr.final.edges_u) / scale;
    });
    const double secs = seconds_since(start);
    band("k11s packing/n^1.5 vs L_nu(1)", packing, curves.l_nu(1.0), 0.03, secs);
    band("k11s unmatched/n^1.5 vs z(1)/2", unmatched, curves.z().eval(1.0) / 2, 0.03, secs);
  }
  {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> accepted(seeds);
    parallel_for(seeds, jobs, [&](std::size_t k) {
      accepted[k] = double(run_triangle_free(n, 1.0, derive_seed(1002, k), opts).final.edges_u) / scale;
    });
    band("triangle-free accepted/n^1.5 vs that(1)", accepted, curves.that().eval(1.0), 0.03,
         seconds_since(start));
  }
  {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t kn = 1000;
    const auto kgraph = complete_graph(kn);
    std::vector<double> remaining(seeds);
    parallel_for(seeds, jobs, [&](std::size_t k) {
      remaining[k] = double(run_reverse_triangle_free(kgraph, derive_seed(1003, k), opts).final.edges_u) /
                     std::pow(double(kn), 1.5);
    });
    band("reverse triangle-free K_1000 vs sqrt(pi)/4", remaining, std::sqrt(std::numbers::pi) / 4, 0.05,
         seconds_since(start));
  }
  {
    const auto start = std::chrono::steady_clock::now();
    std::vector<double> packing(seeds);
    parallel_for(seeds, jobs, [&](std::size_t k) {
      packing[k] = double(run_triangle_only(n, 1.0, derive_seed(1004, k), opts).final.packing) / scale;
    });
    band("triangle-only packing vs L*_nu(1) [heuristic]", packing, curves.l_nu_star(1.0), 0.03,
         seconds_since(start), false);
  }
}

// -------------------------------------------------------------------------

void oracle_ground_truth() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  struct Case {
    const char* name;
    std::size_t n, nu, tau;
  };
  for (const auto& c : {Case{"K3", 3, 1, 1}, Case{"K4", 4, 1, 2}, Case{"K5", 5, 2, 4}}) {
    const auto res = solve_exact(complete_graph(c.n));
    const bool good = res.optimal() && res.packing.nu == c.nu && res.cover.tau == c.tau;
    ok = ok && good;
    detail += fmt("%s=(%zu,%zu) ", c.name, res.packing.nu, res.cover.tau);
  }
  std::size_t tested = 0, agree = 0;
  for (std::uint64_t k = 0; tested < 50; ++k) {
    const std::size_t n = 6 + k % 4;
    const std::uint64_t m = 8 + k % 12;
    if (m > n * (n - 1) / 2) continue;
    const auto g = sample_gnm(n, m, derive_seed(2001, k));
    const auto et = brute::edge_triangles(brute::adjacency(g, EdgeScope::All));
    if (et.tri_masks.empty() || et.tri_masks.size() > 12) continue;
    ++tested;
    const auto res = solve_exact(g);
    agree += res.optimal() && res.packing.nu == brute::nu(et) && res.cover.tau == brute::tau(et) &&
             is_edge_disjoint_packing(g, res.packing.certificate) && is_triangle_cover(g, res.cover.certificate);
  }
  ok = ok && agree == tested;
  const double secs = seconds_since(start);
  line(ok && secs < 10, "exact oracle ground truth",
       detail + fmt("random %zu/%zu agree (%.2fs < 10s)", agree, tested, secs));
}

void tuza_batch() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t jobs = cli::resolve_jobs(std::nullopt);
  std::size_t violations = 0, half_m = 0, t_count = 0, skipped = 0, samples = 0;
  double max_ratio = 0;
  for (std::size_t n : {10U, 15U, 20U}) {
    for (double c : {0.2, 0.5, 1.0}) {
      const auto m = edge_budget(n, c);
      const auto rep = verify_tuza_batch(n, m, 200, derive_seed(3001, n * 10 + std::size_t(c * 10)),
                                         kDefaultNodeBudget, jobs);
      violations += rep.violations.size();
      half_m += rep.half_m_violations;
      t_count += rep.t_count_violations;
      skipped += rep.skipped;
      samples += rep.solved;
      max_ratio = std::max(max_ratio, rep.max_ratio);
    }
  }
  const double secs = seconds_since(start);
  line(violations == 0 && half_m == 0 && t_count == 0 && skipped == 0 && secs < 600, "Tuza batch (9 cells x 200)",
       fmt("%zu solved, tau>2nu %zu, tau>m/2 %zu, nu>t %zu, unsolved %zu, max tau/nu %.3f (%.1fs < 600s)", samples,
           violations, half_m, t_count, skipped, max_ratio, secs));
}

// -------------------------------------------------------------------------

void properties() {
  // U triangle-free at every checkpoint, and the matched identity.
  {
    bool tf = true, identity = true;
    std::size_t checked = 0;
    for (auto kind : {ProcessKind::K11sPacking, ProcessKind::TriangleOnly}) {
      for (std::size_t n : {20U, 100U, 200U}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          RunOptions opts;
          opts.checkpoint_count = 50;
          opts.on_checkpoint = [&](const EdgeStateGraph& g, const Checkpoint& cp) {
            ++checked;
            tf = tf && brute::triangle_free(brute::adjacency(g, EdgeScope::Unmatched));
            identity = identity && cp.edges_m - cp.wasted == 3 * cp.packing;
          };
          run_insertion_process(kind, n, n * (n - 1) / 3, derive_seed(4001 + seed, n), 1, opts);
        }
      }
    }
    line(tf, "U triangle-free at every checkpoint (n<=200)", fmt("%zu checkpoints", checked));
    line(identity, "edges_m - wasted = 3 packing", fmt("%zu checkpoints", checked));
  }
  // Concentration counters: sums and brute-force equivalence.
  {
    bool sums = true, brute_ok = true;
    std::size_t states = 0;
    for (std::size_t n : {50U, 200U}) {
      const auto plan = make_sample_plan(n, 5, 30, 30, 8, 8);
      RunOptions opts;
      opts.checkpoint_count = 6;
      opts.on_checkpoint = [&](const EdgeStateGraph& g, const Checkpoint&) {
        ++states;
        const auto m = measure(g, plan, 0, 0.0);
        const auto u = brute::adjacency(g, EdgeScope::Unmatched);
        for (const auto& vc : m.vertices) {
          std::size_t total = vc.c_tail;
          for (auto x : vc.c) total += x;
          sums = sums && total == n - 1;
          const auto c = brute::c_counts(u, vc.v);
          for (int r = 0; r <= plan.r_max; ++r) brute_ok = brute_ok && vc.c[r] == c[r];
        }
        for (const auto& pc : m.pairs) {
          std::size_t total = pc.q_tail;
          for (auto x : pc.q) total += x;
          sums = sums && total == n - 2;
          const auto p = brute::p_counts(u, pc.u, pc.v);
          const auto q = brute::q_counts(u, pc.u, pc.v);
          for (int r = 0; r <= plan.r_max; ++r) {
            brute_ok = brute_ok && pc.p[r] == p[r];
            for (int s = 0; s <= plan.s_max; ++s) brute_ok = brute_ok && pc.q_at(r, s, plan.s_max) == q[r][s];
          }
        }
      };
      run_packing(n, 1.0, derive_seed(4101, n), opts);
    }
    line(sums, "sum_r |C_r| = n-1 and sum_rs |Q_rs| = n-2", fmt("%zu states", states));
    line(brute_ok, "concentration counters = brute force (n<=200)", fmt("%zu states", states));
  }
  // Determinism.
  {
    bool same = true;
    for (auto kind : {ProcessKind::K11sPacking, ProcessKind::TriangleOnly, ProcessKind::TriangleFree}) {
      same = same && run_insertion_process(kind, 400, 6000, 4201) == run_insertion_process(kind, 400, 6000, 4201);
    }
    const auto g = complete_graph(60);
    same = same && run_reverse_triangle_free(g, 4202) == run_reverse_triangle_free(g, 4202);
    same = same && run_random_triangle_removal(g, 4203) == run_random_triangle_removal(g, 4203);
    line(same, "bit-identical traces per seed", "5 process kinds");
  }
  // RK4 step doubling.
  {
    double worst = 0;
    for (Curve which : {Curve::Z, Curve::Y, Curve::That}) {
      const auto a = CurveTable::tabulate(which, 10.0, 1e-4);
      const auto b = CurveTable::tabulate(which, 10.0, 2e-4);
      for (int k = 0; k <= 1000; ++k) worst = std::max(worst, std::abs(a.eval(0.01 * k) - b.eval(0.01 * k)));
    }
    line(worst < 1e-10, "RK4 step doubling", fmt("max %.3e (< 1e-10)", worst));
  }
}

}  // namespace

int main() {
  constants();
  ode_identity();
  oracle_ground_truth();
  properties();
  tuza_batch();
  simulations();
  std::printf("%s: %d gated failure(s)\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED", failures);
  return failures ? 1 : 0;
}
