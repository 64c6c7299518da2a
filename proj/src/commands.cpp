#include "tripack/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tripack/concentration.hpp"
#include "tripack/ode.hpp"
#include "tripack/oracle.hpp"
#include "tripack/parallel.hpp"
#include "tripack/random.hpp"

namespace tripack::cli {

namespace fs = std::filesystem;

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::size_t resolve_jobs(std::optional<std::size_t> requested) {
  if (const char* env = std::getenv("TRIPACK_JOBS")) {
    std::size_t v = 0;
    const auto* end = env + std::char_traits<char>::length(env);
    const auto res = std::from_chars(env, end, v);
    if (res.ec == std::errc() && res.ptr == end && v > 0) return v;
  }
  if (requested && *requested > 0) return *requested;
  return default_jobs();
}

namespace {

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish_output(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_json_file(const fs::path& path, const json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
  finish_output(out, path);
}

double n_pow(std::size_t n) { return std::pow(static_cast<double>(n), 1.5); }

std::size_t grid_points(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("invalid grid");
  return static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
}

void write_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_number(v);
    first = false;
  }
  out << '\n';
}

}  // namespace

json constants() {
  const TheoryCurves curves;
  const auto sup = ratio_sup(curves);
  return json{{"zeta", zeta()},
              {"upsilon", upsilon()},
              {"c1", threshold_c1()},
              {"c2", threshold_c2()},
              {"c_tf", threshold_tf(curves)},
              {"ratio_sup", sup.ratio},
              {"ratio_sup_at", sup.c},
              {"l_nu_slope_limit", 1.0 - 2.0 * zeta() * zeta()}};
}

json cmd_ode(const OdeArgs& args) {
  if (!(args.t_max > 0.0)) throw std::invalid_argument("--t-max must be positive");
  const std::size_t rows = grid_points(0.0, args.t_max, args.grid);
  const TheoryCurves curves(std::max(args.t_max, args.grid * static_cast<double>(rows - 1)));
  const fs::path csv = args.out / "curves.csv";
  auto out = open_output(csv);
  out << "t,z,y,that,l_nu,l_nu_star,u_tau\n";
  for (std::size_t k = 0; k < rows; ++k) {
    const double t = std::min(args.grid * static_cast<double>(k), curves.t_max());
    write_row(out, {t, curves.z().eval(t), curves.y().eval(t), curves.that().eval(t), curves.l_nu(t),
                    curves.l_nu_star(t), curves.u_tau(t)});
  }
  finish_output(out, csv);
  const json consts = constants();
  write_json_file(args.out / "constants.json", consts);
  return json{{"ok", true}, {"curves", csv.string()}, {"rows", rows}, {"constants", consts}};
}

// ---------------------------------------------------------------------------
// simulate

namespace {

void write_trace_csv(std::ostream& out, const ProcessTrace& trace) {
  out << "i,t,edges_u,edges_m,packing,wasted";
  for (int r = 1; r <= 8; ++r) out << ",x" << r;
  out << ",x_overflow\n";
  for (const auto& cp : trace.checkpoints) {
    std::uint64_t overflow = 0;
    for (std::size_t r = 9; r < cp.xr.size(); ++r) overflow += cp.xr[r];
    out << cp.i << ',' << format_number(cp.t) << ',' << cp.edges_u << ',' << cp.edges_m << ','
        << cp.packing << ',' << cp.wasted;
    for (std::size_t r = 1; r <= 8; ++r) out << ',' << cp.xr[r];
    out << ',' << overflow << '\n';
  }
}

json checkpoint_json(const Checkpoint& cp) {
  std::vector<std::uint64_t> xr(cp.xr.begin() + 1, cp.xr.end());
  return json{{"i", cp.i},           {"t", cp.t},
              {"edges_u", cp.edges_u}, {"edges_m", cp.edges_m},
              {"packing", cp.packing}, {"wasted", cp.wasted},
              {"abandoned", cp.abandoned}, {"xr", xr},
              {"overflow_matched", cp.overflow_matched}};
}

json trace_json(const ProcessTrace& trace) {
  json cps = json::array();
  for (const auto& cp : trace.checkpoints) cps.push_back(checkpoint_json(cp));
  return json{{"process", to_string(trace.kind)}, {"n", trace.n},
              {"c", trace.c_target},             {"seed", trace.seed},
              {"rounds", trace.rounds},          {"max_codegree", trace.max_codegree},
              {"checkpoints", cps}};
}

struct Metric {
  std::string name;
  std::vector<double> values;
  std::optional<double> prediction;
};

json metric_json(const Metric& m) {
  double mean = 0.0;
  for (double v : m.values) mean += v;
  mean /= static_cast<double>(m.values.size());
  double var = 0.0;
  for (double v : m.values) var += (v - mean) * (v - mean);
  const double sd = m.values.size() > 1 ? std::sqrt(var / static_cast<double>(m.values.size() - 1)) : 0.0;
  json j{{"mean", mean}, {"stddev", sd}, {"values", m.values}};
  if (m.prediction) {
    j["prediction"] = *m.prediction;
    j["relative_error"] = *m.prediction != 0.0 ? (mean - *m.prediction) / *m.prediction : 0.0;
  } else {
    j["prediction"] = nullptr;
  }
  return j;
}

}  // namespace

json cmd_simulate(const SimulateArgs& args) {
  if (args.samples == 0) throw std::invalid_argument("--samples must be positive");
  if (args.c && args.m) throw std::invalid_argument("--c and --m are mutually exclusive");
  if (args.format != "csv" && args.format != "json") throw std::invalid_argument("--format must be csv or json");
  const ProcessKind kind = args.process;
  const bool insertion = is_insertion(kind);
  if (args.rounds != 1 && kind != ProcessKind::K11sPacking) {
    throw std::invalid_argument("--rounds applies to k11s only");
  }

  std::size_t n = 0;
  std::optional<std::uint64_t> draws;  // per round, insertion processes and G(n,m) starts
  if (args.kn) {
    if (insertion) throw std::invalid_argument("--kn applies to rtf and rtr only");
    if (args.n || args.c || args.m) throw std::invalid_argument("--kn excludes --n, --c and --m");
    n = *args.kn;
    if (n < 3) throw std::invalid_argument("--kn must be at least 3");
  } else {
    if (!args.n) throw std::invalid_argument("--n is required");
    n = *args.n;
    if (n < 3) throw std::invalid_argument("--n must be at least 3");
    if (args.m) {
      draws = *args.m;
    } else if (args.c) {
      draws = edge_budget(n, *args.c);
    } else {
      throw std::invalid_argument("one of --c or --m is required");
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    if (static_cast<double>(*draws) * static_cast<double>(args.rounds) > pairs) {
      throw std::invalid_argument("edge count exceeds C(n,2)");
    }
  }
  if (kind == ProcessKind::ReverseTriangleFree && n > 4096) throw std::invalid_argument("rtf needs n <= 4096");

  RunOptions opts;
  opts.checkpoint_count = args.checkpoints;
  std::vector<ProcessTrace> traces(args.samples);
  parallel_for(args.samples, args.jobs, [&](std::size_t k) {
    const std::uint64_t seed = derive_seed(args.seed, k);
    if (insertion) {
      traces[k] = run_insertion_process(kind, n, *draws, seed, args.rounds, opts);
      return;
    }
    const EdgeStateGraph start = args.kn ? complete_graph(n) : sample_gnm(n, *draws, seed);
    const std::uint64_t run_seed = derive_seed(seed, 1);
    traces[k] = kind == ProcessKind::ReverseTriangleFree ? run_reverse_triangle_free(start, run_seed, opts)
                                                          : run_random_triangle_removal(start, run_seed, opts);
  });

  // Single collector: files are written after all samples finish.
  json files = json::array();
  if (args.out) {
    for (std::size_t k = 0; k < traces.size(); ++k) {
      const fs::path path = *args.out / ("trace_" + std::string(to_string(kind)) + "_" + std::to_string(k) + "." +
                                         args.format);
      auto out = open_output(path);
      if (args.format == "csv") {
        write_trace_csv(out, traces[k]);
      } else {
        out << trace_json(traces[k]).dump() << '\n';
      }
      finish_output(out, path);
      files.push_back(path.string());
    }
  }

  const double scale = n_pow(n);
  const double c = insertion ? static_cast<double>(*draws) * static_cast<double>(args.rounds) / scale : 0.0;
  std::optional<TheoryCurves> curves;
  if (insertion && args.rounds == 1 && c <= kDefaultTMax) curves.emplace();
  auto predict = [&](auto fn) -> std::optional<double> {
    if (!curves) return std::nullopt;
    return fn(*curves);
  };

  std::vector<Metric> metrics;
  auto collect = [&](const std::string& name, auto get, std::optional<double> prediction) {
    Metric m{name, {}, prediction};
    for (const auto& tr : traces) m.values.push_back(static_cast<double>(get(tr.final)) / scale);
    metrics.push_back(std::move(m));
  };
  using Cp = const Checkpoint&;
  switch (kind) {
    case ProcessKind::K11sPacking:
      collect("packing", [](Cp f) { return f.packing; }, predict([&](auto& cv) { return cv.l_nu(c); }));
      collect("unmatched", [](Cp f) { return f.edges_u; }, predict([&](auto& cv) { return cv.z().eval(c) / 2; }));
      collect("matched", [](Cp f) { return f.edges_m; }, predict([&](auto& cv) { return c - cv.z().eval(c) / 2; }));
      collect("wasted", [](Cp f) { return f.wasted; }, predict([&](auto& cv) { return 2 * cv.z().eval_aux(c); }));
      if (args.rounds > 1) collect("abandoned", [](Cp f) { return f.abandoned; }, std::nullopt);
      break;
    case ProcessKind::TriangleOnly:
      collect("packing", [](Cp f) { return f.packing; }, predict([&](auto& cv) { return cv.l_nu_star(c); }));
      collect("unmatched", [](Cp f) { return f.edges_u; }, predict([&](auto& cv) { return cv.y().eval(c) / 2; }));
      collect("matched", [](Cp f) { return f.edges_m; }, predict([&](auto& cv) { return c - cv.y().eval(c) / 2; }));
      break;
    case ProcessKind::TriangleFree:
      collect("accepted", [](Cp f) { return f.edges_u; }, predict([&](auto& cv) { return cv.that().eval(c); }));
      collect("rejected", [](Cp f) { return f.edges_m; }, predict([&](auto& cv) { return c - cv.that().eval(c); }));
      break;
    case ProcessKind::ReverseTriangleFree:
      collect("final_edges", [](Cp f) { return f.edges_u; },
              args.kn ? std::optional<double>(std::sqrt(std::numbers::pi) / 4) : std::nullopt);
      collect("removed", [](Cp f) { return f.edges_m; }, std::nullopt);
      break;
    case ProcessKind::RandomTriangleRemoval:
      collect("final_edges", [](Cp f) { return f.edges_u; }, std::nullopt);
      collect("removals", [](Cp f) { return f.packing; }, std::nullopt);
      break;
  }

  json finals = json::array();
  for (const auto& tr : traces) {
    json f = checkpoint_json(tr.final);
    f["seed"] = tr.seed;
    f["max_codegree"] = tr.max_codegree;
    finals.push_back(std::move(f));
  }
  json mj = json::object();
  for (const auto& m : metrics) mj[m.name] = metric_json(m);
  json result{{"ok", true},
              {"process", to_string(kind)},
              {"n", n},
              {"samples", args.samples},
              {"seed", args.seed},
              {"rounds", args.rounds},
              {"scale", "value / n^1.5"},
              {"metrics", mj},
              {"finals", finals},
              {"trace_files", files}};
  if (insertion) {
    result["c"] = c;
    result["draws_per_round"] = *draws;
  } else {
    result["start"] = args.kn ? "complete" : "gnm";
  }
  if (args.out) write_json_file(*args.out / "aggregate.json", result);
  return result;
}

// ---------------------------------------------------------------------------
// figures

json cmd_figures(const FiguresArgs& args) {
  if (!(args.c_min > 0.0)) throw std::invalid_argument("--c-min must be positive");
  if (args.c_max > kDefaultTMax) throw std::invalid_argument("--c-max must be at most 10");
  const std::size_t rows = grid_points(args.c_min, args.c_max, args.grid);
  const TheoryCurves curves;
  struct Sheet {
    std::string name;
    std::string header;
    std::ofstream out;
    fs::path path;
  };
  std::vector<Sheet> sheets;
  for (auto [name, header] : {std::pair{"figure2a", "c,l_nu"}, {"figure2b", "c,u_tau"},
                              {"figure2c", "c,u_tau_over_l_nu"}, {"figure3a", "c,l_nu,l_nu_star"},
                              {"figure3b", "c,u_tau_over_l_nu_star"}}) {
    const fs::path path = args.out / (std::string(name) + ".csv");
    Sheet s{name, header, open_output(path), path};
    s.out << header << '\n';
    sheets.push_back(std::move(s));
  }
  RatioPeak max2c{0, 0}, max3b{0, 0};
  std::optional<double> cross2;
  double prev_c = 0, prev_r = 0;
  bool finite = true;
  for (std::size_t k = 0; k < rows; ++k) {
    const double c = std::min(args.c_min + args.grid * static_cast<double>(k), args.c_max);
    const double ln = curves.l_nu(c), ls = curves.l_nu_star(c), ut = curves.u_tau(c);
    const double r2 = ut / ln, r3 = ut / ls;
    finite = finite && std::isfinite(r2) && std::isfinite(r3) && r2 > 0 && r3 > 0;
    write_row(sheets[0].out, {c, ln});
    write_row(sheets[1].out, {c, ut});
    write_row(sheets[2].out, {c, r2});
    write_row(sheets[3].out, {c, ln, ls});
    write_row(sheets[4].out, {c, r3});
    if (r2 > max2c.ratio) max2c = {c, r2};
    if (r3 > max3b.ratio) max3b = {c, r3};
    if (k > 0 && !cross2 && (prev_r - 2) * (r2 - 2) <= 0) {
      cross2 = prev_c + (2 - prev_r) * (c - prev_c) / (r2 - prev_r);
    }
    prev_c = c;
    prev_r = r2;
  }
  json files = json::array();
  for (auto& s : sheets) {
    finish_output(s.out, s.path);
    files.push_back(s.path.string());
  }
  json result{{"ok", finite},
              {"rows", rows},
              {"files", files},
              {"figure2c_max", {{"c", max2c.c}, {"value", max2c.ratio}}},
              {"figure3b_max", {{"c", max3b.c}, {"value", max3b.ratio}}},
              {"ratios_positive_finite", finite}};
  result["figure2c_first_crossing_of_2"] = cross2 ? json(*cross2) : json(nullptr);
  const auto sup = ratio_sup(curves);
  result["figure3b_refined_max"] = {{"c", sup.c}, {"value", sup.ratio}};
  return result;
}

// ---------------------------------------------------------------------------
// oracle, tuza

json cmd_oracle(const OracleArgs& args) {
  std::ifstream in(args.input);
  if (!in) throw std::runtime_error("cannot open " + args.input.string());
  EdgeStateGraph g = [&] {
    try {
      return read_edge_list(in);
    } catch (const std::exception& e) {
      throw std::runtime_error(args.input.string() + ": " + e.what());
    }
  }();
  const auto res = solve_exact(g, args.budget);
  json packing = json::array();
  for (const auto& t : res.packing.certificate) packing.push_back({t.a, t.b, t.c});
  json cover = json::array();
  for (const auto& e : res.cover.certificate) cover.push_back({e.u, e.v});
  json result{{"ok", res.optimal()},
              {"n", g.vertex_count()},
              {"edges", res.edges},
              {"triangles", res.triangles},
              {"nu", res.packing.nu},
              {"tau", res.cover.tau},
              {"optimal", res.optimal()},
              {"nodes", {{"nu", res.packing.nodes}, {"tau", res.cover.nodes}}},
              {"certificates", {{"packing", packing}, {"cover", cover}}}};
  result["ratio"] = res.packing.nu > 0
                        ? json(static_cast<double>(res.cover.tau) / static_cast<double>(res.packing.nu))
                        : json(nullptr);
  if (!res.optimal()) {
    result["nu_upper_bound"] = res.packing.upper_bound;
    result["tau_lower_bound"] = res.cover.lower_bound;
  }
  return result;
}

json cmd_tuza(const TuzaArgs& args) {
  if (args.c && args.m) throw std::invalid_argument("--c and --m are mutually exclusive");
  std::uint64_t m = 0;
  if (args.m) {
    m = *args.m;
  } else if (args.c) {
    m = edge_budget(args.n, *args.c);
  } else {
    throw std::invalid_argument("one of --c or --m is required");
  }
  const auto rep = verify_tuza_batch(args.n, m, args.samples, args.seed, args.budget, args.jobs);
  json violations = json::array();
  for (const auto& s : rep.violations) {
    violations.push_back({{"seed", s.seed}, {"triangles", s.triangles}, {"nu", s.nu}, {"tau", s.tau}});
  }
  json hist = json::array();
  for (const auto& [ratio, count] : rep.ratio_histogram) hist.push_back({{"ratio", ratio}, {"count", count}});
  const bool ok = rep.violations.empty() && rep.half_m_violations == 0 && rep.t_count_violations == 0 &&
                  rep.skipped == 0;
  return json{{"ok", ok},
              {"n", rep.n},
              {"m", rep.m},
              {"samples", rep.samples},
              {"seed", rep.seed},
              {"solved", rep.solved},
              {"skipped", rep.skipped},
              {"violations", rep.violations.size()},
              {"violating_samples", violations},
              {"half_m_violations", rep.half_m_violations},
              {"t_count_violations", rep.t_count_violations},
              {"triangle_free_samples", rep.triangle_free_samples},
              {"nu_equals_t_count", rep.nu_equals_t_count},
              {"max_ratio", rep.max_ratio},
              {"ratio_histogram", hist}};
}

// ---------------------------------------------------------------------------
// concentration

json cmd_concentration(const ConcentrationArgs& args) {
  if (args.n < 16) throw std::invalid_argument("concentration reports need n >= 16");
  if (args.c > kDefaultTMax) throw std::invalid_argument("--c must be at most 10");
  const auto plan = make_sample_plan(args.n, derive_seed(args.seed, 1), args.vertex_samples,
                                     args.pair_samples, args.r_max, args.s_max);
  std::vector<Measurement> measurements;
  RunOptions opts;
  opts.checkpoint_count = std::max<std::size_t>(args.checkpoints, 1);
  opts.keep_final_graph = true;
  opts.on_checkpoint = [&](const EdgeStateGraph& g, const Checkpoint& cp) {
    measurements.push_back(measure(g, plan, cp.i, cp.t));
  };
  const auto trace = run_packing(args.n, args.c, args.seed, opts);
  const CurveTable z = CurveTable::tabulate(Curve::Z);
  const auto rep = report(measurements, z, args.n);
  const auto structural = structural_checks(*trace.final_graph, derive_seed(args.seed, 2));

  auto dev_json = [](const Deviation& d) {
    return json{{"t", d.t},
                {"max_abs", d.max_abs},
                {"max_env_units", d.max_env_units},
                {"max_relative", d.max_relative},
                {"mean_abs", d.mean_abs},
                {"mean_relative", d.mean_relative},
                {"witness", {{"a", d.witness.a}, {"b", d.witness.b}, {"r", d.witness.r}, {"s", d.witness.s},
                             {"t", d.witness.t}}}};
  };
  json families = json::object();
  for (const auto& fr : rep.families) {
    json j = dev_json(fr.global);
    j["outside_envelope"] = fr.outside_envelope;
    j["checkpoints"] = fr.checkpoints.size();
    families[std::string(to_string(fr.family))] = std::move(j);
  }
  if (args.csv) {
    auto out = open_output(*args.csv);
    out << "family,t,max_abs,max_env_units,max_relative,mean_abs,mean_relative\n";
    for (const auto& fr : rep.families) {
      for (const auto& d : fr.checkpoints) {
        out << to_string(fr.family) << ',';
        write_row(out, {d.t, d.max_abs, d.max_env_units, d.max_relative, d.mean_abs, d.mean_relative});
      }
    }
    finish_output(out, *args.csv);
  }
  json s{{"applicable", structural.applicable},
         {"no_huge_codegree", structural.no_huge_codegree},
         {"max_codegree", structural.max_codegree},
         {"codegree_bound", structural.codegree_bound},
         {"no_dense_set", structural.no_dense_set},
         {"dense_set_size", structural.dense_set_size},
         {"worst_dense_edges", structural.worst_dense_edges},
         {"dense_bound", structural.dense_bound},
         {"no_k37", structural.no_k37}};
  return json{{"ok", true},
              {"n", args.n},
              {"c", args.c},
              {"seed", args.seed},
              {"measurements", measurements.size()},
              {"families", families},
              {"structural", s},
              {"final", checkpoint_json(trace.final)}};
}

}  // namespace tripack::cli
