#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tripack/commands.hpp"
#include "tripack/ode.hpp"
#include "tripack/oracle.hpp"
#include "tripack/process.hpp"

namespace py = pybind11;
using namespace tripack;

namespace {

EdgeStateGraph graph_from(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  EdgeStateGraph g(n);
  for (auto [u, v] : edges) g.add_edge(Edge::make(u, v));
  return g;
}

ProcessKind kind_from(const std::string& name) {
  const auto kind = parse_process_kind(name);
  if (!kind) throw py::value_error("unknown process '" + name + "'");
  return *kind;
}

}  // namespace

PYBIND11_MODULE(_tripack, m) {
  m.doc() = "Online triangle packing core";

  m.def("zeta", &zeta);
  m.def("upsilon", &upsilon);
  m.def("threshold_c1", &threshold_c1);
  m.def("threshold_c2", &threshold_c2);
  m.def("threshold_tf", [] { return threshold_tf(TheoryCurves()); });
  m.def("ratio_sup", [] {
    const auto p = ratio_sup(TheoryCurves());
    return py::make_tuple(p.c, p.ratio);
  });

  py::class_<TheoryCurves>(m, "TheoryCurves")
      .def(py::init<double, double>(), py::arg("t_max") = kDefaultTMax, py::arg("step") = kDefaultStep)
      .def("z", [](const TheoryCurves& c, double t) { return c.z().eval(t); })
      .def("y", [](const TheoryCurves& c, double t) { return c.y().eval(t); })
      .def("that", [](const TheoryCurves& c, double t) { return c.that().eval(t); })
      .def("l_nu", &TheoryCurves::l_nu)
      .def("l_nu_star", &TheoryCurves::l_nu_star)
      .def("u_tau", &TheoryCurves::u_tau);

  m.def("ode_residual", [](double z, int r, int s) {
    const auto res = ode_residual_at(z, r, s);
    return py::make_tuple(res.c, res.p, res.q);
  });

  m.def(
      "run_process",
      [](const std::string& process, std::size_t n, std::uint64_t m_edges, std::uint64_t seed,
         std::size_t rounds, std::size_t checkpoints) {
        RunOptions opts;
        opts.checkpoint_count = checkpoints;
        const auto kind = kind_from(process);
        ProcessTrace trace;
        {
          py::gil_scoped_release release;
          trace = run_insertion_process(kind, n, m_edges, seed, rounds, opts);
        }
        py::list rows;
        for (const auto& cp : trace.checkpoints) {
          py::dict d;
          d["i"] = cp.i;
          d["t"] = cp.t;
          d["edges_u"] = cp.edges_u;
          d["edges_m"] = cp.edges_m;
          d["packing"] = cp.packing;
          d["wasted"] = cp.wasted;
          d["abandoned"] = cp.abandoned;
          rows.append(d);
        }
        return rows;
      },
      py::arg("process"), py::arg("n"), py::arg("m"), py::arg("seed"), py::arg("rounds") = 1,
      py::arg("checkpoints") = 100);

  m.def(
      "solve_exact",
      [](std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges, std::uint64_t budget) {
        const auto g = graph_from(n, edges);
        const auto res = solve_exact(g, budget);
        py::dict d;
        d["nu"] = res.packing.nu;
        d["tau"] = res.cover.tau;
        d["triangles"] = res.triangles;
        d["optimal"] = res.optimal();
        py::list packing, cover;
        for (const auto& t : res.packing.certificate) packing.append(py::make_tuple(t.a, t.b, t.c));
        for (const auto& e : res.cover.certificate) cover.append(py::make_tuple(e.u, e.v));
        d["packing"] = packing;
        d["cover"] = cover;
        return d;
      },
      py::arg("n"), py::arg("edges"), py::arg("budget") = kDefaultNodeBudget);

  m.def("count_triangles", [](std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
    return count_triangles(graph_from(n, edges));
  });

  // Command layer, returned as JSON text and decoded on the Python side.
  m.def("_constants", [] { return cli::constants().dump(); });
  m.def(
      "_simulate",
      [](const std::string& process, std::optional<std::size_t> n, std::optional<double> c,
         std::optional<std::uint64_t> m_edges, std::optional<std::size_t> kn, std::uint64_t seed,
         std::size_t samples, std::size_t checkpoints, std::size_t rounds, std::size_t jobs) {
        cli::SimulateArgs a;
        a.process = kind_from(process);  // raises before the GIL is released
        a.n = n;
        a.c = c;
        a.m = m_edges;
        a.kn = kn;
        a.seed = seed;
        a.samples = samples;
        a.checkpoints = checkpoints;
        a.rounds = rounds;
        a.jobs = jobs;
        py::gil_scoped_release release;
        return cli::cmd_simulate(a).dump();
      },
      py::arg("process"), py::arg("n") = py::none(), py::arg("c") = py::none(), py::arg("m") = py::none(),
      py::arg("kn") = py::none(), py::arg("seed") = 1, py::arg("samples") = 1, py::arg("checkpoints") = 100,
      py::arg("rounds") = 1, py::arg("jobs") = 1);
  m.def(
      "_tuza",
      [](std::size_t n, std::optional<double> c, std::optional<std::uint64_t> m_edges, std::size_t samples,
         std::uint64_t seed, std::size_t jobs) {
        cli::TuzaArgs a;
        a.n = n;
        a.c = c;
        a.m = m_edges;
        a.samples = samples;
        a.seed = seed;
        a.jobs = jobs;
        py::gil_scoped_release release;
        return cli::cmd_tuza(a).dump();
      },
      py::arg("n"), py::arg("c") = py::none(), py::arg("m") = py::none(), py::arg("samples") = 100,
      py::arg("seed") = 1, py::arg("jobs") = 1);
}
