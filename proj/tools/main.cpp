#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tripack/commands.hpp"

using namespace tripack;
using tripack::cli::json;

namespace {

int emit(const json& j) {
  std::cout << j.dump(2) << '\n';
  return j.value("ok", false) ? 0 : 1;
}

int fail(const std::string& command, const std::string& message) {
  std::cout << json{{"ok", false}, {"command", command}, {"error", message}}.dump(2) << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online triangle packing: simulations, curves, exact oracles"};
  app.require_subcommand(1);

  cli::OdeArgs ode;
  std::string ode_out = ".";
  auto* ode_cmd = app.add_subcommand("ode", "Tabulate the deterministic curves and constants");
  ode_cmd->add_option("--t-max", ode.t_max, "Largest t")->capture_default_str();
  ode_cmd->add_option("--grid", ode.grid, "Grid spacing")->capture_default_str();
  ode_cmd->add_option("--out", ode_out, "Output directory")->capture_default_str();

  cli::SimulateArgs sim;
  std::string sim_process;
  std::optional<std::size_t> sim_n, sim_kn, sim_jobs;
  std::optional<double> sim_c;
  std::optional<std::uint64_t> sim_m;
  std::optional<std::string> sim_out;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a random process for several seeds");
  sim_cmd->add_option("--process", sim_process, "k11s, tonly, tf, rtf or rtr")->required();
  sim_cmd->add_option("--n", sim_n, "Number of vertices");
  auto* c_opt = sim_cmd->add_option("--c", sim_c, "Edges per round as c n^{3/2}");
  auto* m_opt = sim_cmd->add_option("--m", sim_m, "Edges per round");
  c_opt->excludes(m_opt);
  sim_cmd->add_option("--kn", sim_kn, "Start rtf/rtr from K_n");
  sim_cmd->add_option("--seed", sim.seed)->capture_default_str();
  sim_cmd->add_option("--samples", sim.samples)->capture_default_str();
  sim_cmd->add_option("--checkpoints", sim.checkpoints)->capture_default_str();
  sim_cmd->add_option("--rounds", sim.rounds, "Sprinkling rounds (k11s)")->capture_default_str();
  sim_cmd->add_option("--out", sim_out, "Directory for traces and aggregate.json");
  sim_cmd->add_option("--format", sim.format, "Trace format")->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sim_cmd->add_option("--jobs", sim_jobs, "Worker threads (TRIPACK_JOBS overrides)");

  cli::FiguresArgs fig;
  std::string fig_out = ".";
  auto* fig_cmd = app.add_subcommand("figures", "Write figure data as CSV");
  fig_cmd->add_option("--c-min", fig.c_min)->capture_default_str();
  fig_cmd->add_option("--c-max", fig.c_max)->capture_default_str();
  fig_cmd->add_option("--grid", fig.grid)->capture_default_str();
  fig_cmd->add_option("--out", fig_out, "Output directory")->capture_default_str();

  cli::OracleArgs orc;
  std::string orc_input;
  auto* orc_cmd = app.add_subcommand("oracle", "Exact packing and covering numbers of an edge list");
  orc_cmd->add_option("--input", orc_input, "Edge-list file")->required();
  orc_cmd->add_option("--budget", orc.budget, "Node budget per search")->capture_default_str();

  cli::TuzaArgs tz;
  std::optional<std::size_t> tz_jobs;
  auto* tz_cmd = app.add_subcommand("tuza", "Check tau <= 2 nu on random G(n,m)");
  tz_cmd->add_option("--n", tz.n)->required();
  auto* tz_c = tz_cmd->add_option("--c", tz.c);
  auto* tz_m = tz_cmd->add_option("--m", tz.m);
  tz_c->excludes(tz_m);
  tz_cmd->add_option("--samples", tz.samples)->capture_default_str();
  tz_cmd->add_option("--seed", tz.seed)->capture_default_str();
  tz_cmd->add_option("--budget", tz.budget)->capture_default_str();
  tz_cmd->add_option("--jobs", tz_jobs);

  cli::ConcentrationArgs con;
  std::optional<std::string> con_csv;
  auto* con_cmd = app.add_subcommand("concentration", "Track codegree families along a packing run");
  con_cmd->add_option("--n", con.n)->capture_default_str();
  con_cmd->add_option("--c", con.c)->capture_default_str();
  con_cmd->add_option("--seed", con.seed)->capture_default_str();
  con_cmd->add_option("--checkpoints", con.checkpoints)->capture_default_str();
  con_cmd->add_option("--vertex-samples", con.vertex_samples)->capture_default_str();
  con_cmd->add_option("--pair-samples", con.pair_samples)->capture_default_str();
  con_cmd->add_option("--r-max", con.r_max)->capture_default_str();
  con_cmd->add_option("--s-max", con.s_max)->capture_default_str();
  con_cmd->add_option("--csv", con_csv, "Per-checkpoint deviations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const std::string name = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    return fail(name, e.what());
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (*ode_cmd) {
      ode.out = ode_out;
      return emit(cli::cmd_ode(ode));
    }
    if (*sim_cmd) {
      const auto kind = parse_process_kind(sim_process);
      if (!kind) return fail(name, "unknown process '" + sim_process + "'");
      sim.process = *kind;
      sim.n = sim_n;
      sim.kn = sim_kn;
      sim.c = sim_c;
      sim.m = sim_m;
      if (sim_out) sim.out = *sim_out;
      sim.jobs = cli::resolve_jobs(sim_jobs);
      return emit(cli::cmd_simulate(sim));
    }
    if (*fig_cmd) {
      fig.out = fig_out;
      return emit(cli::cmd_figures(fig));
    }
    if (*orc_cmd) {
      orc.input = orc_input;
      return emit(cli::cmd_oracle(orc));
    }
    if (*tz_cmd) {
      tz.jobs = cli::resolve_jobs(tz_jobs);
      return emit(cli::cmd_tuza(tz));
    }
    if (*con_cmd) {
      if (con_csv) con.csv = *con_csv;
      return emit(cli::cmd_concentration(con));
    }
  } catch (const std::exception& e) {
    return fail(name, e.what());
  }
  return fail(name, "no command");
}
