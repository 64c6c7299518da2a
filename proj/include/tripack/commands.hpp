#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "tripack/process.hpp"

// Every command returns a JSON object with an "ok" field; the front end
// exits nonzero when it is false.
namespace tripack::cli {

using nlohmann::json;

/// Shortest round-trip decimal form, independent of the C/C++ locale.
std::string format_number(double x);

/// TRIPACK_JOBS if set and positive, else `requested`, else hardware concurrency.
std::size_t resolve_jobs(std::optional<std::size_t> requested);

json constants();

struct OdeArgs {
  double t_max = 5.0;
  double grid = 0.01;
  std::filesystem::path out = ".";
};
/// Writes curves.csv and constants.json under `out`.
json cmd_ode(const OdeArgs& args);

struct SimulateArgs {
  ProcessKind process = ProcessKind::K11sPacking;
  std::optional<std::size_t> n;
  std::optional<double> c;
  std::optional<std::uint64_t> m;
  std::optional<std::size_t> kn;  ///< rtf / rtr start from K_kn
  std::uint64_t seed = 1;
  std::size_t samples = 1;
  std::size_t checkpoints = 100;
  std::size_t rounds = 1;
  std::optional<std::filesystem::path> out;  ///< trace files and aggregate.json
  std::string format = "csv";                ///< trace format: csv or json
  std::size_t jobs = 1;
};
/// Runs sample k with seed derive_seed(seed, k) and aggregates final scaled
/// statistics against the deterministic predictions.
json cmd_simulate(const SimulateArgs& args);

struct FiguresArgs {
  double c_min = 0.01;
  double c_max = 10.0;
  double grid = 0.001;
  std::filesystem::path out = ".";
};
json cmd_figures(const FiguresArgs& args);

struct OracleArgs {
  std::filesystem::path input;
  std::uint64_t budget = 10'000'000;
};
json cmd_oracle(const OracleArgs& args);

struct TuzaArgs {
  std::size_t n = 10;
  std::optional<double> c;
  std::optional<std::uint64_t> m;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::uint64_t budget = 10'000'000;
  std::size_t jobs = 1;
};
/// "ok" is false on any violation or unsolved sample.
json cmd_tuza(const TuzaArgs& args);

struct ConcentrationArgs {
  std::size_t n = 1000;
  double c = 0.5;
  std::uint64_t seed = 1;
  std::size_t checkpoints = 50;
  std::size_t vertex_samples = 100;
  std::size_t pair_samples = 100;
  int r_max = 8;
  int s_max = 8;
  std::optional<std::filesystem::path> csv;
};
json cmd_concentration(const ConcentrationArgs& args);

}  // namespace tripack::cli
