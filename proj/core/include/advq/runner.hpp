#pragma once

// Experiment orchestration: JSON run configs, method dispatch, persistence of
// run records, parameter sweeps and shot sampling.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "advq/avqds.hpp"
#include "advq/qite.hpp"
#include "advq/record.hpp"
#include "advq/resources.hpp"
#include "advq/transport.hpp"
#include "advq/varqte.hpp"

namespace advq {

struct QiteSection {
  int domain = 0;  ///< 0 means the full register
  QiteSolveConfig solve;
};

struct AvqdsSection {
  int pool_weight = 0;  ///< 0 means the full register
  Connectivity pool_connectivity = Connectivity::all_to_all;
  AvqdsConfig solver;
};

struct RunConfig {
  int dims = 1;
  Transport1DConfig problem_1d;
  Transport2DConfig problem_2d;
  InitialProfile profile;
  Method method = Method::qite;
  double dt = 0.002;
  double total_time = 1.0;
  std::uint64_t seed = 0;
  std::string output;  ///< run directory; empty disables persistence

  QiteSection qite;
  VarqteConfig varqte;
  AvqdsSection avqds;
  Connectivity resource_connectivity = Connectivity::linear_chain;
  int workers = 1;  ///< sweep worker threads

  int qubits() const;
  /// Throws ConfigError on any invalid field.
  void validate() const;
};

/// Parses a config document. Absent keys keep their defaults; unknown keys,
/// wrong types and invalid values raise ConfigError.
RunConfig config_from_json(const std::string& text);
/// Canonical JSON form; config_from_json(config_to_json(c)) reproduces c.
std::string config_to_json(const RunConfig& cfg, int indent = 2);

Problem make_problem(const RunConfig& cfg);

/// Executes the configured method, attaches resource counts, the config echo
/// and the code version, and writes the run directory when cfg.output is set.
RunRecord run(const RunConfig& cfg, const RowObserver& observer = {});

std::string code_version();
/// 64-bit FNV-1a of the text, as 16 lowercase hex digits.
std::string config_hash(const std::string& text);

/// Method-dependent columns, header row, 17 significant digits.
std::string series_csv(const RunRecord& rec);
std::string resources_json(const ResourceCount& count, int indent = 2);
std::string manifest_json(const RunRecord& rec, int indent = 2);
RunRecord record_from_manifest(const std::string& text);

/// Writes config.json, series.csv, resources.json and manifest.json.
void save_run(const RunRecord& rec, const std::filesystem::path& dir);
RunRecord load_run(const std::filesystem::path& dir);

/// Multinomial draw of `shots` basis indices with probabilities |amplitude|^2.
/// Returns counts per basis index.
std::vector<std::int64_t> sample_shots(const StateVector& state, std::int64_t shots,
                                       std::uint64_t seed);

/// One sweep axis: a JSON pointer into the config and the JSON texts of the
/// values it takes.
struct SweepAxis {
  std::string path;
  std::vector<std::string> values;
};

struct SweepSpec {
  std::string base_config;  ///< JSON text
  std::vector<SweepAxis> axes;
  int workers = 1;
};

struct SweepEntry {
  std::vector<std::string> values;  ///< one per axis
  std::string config;
  std::optional<RunRecord> record;
  std::string error;  ///< empty on success
};

/// Cartesian product of the axes over the base config, first axis slowest.
/// An empty axis list or an axis without values yields no runs. Runs are
/// independent; failures are recorded and the sweep continues. When the base
/// config names an output directory each run writes to output/run_NNNN.
std::vector<SweepEntry> sweep(const SweepSpec& spec);

/// Axis values, status, final infidelity, parameter count, total native gates
/// and the error text, one row per entry.
std::string sweep_summary_csv(const SweepSpec& spec, const std::vector<SweepEntry>& entries);

}  // namespace advq
