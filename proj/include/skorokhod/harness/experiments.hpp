#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "skorokhod/harness/config.hpp"

namespace skorokhod::harness {

using Json = nlohmann::ordered_json;

/// One named assertion of an experiment.
struct Check {
  std::string name;
  double value = 0.0;
  Json threshold;        ///< number, or [lo, hi] for relation "in"
  std::string relation;  ///< "<=", "<", ">=", "==", "in"
  bool pass = false;
};

struct ExperimentResult {
  std::string experiment;
  Json summary;  ///< deterministic given the config; no timing or host data
  std::vector<Check> checks;
  double wall_seconds = 0.0;

  bool pass() const;
  std::vector<std::string> failed_checks() const;
  int exit_code() const { return pass() ? 0 : 1; }
};

/// skorokhod-1d-props, rbm-density, local-time, ito-isometry, ito-formula,
/// nd-skorokhod-props, rsde-consistency, condition-checks, strong-error.
const std::vector<std::string>& experiment_names();

/// Runs config.experiment. When config.out_dir is set, writes
/// <out>/<experiment>/summary.json, manifest.json and (with write_paths)
/// paths.csv. Throws ConfigError for an unknown experiment or unresolvable
/// domain/preset, PreconditionError for invalid sizes (e.g. n_paths < 2).
ExperimentResult run_experiment(const ExperimentConfig& config);

/// The exact bytes written to summary.json.
std::string summary_bytes(const ExperimentResult& result);

std::string library_version();

/// Keeps path-sized buffers on the heap instead of fresh mmap pages per
/// allocation (glibc only; a no-op elsewhere). Call once at startup.
void tune_allocator_for_paths();

}  // namespace skorokhod::harness
