// skorokhod-kit <experiment> --config <file> [--seed S] [--out DIR]
//
// Exit status: 0 when every check passes, 1 when a check fails (or the run
// aborts numerically), 2 for usage, configuration and precondition errors.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "skorokhod/core/errors.hpp"
#include "skorokhod/harness/config.hpp"
#include "skorokhod/harness/experiments.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string experiment_list() {
  std::string s;
  for (const auto& name : skorokhod::harness::experiment_names()) s += "\n  " + name;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  namespace h = skorokhod::harness;
  h::tune_allocator_for_paths();

  CLI::App app{"Monte Carlo validation runs for reflected diffusions.\n\nExperiments:" + experiment_list(),
               "skorokhod-kit"};
  std::string experiment;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  app.add_option("experiment", experiment, "Experiment name")->required();
  app.add_option("--config", config_path, "Key-value config file")->required();
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--out", out_dir, "Output directory (artifacts go to <out>/<experiment>/)");
  app.set_version_flag("--version", h::library_version());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    h::ExperimentConfig config = h::load_config(config_path);
    if (!config.experiment.empty() && config.experiment != experiment) {
      throw h::ConfigError("config names experiment '" + config.experiment + "' but '" + experiment +
                           "' was requested");
    }
    config.experiment = experiment;
    if (seed) config.seed = *seed;
    if (out_dir) config.out_dir = *out_dir;

    const h::ExperimentResult result = h::run_experiment(config);
    std::cout << h::summary_bytes(result);
    if (!result.pass()) {
      std::cerr << "skorokhod-kit: " << experiment << ": failed checks:\n";
      for (const auto& name : result.failed_checks()) std::cerr << "  " << name << "\n";
      return kExitFail;
    }
    return 0;
  } catch (const h::ConfigError& e) {
    std::cerr << "skorokhod-kit: config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const skorokhod::PreconditionError& e) {
    std::cerr << "skorokhod-kit: precondition error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const skorokhod::UnsupportedError& e) {
    std::cerr << "skorokhod-kit: unsupported: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "skorokhod-kit: run aborted: " << e.what() << "\n";
    return kExitFail;
  }
}
