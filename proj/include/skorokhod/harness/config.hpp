#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skorokhod::harness {

/// Bad command line, unknown experiment, or malformed/unresolvable config.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered `key = value` pairs from a flat document. Blank lines and text after
/// '#' are ignored; keys may repeat.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_key_values(std::string_view text);

/// Reads a whole file; throws ConfigError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// Everything a run needs. Unset optionals fall back to per-experiment
/// defaults, which reproduce the acceptance-scale runs.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 42;
  std::optional<std::size_t> n_paths;
  std::optional<double> horizon;
  std::optional<std::size_t> steps;
  std::optional<std::string> domain;       ///< preset name
  std::optional<std::string> domain_file;  ///< domain specification document
  std::optional<std::string> coefficients; ///< coefficient preset
  std::optional<std::filesystem::path> out_dir;
  bool write_paths = false;
  std::optional<std::size_t> threads;
  std::map<std::string, double> tolerances;  ///< "tol.<name> = value" overrides

  double tolerance(const std::string& name, double fallback) const;
};

/// Recognized keys: experiment, seed, n_paths, horizon, steps, domain,
/// domain_file, coefficients, out, write_paths, threads, tol.<name>.
/// Relative domain_file paths are resolved against `base_dir`.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace skorokhod::harness
