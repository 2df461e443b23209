#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>

#include "skorokhod/core/sampled_path.hpp"
#include "skorokhod/skorokhodnd.hpp"

namespace skorokhod::harness {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV writers: header row, then one row per grid point, 17 significant digits.

/// t, x (d = 1) or t, x1..xd.
void write_path_csv(const SampledPath& path, std::ostream& out);

/// t, B, X_reflected: a Brownian path and its reflection on a common grid.
void write_reflected_pair_csv(const SampledPath& brownian, const SampledPath& reflected, std::ostream& out);

/// t, X1..Xd, phi1..phid, phi_variation.
void write_solution_csv(const reflectnd::SkorokhodNdSolution& sol, std::ostream& out);

/// Opens `file` for writing (creating parent directories) and calls `writer`.
/// Throws IoError when the file cannot be written.
template <typename Writer>
void write_file(const std::filesystem::path& file, Writer&& writer);

void ensure_parent_directory(const std::filesystem::path& file);

}  // namespace skorokhod::harness

#include <fstream>

template <typename Writer>
void skorokhod::harness::write_file(const std::filesystem::path& file, Writer&& writer) {
  ensure_parent_directory(file);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + file.string());
  writer(out);
  out.flush();
  if (!out) throw IoError("write failed for " + file.string());
}
