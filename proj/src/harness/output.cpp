#include "skorokhod/harness/output.hpp"

#include <fmt/format.h>

#include "skorokhod/core/errors.hpp"

namespace skorokhod::harness {
namespace {

void put(std::ostream& out, double v) { out << fmt::format("{:.17g}", v); }

}  // namespace

void write_path_csv(const SampledPath& path, std::ostream& out) {
  out << 't';
  if (path.dim() == 1) {
    out << ",x";
  } else {
    for (std::size_t j = 0; j < path.dim(); ++j) out << ",x" << j + 1;
  }
  out << '\n';
  for (std::size_t k = 0; k < path.size(); ++k) {
    put(out, path.time(k));
    for (std::size_t j = 0; j < path.dim(); ++j) {
      out << ',';
      put(out, path.value(k, j));
    }
    out << '\n';
  }
}

void write_reflected_pair_csv(const SampledPath& brownian, const SampledPath& reflected, std::ostream& out) {
  if (brownian.grid() != reflected.grid() || brownian.dim() != 1 || reflected.dim() != 1) {
    throw PreconditionError("write_reflected_pair_csv: need two scalar paths on one grid");
  }
  out << "t,B,X_reflected\n";
  for (std::size_t k = 0; k < brownian.size(); ++k) {
    put(out, brownian.time(k));
    out << ',';
    put(out, brownian.value(k));
    out << ',';
    put(out, reflected.value(k));
    out << '\n';
  }
}

void write_solution_csv(const reflectnd::SkorokhodNdSolution& sol, std::ostream& out) {
  const std::size_t d = sol.X.dim();
  out << 't';
  for (std::size_t j = 0; j < d; ++j) out << ",X" << j + 1;
  for (std::size_t j = 0; j < d; ++j) out << ",phi" << j + 1;
  out << ",phi_variation\n";
  for (std::size_t k = 0; k < sol.X.size(); ++k) {
    put(out, sol.X.time(k));
    for (std::size_t j = 0; j < d; ++j) {
      out << ',';
      put(out, sol.X.value(k, j));
    }
    for (std::size_t j = 0; j < d; ++j) {
      out << ',';
      put(out, sol.phi.value(k, j));
    }
    out << ',';
    put(out, sol.total_variation[k]);
    out << '\n';
  }
}

void ensure_parent_directory(const std::filesystem::path& file) {
  const auto parent = file.parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(parent, ec);
  if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
}

}  // namespace skorokhod::harness
