#include "skorokhod/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace skorokhod::harness {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("config: invalid number for '" + key + "': " + value);
  }
  return out;
}

// libstdc++ 11 has no floating-point from_chars.
double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw ConfigError("config: invalid number for '" + key + "': " + value);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config: invalid boolean for '" + key + "': " + value);
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(content).substr(0, eq));
    std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double ExperimentConfig::tolerance(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "experiment") {
      c.experiment = value;
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "n_paths") {
      c.n_paths = parse_number<std::size_t>(key, value);
    } else if (key == "horizon") {
      c.horizon = parse_double(key, value);
    } else if (key == "steps") {
      c.steps = parse_number<std::size_t>(key, value);
    } else if (key == "domain") {
      c.domain = value;
    } else if (key == "domain_file") {
      const std::filesystem::path p(value);
      c.domain_file = (p.is_relative() && !base_dir.empty() ? base_dir / p : p).string();
    } else if (key == "coefficients") {
      c.coefficients = value;
    } else if (key == "out") {
      c.out_dir = value;
    } else if (key == "write_paths") {
      c.write_paths = parse_bool(key, value);
    } else if (key == "threads") {
      c.threads = parse_number<std::size_t>(key, value);
    } else if (key.rfind("tol.", 0) == 0 && key.size() > 4) {
      c.tolerances[key.substr(4)] = parse_double(key, value);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path), path.parent_path());
}

}  // namespace skorokhod::harness
