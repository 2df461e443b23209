#include "skorokhod/harness/domain_file.hpp"

#include <optional>
#include <regex>
#include <sstream>

#include "skorokhod/harness/config.hpp"

namespace skorokhod::harness {
namespace {

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  while (used < s.size() && (s[used] == ' ' || s[used] == '\t')) ++used;
  if (used == 0 || used != s.size()) throw ConfigError("domain file: bad number in " + what + ": '" + s + "'");
  return v;
}

Point parse_vector(const std::string& text, const std::string& what) {
  static const std::regex bracket(R"(^\s*\[([^\]]*)\]\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, bracket)) {
    throw ConfigError("domain file: expected [a, b, ...] for " + what);
  }
  std::vector<double> xs;
  std::stringstream ss(m[1].str());
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) throw ConfigError("domain file: empty entry in " + what);
    xs.push_back(to_double(item.substr(first), what));
  }
  if (xs.empty()) throw ConfigError("domain file: empty vector for " + what);
  return Eigen::Map<const Point>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

std::pair<Point, double> parse_pair(const std::string& text, const std::string& what) {
  static const std::regex braces(R"(^\s*\{\s*(\[[^\]]*\])\s*,\s*([^}]+?)\s*\}\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, braces)) {
    throw ConfigError("domain file: expected {[...], number} for " + what);
  }
  return {parse_vector(m[1].str(), what), to_double(m[2].str(), what)};
}

}  // namespace

ConvexDomain parse_domain(std::string_view text) {
  std::optional<std::size_t> dim;
  std::optional<Point> interior;
  std::vector<Halfspace> halfspaces;
  std::vector<Ball> balls;
  for (const auto& [key, value] : parse_key_values(text)) {
    if (key == "dimension") {
      const double d = to_double(value, key);
      if (d < 1 || d != static_cast<double>(static_cast<std::size_t>(d))) {
        throw ConfigError("domain file: dimension must be a positive integer");
      }
      dim = static_cast<std::size_t>(d);
    } else if (key == "halfspace") {
      auto [normal, offset] = parse_pair(value, key);
      halfspaces.push_back({std::move(normal), offset});
    } else if (key == "ball") {
      auto [center, radius] = parse_pair(value, key);
      balls.push_back({std::move(center), radius});
    } else if (key == "interior_point") {
      interior = parse_vector(value, key);
    } else {
      throw ConfigError("domain file: unknown key '" + key + "'");
    }
  }
  if (!dim) throw ConfigError("domain file: missing 'dimension'");
  if (!interior) throw ConfigError("domain file: missing 'interior_point'");
  return ConvexDomain(*dim, std::move(halfspaces), std::move(balls), std::move(*interior));
}

ConvexDomain load_domain(const std::filesystem::path& path) { return parse_domain(read_text_file(path)); }

ConvexDomain domain_preset(const std::string& name) {
  if (name == "half-line") return ConvexDomain::half_line();
  if (name == "half-line-far") return ConvexDomain::halfspace(Point::Ones(1), -1e6, Point::Zero(1));
  if (name == "halfplane") return ConvexDomain::halfspace(Point::Unit(2, 1), 0.0, Point::Unit(2, 1));
  if (name == "orthant") return ConvexDomain::orthant(2);
  if (name == "orthant3") return ConvexDomain::orthant(3);
  if (name == "unit-disc") return ConvexDomain::unit_disc();
  if (name == "strip") return ConvexDomain::strip(0.0, 1.0);
  throw ConfigError("unknown domain preset: " + name);
}

}  // namespace skorokhod::harness
