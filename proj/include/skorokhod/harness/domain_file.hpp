#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "skorokhod/core/convex_domain.hpp"

namespace skorokhod::harness {

/// Domain specification document:
///
///     dimension = 2
///     halfspace = {[0, 1], 0}     # {normal, offset}: <normal, x> >= offset
///     ball = {[0, 0], 1}          # {center, radius}
///     interior_point = [0.5, 0.5]
///
/// halfspace and ball may repeat. Throws ConfigError on malformed input and
/// PreconditionError when the domain itself is invalid.
ConvexDomain parse_domain(std::string_view text);

ConvexDomain load_domain(const std::filesystem::path& path);

/// Named domains: half-line, halfplane, orthant (R^2), orthant3, unit-disc,
/// strip (0 <= y <= 1), half-line-far (x >= -1e6, for free motion).
ConvexDomain domain_preset(const std::string& name);

}  // namespace skorokhod::harness
