#pragma once

#include <cstddef>
#include <functional>
#include <variant>

#include "skorokhod/core/rng.hpp"
#include "skorokhod/core/sampled_path.hpp"

namespace skorokhod {

/// Starting distribution mu of a path.
struct PointMass {
  Point x0;
};

/// Draws a starting point from the given stream. Must not keep hidden state.
struct CustomLaw {
  std::function<Point(RandomStream&)> sample;
};

using InitialLaw = std::variant<PointMass, CustomLaw>;

/// Draws the starting point from a law using the dedicated initial-law lane
/// of `rng` (independent of the increment lane).
Point draw_initial(const InitialLaw& law, const RngSeed& rng);

/// d-dimensional Brownian motion on `grid`: values[0] ~ law, increments are
/// independent N(0, dt * I). Increments are generated left to right, so the
/// path on grid.prefix(n) is the prefix of the path on grid.
/// Throws NumericalFault if a value comes out non-finite.
SampledPath brownian_sample(const TimeGrid& grid, std::size_t dim, const InitialLaw& law,
                            const RngSeed& rng);

/// Standard 1D Brownian motion started at 0.
SampledPath brownian_sample(const TimeGrid& grid, const RngSeed& rng);

/// Heat kernel (2 pi t)^{-d/2} exp(-|x|^2 / 2t). Throws DomainError for t <= 0.
double gaussian_kernel(double t, const Eigen::Ref<const Eigen::VectorXd>& x);
double gaussian_kernel(double t, double x);

}  // namespace skorokhod
