#include "skorokhod/core/brownian.hpp"

#include <cmath>
#include <numbers>

#include "skorokhod/core/errors.hpp"

namespace skorokhod {
namespace {

constexpr std::uint32_t kIncrementLane = 0;
constexpr std::uint32_t kInitialLawLane = 1;

}  // namespace

Point draw_initial(const InitialLaw& law, const RngSeed& rng) {
  if (const auto* pm = std::get_if<PointMass>(&law)) {
    return pm->x0;
  }
  RandomStream stream(rng, kInitialLawLane);
  return std::get<CustomLaw>(law).sample(stream);
}

SampledPath brownian_sample(const TimeGrid& grid, std::size_t dim, const InitialLaw& law,
                            const RngSeed& rng) {
  if (dim == 0) {
    throw PreconditionError("brownian_sample: dimension must be >= 1");
  }
  const Point x0 = draw_initial(law, rng);
  if (static_cast<std::size_t>(x0.size()) != dim) {
    throw PreconditionError("brownian_sample: initial point has the wrong dimension");
  }
  std::vector<double> v(grid.size() * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    v[j] = x0[static_cast<Eigen::Index>(j)];
    if (!std::isfinite(v[j])) {
      throw NumericalFault("brownian_sample: non-finite initial value", 0);
    }
  }
  RandomStream stream(rng, kIncrementLane);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double sd = std::sqrt(grid.dt(k));
    const double* prev = v.data() + k * dim;
    double* next = v.data() + (k + 1) * dim;
    for (std::size_t j = 0; j < dim; ++j) {
      next[j] = prev[j] + sd * stream.normal();
      if (!std::isfinite(next[j])) {
        throw NumericalFault("brownian_sample: non-finite value", k + 1);
      }
    }
  }
  return SampledPath(grid, dim, std::move(v), PathKind::Continuous);
}

SampledPath brownian_sample(const TimeGrid& grid, const RngSeed& rng) {
  return brownian_sample(grid, 1, PointMass{Point::Zero(1)}, rng);
}

double gaussian_kernel(double t, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (!(t > 0.0)) {
    throw DomainError("gaussian_kernel: t must be > 0");
  }
  const double d = static_cast<double>(x.size());
  return std::pow(2.0 * std::numbers::pi * t, -0.5 * d) * std::exp(-x.squaredNorm() / (2.0 * t));
}

double gaussian_kernel(double t, double x) {
  if (!(t > 0.0)) {
    throw DomainError("gaussian_kernel: t must be > 0");
  }
  return std::exp(-x * x / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
}

}  // namespace skorokhod
