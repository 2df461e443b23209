#include "skorokhod/skorokhod1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "skorokhod/core/errors.hpp"

namespace skorokhod::reflect1d {

double Skorokhod1dSolution::h_at(double t, const SampledPath& f) const {
  const auto& grid = h.grid();
  if (t < 0.0 || t > grid.horizon()) {
    throw PreconditionError("h_at: time outside [0, T]");
  }
  const auto times = grid.times();
  auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto k = static_cast<std::size_t>((it - times.begin()) - 1);
  const double hk = h.value(k);
  if (f.kind() == PathKind::Step || times[k] == t) {
    return hk;
  }
  const double ft = f.at(t)[0];
  return std::max(hk, -std::min(x0 + ft, 0.0));
}

Skorokhod1dSolution skorokhod_map_1d(const SampledPath& f, double x0) {
  if (f.dim() != 1) {
    throw PreconditionError("skorokhod_map_1d: input path must be one-dimensional");
  }
  if (!(x0 >= 0.0)) {
    throw PreconditionError("skorokhod_map_1d: starting point must be >= 0");
  }
  if (f.front() != 0.0) {
    throw PreconditionError("skorokhod_map_1d: input path must start at 0");
  }
  const std::size_t n = f.size();
  std::vector<double> g(n);
  std::vector<double> h(n);
  double running_min = 0.0;  // min_{j<=k} ((x0 + f_j) ^ 0)
  for (std::size_t k = 0; k < n; ++k) {
    const double shifted = x0 + f.value(k);
    running_min = std::min(running_min, shifted);
    h[k] = 0.0 - running_min;  // avoids -0.0
    g[k] = shifted + h[k];
  }
  return {SampledPath::scalar(f.grid(), std::move(g), f.kind()),
          SampledPath::scalar(f.grid(), std::move(h), f.kind()), x0};
}

Skorokhod1dSolution rbm_from_skorokhod(const SampledPath& brownian, double x0) {
  return skorokhod_map_1d(brownian, x0);
}

Skorokhod1dSolution rbm_from_skorokhod(const SampledPath& brownian, const InitialLaw& law, const RngSeed& rng) {
  const Point start = draw_initial(law, rng);
  if (start.size() != 1) {
    throw PreconditionError("rbm_from_skorokhod: initial law must be one-dimensional");
  }
  return skorokhod_map_1d(brownian, start[0]);
}

SampledPath rbm_abs(const SampledPath& brownian) {
  std::vector<double> v(brownian.values().begin(), brownian.values().end());
  for (double& x : v) x = std::abs(x);
  return SampledPath(brownian.grid(), brownian.dim(), std::move(v), brownian.kind());
}

double reflected_density(double t, double x, double y) {
  if (!(t > 0.0)) {
    throw DomainError("reflected_density: t must be > 0");
  }
  if (x < 0.0 || y < 0.0) {
    throw PreconditionError("reflected_density: x and y must be >= 0");
  }
  const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi * t);
  return c * (std::exp(-(x - y) * (x - y) / (2.0 * t)) + std::exp(-(x + y) * (x + y) / (2.0 * t)));
}

double half_normal_cdf(double y, double t) {
  if (y <= 0.0) return 0.0;
  return std::erf(y / std::sqrt(2.0 * t));
}

}  // namespace skorokhod::reflect1d
