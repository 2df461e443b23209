#pragma once

#include "skorokhod/core/brownian.hpp"
#include "skorokhod/core/rng.hpp"
#include "skorokhod/core/sampled_path.hpp"

namespace skorokhod::reflect1d {

/// Reflection of x0 + f at 0: g = x0 + f + h with g >= 0, h nondecreasing
/// from 0, and h increasing only at times where g = 0.
struct Skorokhod1dSolution {
  SampledPath g;  ///< reflected path
  SampledPath h;  ///< regulator (pushing term)
  double x0 = 0.0;

  /// Regulator at an arbitrary time. Step inputs give the cadlag extension;
  /// Continuous inputs give the running minimum of the linear interpolant,
  /// which on each segment is attained at an endpoint.
  double h_at(double t, const SampledPath& f) const;
};

/// h(t_k) = -min_{j<=k}((x0 + f(t_j)) ^ 0), g = x0 + f + h, one pass.
/// When a new minimum is set below 0, g is exactly 0 (bit-exact cancellation).
/// Throws PreconditionError if x0 < 0, f(0) != 0 or f is not scalar.
Skorokhod1dSolution skorokhod_map_1d(const SampledPath& f, double x0);

/// Reflecting Brownian motion X = X(0) + B + phi from a Brownian path with B(0) = 0.
Skorokhod1dSolution rbm_from_skorokhod(const SampledPath& brownian, double x0);

/// Same, with X(0) drawn from `law` (which must put its mass on [0, inf)).
Skorokhod1dSolution rbm_from_skorokhod(const SampledPath& brownian, const InitialLaw& law,
                                       const RngSeed& rng);

/// |B| pointwise.
SampledPath rbm_abs(const SampledPath& brownian);

/// Transition density of reflecting Brownian motion on [0, inf):
/// (2 pi t)^{-1/2} [exp(-(x-y)^2/2t) + exp(-(x+y)^2/2t)].
/// DomainError for t <= 0, PreconditionError for x < 0 or y < 0.
double reflected_density(double t, double x, double y);

/// CDF of |N(0, t)| at y: erf(y / sqrt(2t)) for y >= 0.
double half_normal_cdf(double y, double t = 1.0);

}  // namespace skorokhod::reflect1d
