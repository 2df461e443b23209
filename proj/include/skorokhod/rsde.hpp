#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "skorokhod/core/convex_domain.hpp"
#include "skorokhod/core/rng.hpp"
#include "skorokhod/core/sampled_path.hpp"
#include "skorokhod/skorokhodnd.hpp"

namespace skorokhod::rsde {

/// sigma(t, x) is d x r, b(t, x) is in R^d. Both must be reentrant (no hidden
/// mutable state): paths are simulated concurrently.
///
/// lipschitz_k is the declared constant K in
///   ||sigma(t,x) - sigma(t,y)|| + |b(t,x) - b(t,y)| bounds (each <= K|x - y|)
///   ||sigma(t,x)||, |b(t,x)| <= K (1 + |x|^2)^{1/2}
/// where ||.|| is the operator 2-norm.
struct SdeCoefficients {
  std::function<Eigen::MatrixXd(double, const Point&)> sigma;
  std::function<Point(double, const Point&)> drift;
  double lipschitz_k = 1.0;
  std::size_t dim = 1;        ///< d
  std::size_t noise_dim = 1;  ///< r
  std::string name;
};

namespace presets {

/// sigma = I_d, b = 0. K = 1.
SdeCoefficients unit_diffusion(std::size_t dim);
/// sigma = I_d, b = v. K = max(1, |v|).
SdeCoefficients constant_drift(const Point& v);
/// sigma = I_d, b(x) = a x. K = max(1, |a|) unless `declared_k` overrides it.
SdeCoefficients linear_drift(double a, std::size_t dim, std::optional<double> declared_k = std::nullopt);
/// sigma = diag(sin x_i), b = 0. K = 1.
SdeCoefficients sin_diffusion(std::size_t dim);
/// sigma = 0, b = 0 (r = d). K = 1.
SdeCoefficients zero(std::size_t dim);

/// Parses "unit-diffusion", "constant-drift(v1,...,vd)", "linear-drift(a)",
/// "sin-diffusion"; an optional trailing "@K" overrides the declared K.
/// Throws PreconditionError for an unknown name.
SdeCoefficients by_name(const std::string& spec, std::size_t dim);

}  // namespace presets

struct ReflectedSdePath {
  SampledPath X;
  SampledPath phi;
  std::vector<double> total_variation;
  SampledPath driver;  ///< r-dimensional Brownian path that produced X

  reflectnd::SkorokhodNdSolution as_solution() const;
};

/// Projected Euler-Maruyama:
///   Y_{k+1} = project(Y_k + b(t_k, Y_k) dt + sigma(t_k, Y_k) dB_k),
///   dphi_k = Y_{k+1} - (Y_k + b dt + sigma dB).
/// Coefficients are evaluated at left endpoints only. Throws NumericalFault
/// (with the step index) on non-finite coefficients; PreconditionError if
/// x0 is outside closure(D).
ReflectedSdePath euler_reflected(const SdeCoefficients& coeffs, const ConvexDomain& domain, const Point& x0,
                                 const SampledPath& driver, const ProjectionOptions& projection = {});

/// Same, driven by brownian_sample(grid, r, 0, rng).
ReflectedSdePath euler_reflected(const SdeCoefficients& coeffs, const ConvexDomain& domain, const Point& x0,
                                 const TimeGrid& grid, const RngSeed& rng,
                                 const ProjectionOptions& projection = {});

/// X = M + A + Phi via the continuous Skorokhod solver on w = M + A.
/// Throws PreconditionError on grid mismatch or A(0) != 0.
reflectnd::ContinuousSolution semimartingale_skorokhod(const SampledPath& martingale,
                                                       const SampledPath& finite_variation,
                                                       const ConvexDomain& domain,
                                                       const reflectnd::RefinementOptions& options = {});

struct ContractReport {
  double declared_k = 0.0;
  double sigma_lipschitz = 0.0;  ///< max ||sigma(x) - sigma(y)|| / |x - y|
  double drift_lipschitz = 0.0;  ///< max |b(x) - b(y)| / |x - y|
  double sigma_growth = 0.0;     ///< max ||sigma(x)|| / sqrt(1 + |x|^2)
  double drift_growth = 0.0;     ///< max |b(x)| / sqrt(1 + |x|^2)
  std::size_t samples = 0;
  bool pass = false;             ///< all four <= K (1 + 1e-9)
};

/// Spot-checks the Lipschitz and growth bounds on n_samples random
/// (t, x, y) with t in [0, horizon] and x, y in closure(D). Points are drawn
/// around the interior witness at several scales and projected into D; half
/// of the pairs are close together to probe local Lipschitz behaviour.
ContractReport coefficient_contract_check(const SdeCoefficients& coeffs, const ConvexDomain& domain,
                                          std::size_t n_samples, const RngSeed& rng, double horizon = 1.0);

struct StrongErrorRow {
  double dt = 0.0;
  std::size_t steps = 0;
  double rms_gap = 0.0;  ///< RMS of |X_T(level) - X_T(finest)| over paths
};

/// Couples all levels through one Brownian path per sample on the finest
/// grid; coarser drivers are its subsamples (sums of fine increments).
/// dt_levels must be T / N_i with every N_i dividing the finest N and
/// N_finest / N_i a power of two. Rows are ordered as given.
std::vector<StrongErrorRow> strong_error_estimate(const SdeCoefficients& coeffs, const ConvexDomain& domain,
                                                  const Point& x0, double horizon,
                                                  const std::vector<double>& dt_levels, std::size_t n_paths,
                                                  const RngSeed& rng, std::size_t threads = 1);

}  // namespace skorokhod::rsde
