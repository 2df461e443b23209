#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "skorokhod/core/mc_estimate.hpp"
#include "skorokhod/core/rng.hpp"
#include "skorokhod/core/sampled_path.hpp"

namespace skorokhod::ito {

/// Read-only view of a scalar path up to and including grid index `last`.
/// This is the only access an integrand gets, which makes it adapted.
class PathPrefix {
 public:
  PathPrefix(const SampledPath& path, std::size_t last) : path_(path), last_(last) {}

  std::size_t index() const noexcept { return last_; }
  double time() const { return path_.time(last_); }
  double current() const { return path_.value(last_); }
  double at(std::size_t k) const;  ///< throws PreconditionError for k > index()

 private:
  const SampledPath& path_;
  std::size_t last_;
};

/// f(t, path up to t). `m2_bound` is an optional declared bound on
/// E int_0^T f^2 dt; it is documentation, not verified.
struct Integrand {
  std::function<double(double, const PathPrefix&)> evaluate;
  std::optional<double> m2_bound;
  std::string name;

  static Integrand constant(double c);
  /// f(t) = X_t^p for the path being integrated against.
  static Integrand power(int p);
  /// f(t) = 1{X_t > a}.
  static Integrand indicator_above(double a);
};

/// Left-point Ito sum sum_k f(t_k, X|[0,t_k]) (X_{k+1} - X_k). There is no
/// midpoint or right-point variant.
/// Throws NumericalFault on a non-finite integrand value.
double ito_integral(const Integrand& f, const SampledPath& driver);

struct IsometryEstimate {
  McEstimate lhs;         ///< E[(int f dB)^2]
  McEstimate rhs;         ///< E[int f^2 dt] (left-point Riemann sum)
  McEstimate difference;  ///< paired lhs - rhs; its std_error is the joint SE
  McEstimate integral;    ///< E[int f dB], should be 0
};

/// Monte Carlo check of E(int_0^T f dB)^2 = E int_0^T f^2 dr over `n_paths`
/// independent Brownian paths on a uniform grid with `steps` steps.
/// Path i uses child_seed(rng, i); the result does not depend on threading.
IsometryEstimate ito_isometry_check(const Integrand& f, double horizon, std::size_t steps,
                                    std::size_t n_paths, const RngSeed& rng,
                                    std::size_t threads = 1);

/// Nondecreasing path starting at 0 on a grid.
struct QuadraticVariationPath {
  TimeGrid grid;
  std::vector<double> values;

  double terminal() const { return values.back(); }
};

/// Realized quadratic variation: values[k] = sum_{j<k} (X_{j+1} - X_j)^2.
QuadraticVariationPath quadratic_variation(const SampledPath& path);

/// The declared quadratic variation of Brownian motion, [B]_t = t.
QuadraticVariationPath brownian_quadratic_variation(const TimeGrid& grid);

/// F(t, x) with its partial derivatives.
struct SmoothFunction {
  std::function<double(double, double)> F;
  std::function<double(double, double)> F_t;
  std::function<double(double, double)> F_x;
  std::function<double(double, double)> F_xx;
};

/// Compares the supplied partials against central finite differences at the
/// given (t, x) points; throws ContractError when the relative error exceeds
/// 1e-5.
void check_partials(const SmoothFunction& fn, const std::vector<std::pair<double, double>>& points);

/// F(T, X_T) - F(0, X_0) - sum_k [F_t dt + F_x dX + 1/2 F_xx d[X]], partials
/// at left endpoints. Partials are spot-checked first at a few path points.
double ito_formula_residual(const SmoothFunction& fn, const SampledPath& path,
                            const QuadraticVariationPath& qv);

/// Level-a occupation estimate of the local time (half the occupation
/// density): (1 / 4 eps) sum_k dt_k 1{|X_k - a| < eps}.
struct LocalTimeEstimate {
  double level = 0.0;
  double value = 0.0;
  std::optional<double> epsilon;
};

/// Throws DomainError for eps <= 0.
LocalTimeEstimate local_time_occupation(const SampledPath& path, double level, double eps);

/// (X_T - a)^+ - (X_0 - a)^+ - int 1{X > a} dX, the integral being
/// ito_integral with Integrand::indicator_above(a).
LocalTimeEstimate local_time_tanaka(const SampledPath& path, double level);

}  // namespace skorokhod::ito
