#include "skorokhod/itocalc.hpp"

#include <algorithm>
#include <cmath>

#include "skorokhod/core/brownian.hpp"
#include "skorokhod/core/errors.hpp"
#include "skorokhod/core/parallel.hpp"

namespace skorokhod::ito {

double PathPrefix::at(std::size_t k) const {
  if (k > last_) {
    throw PreconditionError("PathPrefix: integrand looked ahead of the current time");
  }
  return path_.value(k);
}

Integrand Integrand::constant(double c) {
  return {[c](double, const PathPrefix&) { return c; }, std::nullopt, "constant"};
}

Integrand Integrand::power(int p) {
  return {[p](double, const PathPrefix& x) { return std::pow(x.current(), p); }, std::nullopt,
          "B^" + std::to_string(p)};
}

Integrand Integrand::indicator_above(double a) {
  return {[a](double, const PathPrefix& x) { return x.current() > a ? 1.0 : 0.0; }, 1.0,
          "1{X > a}"};
}

double ito_integral(const Integrand& f, const SampledPath& driver) {
  if (driver.dim() != 1) {
    throw PreconditionError("ito_integral: driver must be one-dimensional");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < driver.size(); ++k) {
    const double fk = f.evaluate(driver.time(k), PathPrefix(driver, k));
    if (!std::isfinite(fk)) {
      throw NumericalFault("ito_integral: integrand returned a non-finite value", k);
    }
    sum += fk * (driver.value(k + 1) - driver.value(k));
  }
  return sum;
}

IsometryEstimate ito_isometry_check(const Integrand& f, double horizon, std::size_t steps, std::size_t n_paths,
                                    const RngSeed& rng, std::size_t threads) {
  const TimeGrid grid = TimeGrid::uniform(horizon, steps);
  std::vector<double> squared(n_paths);
  std::vector<double> energy(n_paths);
  std::vector<double> integral(n_paths);
  parallel_for(n_paths, threads, [&](std::size_t i) {
    const SampledPath b = brownian_sample(grid, child_seed(rng, i));
    double stoch = 0.0;
    double riemann = 0.0;
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
      const double fk = f.evaluate(b.time(k), PathPrefix(b, k));
      if (!std::isfinite(fk)) {
        throw NumericalFault("ito_isometry_check: integrand returned a non-finite value", k);
      }
      stoch += fk * (b.value(k + 1) - b.value(k));
      riemann += fk * fk * grid.dt(k);
    }
    integral[i] = stoch;
    squared[i] = stoch * stoch;
    energy[i] = riemann;
  });
  return {McEstimate::from_samples(squared), McEstimate::from_samples(energy),
          paired_difference(squared, energy), McEstimate::from_samples(integral)};
}

QuadraticVariationPath quadratic_variation(const SampledPath& path) {
  if (path.dim() != 1) {
    throw PreconditionError("quadratic_variation: path must be one-dimensional");
  }
  std::vector<double> qv(path.size(), 0.0);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double d = path.value(k + 1) - path.value(k);
    qv[k + 1] = qv[k] + d * d;
  }
  return {path.grid(), std::move(qv)};
}

QuadraticVariationPath brownian_quadratic_variation(const TimeGrid& grid) {
  return {grid, std::vector<double>(grid.times().begin(), grid.times().end())};
}

void check_partials(const SmoothFunction& fn, const std::vector<std::pair<double, double>>& points) {
  constexpr double kRelTol = 1e-5;
  auto mismatch = [](double fd, double analytic) {
    return std::abs(fd - analytic) > kRelTol * std::max(1.0, std::abs(analytic));
  };
  for (const auto& [t, x] : points) {
    const double hx = 1e-4 * (1.0 + std::abs(x));
    const double ht = 1e-4 * (1.0 + std::abs(t));
    const double f0 = fn.F(t, x);
    const double fp = fn.F(t, x + hx);
    const double fm = fn.F(t, x - hx);
    const double fd_x = (fp - fm) / (2.0 * hx);
    const double fd_xx = (fp - 2.0 * f0 + fm) / (hx * hx);
    const double fd_t = (fn.F(t + ht, x) - fn.F(t - ht, x)) / (2.0 * ht);
    if (mismatch(fd_x, fn.F_x(t, x)) || mismatch(fd_xx, fn.F_xx(t, x)) || mismatch(fd_t, fn.F_t(t, x))) {
      throw ContractError("ito_formula_residual: supplied partial derivatives disagree with finite differences at t=" +
                          std::to_string(t) + ", x=" + std::to_string(x));
    }
  }
}

double ito_formula_residual(const SmoothFunction& fn, const SampledPath& path, const QuadraticVariationPath& qv) {
  if (path.dim() != 1) {
    throw PreconditionError("ito_formula_residual: path must be one-dimensional");
  }
  if (qv.grid != path.grid()) {
    throw PreconditionError("ito_formula_residual: quadratic variation is on a different grid");
  }
  std::vector<std::pair<double, double>> probes;
  constexpr std::size_t kProbes = 5;
  for (std::size_t i = 0; i < kProbes; ++i) {
    const std::size_t k = i * (path.size() - 1) / (kProbes - 1);
    probes.emplace_back(path.time(k), path.value(k));
  }
  check_partials(fn, probes);

  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double t = path.time(k);
    const double x = path.value(k);
    sum += fn.F_t(t, x) * path.grid().dt(k) + fn.F_x(t, x) * (path.value(k + 1) - x) +
           0.5 * fn.F_xx(t, x) * (qv.values[k + 1] - qv.values[k]);
  }
  const double T = path.grid().horizon();
  return fn.F(T, path.back()) - fn.F(0.0, path.front()) - sum;
}

LocalTimeEstimate local_time_occupation(const SampledPath& path, double level, double eps) {
  if (!(eps > 0.0)) {
    throw DomainError("local_time_occupation: bandwidth must be > 0");
  }
  if (path.dim() != 1) {
    throw PreconditionError("local_time_occupation: path must be one-dimensional");
  }
  double sojourn = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (std::abs(path.value(k) - level) < eps) sojourn += path.grid().dt(k);
  }
  return {level, sojourn / (4.0 * eps), eps};
}

LocalTimeEstimate local_time_tanaka(const SampledPath& path, double level) {
  const double above = ito_integral(Integrand::indicator_above(level), path);
  const double value =
      std::max(path.back() - level, 0.0) - std::max(path.front() - level, 0.0) - above;
  return {level, value, std::nullopt};
}

}  // namespace skorokhod::ito
