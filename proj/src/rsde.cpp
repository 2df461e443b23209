#include "skorokhod/rsde.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

#include <Eigen/SVD>

#include "skorokhod/core/brownian.hpp"
#include "skorokhod/core/errors.hpp"
#include "skorokhod/core/parallel.hpp"

namespace skorokhod::rsde {
namespace {

double operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

Point random_normal_vector(RandomStream& rs, Eigen::Index d) {
  Point v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = rs.normal();
  return v;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

namespace presets {

SdeCoefficients unit_diffusion(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return {[d](double, const Point&) -> Eigen::MatrixXd { return Eigen::MatrixXd::Identity(d, d); },
          [d](double, const Point&) -> Point { return Point::Zero(d); },
          1.0, dim, dim, "unit-diffusion"};
}

SdeCoefficients constant_drift(const Point& v) {
  const auto d = v.size();
  return {[d](double, const Point&) -> Eigen::MatrixXd { return Eigen::MatrixXd::Identity(d, d); },
          [v](double, const Point&) -> Point { return v; },
          std::max(1.0, v.norm()), static_cast<std::size_t>(d), static_cast<std::size_t>(d), "constant-drift"};
}

SdeCoefficients linear_drift(double a, std::size_t dim, std::optional<double> declared_k) {
  const auto d = static_cast<Eigen::Index>(dim);
  return {[d](double, const Point&) -> Eigen::MatrixXd { return Eigen::MatrixXd::Identity(d, d); },
          [a](double, const Point& x) -> Point { return a * x; },
          declared_k.value_or(std::max(1.0, std::abs(a))), dim, dim, "linear-drift"};
}

SdeCoefficients sin_diffusion(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return {[](double, const Point& x) -> Eigen::MatrixXd { return x.array().sin().matrix().asDiagonal(); },
          [d](double, const Point&) -> Point { return Point::Zero(d); },
          1.0, dim, dim, "sin-diffusion"};
}

SdeCoefficients zero(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return {[d](double, const Point&) -> Eigen::MatrixXd { return Eigen::MatrixXd::Zero(d, d); },
          [d](double, const Point&) -> Point { return Point::Zero(d); },
          1.0, dim, dim, "zero"};
}

SdeCoefficients by_name(const std::string& spec, std::size_t dim) {
  static const std::regex pattern(R"(^\s*([a-z-]+)\s*(?:\(([^)]*)\))?\s*(?:@\s*([-+0-9.eE]+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(spec, m, pattern)) {
    throw PreconditionError("unknown coefficient preset: " + spec);
  }
  const std::string name = m[1];
  std::vector<double> args;
  {
    std::string list = m[2];
    std::replace(list.begin(), list.end(), ',', ' ');
    std::istringstream in(list);
    double v = 0.0;
    while (in >> v) args.push_back(v);
    if (!in.eof()) throw PreconditionError("bad preset arguments: " + spec);
  }
  std::optional<double> k;
  if (m[3].matched) k = std::stod(m[3]);

  SdeCoefficients c;
  if (name == "unit-diffusion" && args.empty()) {
    c = unit_diffusion(dim);
  } else if (name == "sin-diffusion" && args.empty()) {
    c = sin_diffusion(dim);
  } else if (name == "zero" && args.empty()) {
    c = zero(dim);
  } else if (name == "constant-drift" && args.size() == dim) {
    c = constant_drift(Eigen::Map<const Point>(args.data(), static_cast<Eigen::Index>(dim)));
  } else if (name == "linear-drift" && args.size() == 1) {
    c = linear_drift(args[0], dim);
  } else {
    throw PreconditionError("unknown coefficient preset or wrong argument count: " + spec);
  }
  if (k) {
    if (!(*k > 0.0)) throw PreconditionError("declared K must be > 0");
    c.lipschitz_k = *k;
  }
  c.name = spec;
  return c;
}

}  // namespace presets

reflectnd::SkorokhodNdSolution ReflectedSdePath::as_solution() const {
  std::vector<std::optional<Point>> dirs(X.size() - 1);
  for (std::size_t k = 0; k + 1 < X.size(); ++k) {
    const Point d = phi.point(k + 1) - phi.point(k);
    const double n = d.norm();
    if (n > 0.0) dirs[k] = d / n;
  }
  return {X, phi, total_variation, std::move(dirs)};
}

ReflectedSdePath euler_reflected(const SdeCoefficients& coeffs, const ConvexDomain& domain, const Point& x0,
                                 const SampledPath& driver, const ProjectionOptions& projection) {
  const std::size_t d = coeffs.dim;
  const auto di = static_cast<Eigen::Index>(d);
  const auto ri = static_cast<Eigen::Index>(coeffs.noise_dim);
  if (domain.dim() != d || static_cast<std::size_t>(x0.size()) != d) {
    throw PreconditionError("euler_reflected: coefficient, domain and x0 dimensions differ");
  }
  if (driver.dim() != coeffs.noise_dim) {
    throw PreconditionError("euler_reflected: driver dimension differs from the noise dimension");
  }
  if (!domain.contains(x0, projection.tol)) {
    throw PreconditionError("euler_reflected: x0 is not in the closure of the domain");
  }
  const std::size_t n = driver.size();
  std::vector<double> xs(n * d);
  std::vector<double> phis(n * d, 0.0);
  std::vector<double> tv(n, 0.0);
  Point y = x0;
  Point acc = Point::Zero(di);
  std::copy_n(y.data(), d, xs.data());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double t = driver.time(k);
    const Eigen::MatrixXd s = coeffs.sigma(t, y);
    const Point b = coeffs.drift(t, y);
    if (s.rows() != di || s.cols() != ri || b.size() != di) {
      throw PreconditionError("euler_reflected: coefficient returned the wrong shape");
    }
    if (!s.allFinite() || !b.allFinite()) {
      throw NumericalFault("euler_reflected: non-finite coefficient", k);
    }
    const Point candidate = y + b * driver.grid().dt(k) + s * (driver.point(k + 1) - driver.point(k));
    if (!candidate.allFinite()) {
      throw NumericalFault("euler_reflected: non-finite state", k + 1);
    }
    const Point landed = project(candidate, domain, projection);
    const Point dphi = landed - candidate;
    acc += dphi;
    tv[k + 1] = tv[k] + dphi.norm();
    y = landed;
    std::copy_n(y.data(), d, xs.data() + (k + 1) * d);
    std::copy_n(acc.data(), d, phis.data() + (k + 1) * d);
  }
  return {SampledPath(driver.grid(), d, std::move(xs), PathKind::Step),
          SampledPath(driver.grid(), d, std::move(phis), PathKind::Step), std::move(tv), driver};
}

ReflectedSdePath euler_reflected(const SdeCoefficients& coeffs, const ConvexDomain& domain, const Point& x0,
                                 const TimeGrid& grid, const RngSeed& rng, const ProjectionOptions& projection) {
  const SampledPath driver =
      brownian_sample(grid, coeffs.noise_dim, PointMass{Point::Zero(static_cast<Eigen::Index>(coeffs.noise_dim))}, rng);
  return euler_reflected(coeffs, domain, x0, driver, projection);
}

reflectnd::ContinuousSolution semimartingale_skorokhod(const SampledPath& martingale,
                                                       const SampledPath& finite_variation,
                                                       const ConvexDomain& domain,
                                                       const reflectnd::RefinementOptions& options) {
  if (martingale.grid() != finite_variation.grid() || martingale.dim() != finite_variation.dim()) {
    throw PreconditionError("semimartingale_skorokhod: M and A must share grid and dimension");
  }
  if (finite_variation.point(0).norm() != 0.0) {
    throw PreconditionError("semimartingale_skorokhod: A(0) must be 0");
  }
  std::vector<double> w(martingale.values().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = martingale.values()[i] + finite_variation.values()[i];
  return reflectnd::solve_skorokhod_continuous(
      SampledPath(martingale.grid(), martingale.dim(), std::move(w), PathKind::Continuous), domain, options);
}

ContractReport coefficient_contract_check(const SdeCoefficients& coeffs, const ConvexDomain& domain,
                                          std::size_t n_samples, const RngSeed& rng, double horizon) {
  ContractReport r;
  r.declared_k = coeffs.lipschitz_k;
  const auto d = static_cast<Eigen::Index>(domain.dim());
  RandomStream rs(rng);
  constexpr double kScales[] = {0.5, 2.0, 8.0};
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double scale = kScales[i % 3];
    const double t = horizon * rs.uniform();
    const Point x = project(domain.interior_point() + scale * random_normal_vector(rs, d), domain);
    const Point y = (i % 2 == 0) ? project(x + 1e-3 * scale * random_normal_vector(rs, d), domain)
                                 : project(domain.interior_point() + scale * random_normal_vector(rs, d), domain);
    const Eigen::MatrixXd sx = coeffs.sigma(t, x);
    const Point bx = coeffs.drift(t, x);
    const double growth = std::sqrt(1.0 + x.squaredNorm());
    r.sigma_growth = std::max(r.sigma_growth, operator_norm(sx) / growth);
    r.drift_growth = std::max(r.drift_growth, bx.norm() / growth);
    const double dist = (x - y).norm();
    if (dist > 0.0) {
      r.sigma_lipschitz = std::max(r.sigma_lipschitz, operator_norm(sx - coeffs.sigma(t, y)) / dist);
      r.drift_lipschitz = std::max(r.drift_lipschitz, (bx - coeffs.drift(t, y)).norm() / dist);
    }
    ++r.samples;
  }
  const double limit = coeffs.lipschitz_k * (1.0 + 1e-9);
  r.pass = r.sigma_lipschitz <= limit && r.drift_lipschitz <= limit && r.sigma_growth <= limit &&
           r.drift_growth <= limit;
  return r;
}

std::vector<StrongErrorRow> strong_error_estimate(const SdeCoefficients& coeffs, const ConvexDomain& domain,
                                                  const Point& x0, double horizon,
                                                  const std::vector<double>& dt_levels, std::size_t n_paths,
                                                  const RngSeed& rng, std::size_t threads) {
  if (dt_levels.empty()) {
    throw PreconditionError("strong_error_estimate: need at least one level");
  }
  std::vector<std::size_t> steps;
  for (double dt : dt_levels) {
    if (!(dt > 0.0)) throw PreconditionError("strong_error_estimate: dt must be > 0");
    const double n = horizon / dt;
    const auto rounded = static_cast<std::size_t>(std::llround(n));
    if (rounded == 0 || std::abs(n - static_cast<double>(rounded)) > 1e-9 * n) {
      throw PreconditionError("strong_error_estimate: dt does not divide the horizon");
    }
    steps.push_back(rounded);
  }
  const std::size_t finest = *std::max_element(steps.begin(), steps.end());
  for (std::size_t n : steps) {
    if (finest % n != 0 || !is_power_of_two(finest / n)) {
      throw PreconditionError("strong_error_estimate: levels are not dyadically nested");
    }
  }
  const TimeGrid fine_grid = TimeGrid::uniform(horizon, finest);
  const auto r = static_cast<Eigen::Index>(coeffs.noise_dim);
  const std::size_t levels = steps.size();
  std::vector<double> sq(n_paths * levels, 0.0);
  parallel_for(n_paths, threads, [&](std::size_t i) {
    const SampledPath driver = brownian_sample(fine_grid, coeffs.noise_dim, PointMass{Point::Zero(r)}, child_seed(rng, i));
    const Point reference = euler_reflected(coeffs, domain, x0, driver).X.point(finest);
    for (std::size_t l = 0; l < levels; ++l) {
      const SampledPath coarse = driver.subsampled(finest / steps[l]);
      const Point xt = euler_reflected(coeffs, domain, x0, coarse).X.point(steps[l]);
      sq[i * levels + l] = (xt - reference).squaredNorm();
    }
  });
  std::vector<StrongErrorRow> rows;
  for (std::size_t l = 0; l < levels; ++l) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n_paths; ++i) sum += sq[i * levels + l];
    rows.push_back({dt_levels[l], steps[l], std::sqrt(sum / static_cast<double>(std::max<std::size_t>(n_paths, 1)))});
  }
  return rows;
}

}  // namespace skorokhod::rsde
