#include "skorokhod/skorokhodnd.hpp"

#include <algorithm>
#include <cmath>

#include "skorokhod/core/errors.hpp"

namespace skorokhod::reflectnd {
namespace {

SkorokhodNdSolution step_recursion(const SampledPath& w, const ConvexDomain& domain,
                                   const ProjectionOptions& projection) {
  const std::size_t d = w.dim();
  if (d != domain.dim()) {
    throw PreconditionError("Skorokhod solver: path and domain dimensions differ");
  }
  if (!domain.contains(w.point(0), projection.tol)) {
    throw PreconditionError("Skorokhod solver: w(0) is not in the closure of the domain");
  }
  const std::size_t n = w.size();
  std::vector<double> x(n * d);
  std::vector<double> phi(n * d, 0.0);
  std::vector<double> tv(n, 0.0);
  std::vector<std::optional<Point>> directions(n - 1);

  Point acc = Point::Zero(static_cast<Eigen::Index>(d));
  std::copy_n(w.values().data(), d, x.data());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    // Candidate w(t_{k+1}) + phi(t_k); the jump of phi at t_{k+1} moves it to the nearest point.
    const Point candidate = w.point(k + 1) + acc;
    const Point landed = project(candidate, domain, projection);
    const Point dphi = landed - candidate;
    const double step = dphi.norm();
    acc += dphi;
    tv[k + 1] = tv[k] + step;
    if (step > 0.0) directions[k] = dphi / step;
    std::copy_n(landed.data(), d, x.data() + (k + 1) * d);
    std::copy_n(acc.data(), d, phi.data() + (k + 1) * d);
  }
  return {SampledPath(w.grid(), d, std::move(x), PathKind::Step),
          SampledPath(w.grid(), d, std::move(phi), PathKind::Step), std::move(tv), std::move(directions)};
}

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

SampledPath SkorokhodNdSolution::driver() const {
  std::vector<double> v(X.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = X.values()[i] - phi.values()[i];
  return SampledPath(X.grid(), X.dim(), std::move(v), PathKind::Step);
}

SkorokhodNdSolution solve_skorokhod_step(const SampledPath& w, const ConvexDomain& domain,
                                         const ProjectionOptions& projection) {
  if (w.kind() != PathKind::Step) {
    throw PreconditionError("solve_skorokhod_step: input must be a step path (use with_kind(PathKind::Step))");
  }
  return step_recursion(w, domain, projection);
}

SampledPath ContinuousSolution::X_on_input_grid() const { return solution.X.subsampled(stride); }

SampledPath ContinuousSolution::phi_on_input_grid() const { return solution.phi.subsampled(stride); }

ContinuousSolution solve_skorokhod_continuous(const SampledPath& w, const ConvexDomain& domain,
                                              const RefinementOptions& options) {
  if (w.kind() != PathKind::Continuous) {
    throw PreconditionError("solve_skorokhod_continuous: input must be a continuous path");
  }
  if (options.factor < 2) {
    throw PreconditionError("solve_skorokhod_continuous: refinement factor must be >= 2");
  }
  const double tol = options.refine_tol.value_or(1e-4 * (1.0 + w.sup_norm()));

  ContinuousSolution out{step_recursion(w, domain, options.projection), 0, 1, tol, {}, {}};
  out.terminal_variation.push_back(out.solution.total_variation.back());
  // No boundary contact: X = w on the grid, and by convexity on every segment.
  if (out.solution.total_variation.back() == 0.0 || options.max_levels == 0) {
    return out;
  }

  for (std::size_t level = 1; level <= options.max_levels; ++level) {
    const std::size_t stride = checked_pow(options.factor, level);
    SkorokhodNdSolution next = step_recursion(w.refined(stride), domain, options.projection);
    const SampledPath& coarse = out.solution.X;
    double gap = 0.0;
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      gap = std::max(gap, (next.X.point(k * options.factor) - coarse.point(k)).norm());
    }
    out.gaps.push_back(gap);
    out.terminal_variation.push_back(next.total_variation.back());
    out.solution = std::move(next);
    out.levels = level;
    out.stride = stride;
    // One small gap can be a pre-asymptotic accident; also require the
    // previous gap to be of the same order. An exact zero needs no confirmation.
    if (gap == 0.0 || (level >= 2 && gap <= tol && out.gaps[level - 2] <= 2.0 * tol)) return out;
  }
  throw RefinementLimitError("solve_skorokhod_continuous: refinement did not reach tolerance", out.gaps);
}

double tanaka_inequality_gap(const SkorokhodNdSolution& sol, const SkorokhodNdSolution& other) {
  if (sol.X.grid() != other.X.grid() || sol.X.dim() != other.X.dim()) {
    throw PreconditionError("tanaka_inequality_gap: solutions must share grid and dimension");
  }
  const std::size_t n = sol.X.size();
  const auto d = static_cast<Eigen::Index>(sol.X.dim());
  double best = 0.0;  // t = 0: both sides are |w(0) - w~(0)|^2 - |X(0) - X~(0)|^2 = 0
  double stieltjes = 0.0;  // sum_{j<=k} <u_j, dv_j>
  Eigen::VectorXd v_prev = Eigen::VectorXd::Zero(d);
  for (std::size_t k = 1; k < n; ++k) {
    const Eigen::VectorXd v = sol.phi.point(k) - other.phi.point(k);
    const Eigen::VectorXd u = (sol.X.point(k) - sol.phi.point(k)) - (other.X.point(k) - other.phi.point(k));
    stieltjes += u.dot(v - v_prev);
    const double rhs = u.squaredNorm() + 2.0 * (u.dot(v) - stieltjes);
    const double lhs = (sol.X.point(k) - other.X.point(k)).squaredNorm();
    best = std::min(best, rhs - lhs);
    v_prev = v;
  }
  return best;
}

double modulus_gap(const SkorokhodNdSolution& sol, double s, double t) {
  if (s > t) {
    throw PreconditionError("modulus_gap: need s <= t");
  }
  const std::size_t is = sol.X.grid().index_of(s);
  const std::size_t it = sol.X.grid().index_of(t);
  const Eigen::VectorXd wt = sol.X.point(it) - sol.phi.point(it);
  const Eigen::VectorXd ws = sol.X.point(is) - sol.phi.point(is);
  double integral = 0.0;
  for (std::size_t j = is + 1; j <= it; ++j) {
    const Eigen::VectorXd wj = sol.X.point(j) - sol.phi.point(j);
    integral += (wt - wj).dot(sol.phi.point(j) - sol.phi.point(j - 1));
  }
  return (wt - ws).squaredNorm() + 2.0 * integral - (sol.X.point(it) - sol.X.point(is)).squaredNorm();
}

AssociationReport check_association(const SkorokhodNdSolution& sol, const SampledPath& w,
                                    const ConvexDomain& domain, std::optional<double> tol_bd) {
  if (w.grid() != sol.X.grid() || w.dim() != sol.X.dim()) {
    throw PreconditionError("check_association: driver and solution grids differ");
  }
  AssociationReport r;
  for (std::size_t k = 0; k < sol.X.size(); ++k) {
    const auto xk = sol.X.point(k);
    r.max_identity_error =
        std::max(r.max_identity_error, (xk - (w.point(k) + sol.phi.point(k))).norm());
    r.max_violation = std::max(r.max_violation, domain.max_violation(xk));
    if (k == 0) continue;
    const Eigen::VectorXd dphi = sol.phi.point(k) - sol.phi.point(k - 1);
    const double step = dphi.norm();
    const double dtv = sol.total_variation[k] - sol.total_variation[k - 1];
    if (dtv < 0.0) r.variation_monotone = false;
    r.max_variation_mismatch = std::max(r.max_variation_mismatch, std::abs(step - dtv));
    if (step == 0.0) continue;
    const double bd = tol_bd.value_or(default_boundary_tol(xk));
    if (std::abs(domain.max_violation(xk)) > bd) {
      r.interior_mass += step;
      continue;
    }
    // Directions of round-off sized pushes are noise; they carry no mass.
    if (step <= 1e-12 * (1.0 + xk.norm())) continue;
    r.max_normal_angle = std::max(r.max_normal_angle, angle_to_cone(dphi, active_normal_cone(xk, domain, bd)));
  }
  return r;
}

std::string to_string(ConditionStatus status) {
  switch (status) {
    case ConditionStatus::Holds:
      return "holds";
    case ConditionStatus::Fails:
      return "fails";
    case ConditionStatus::Unknown:
      break;
  }
  return "unknown";
}

}  // namespace skorokhod::reflectnd
