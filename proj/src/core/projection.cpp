#include <cmath>
#include <vector>

#include "skorokhod/core/convex_domain.hpp"
#include "skorokhod/core/errors.hpp"

namespace skorokhod {
namespace {

// Projection onto the single constraint i. Identity on that constraint set.
Point project_onto(const ConvexDomain& domain, std::size_t i, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const auto& hs = domain.halfspaces();
  if (i < hs.size()) {
    const double gap = hs[i].offset - hs[i].normal.dot(x);
    if (gap <= 0.0) return x;
    return x + gap * hs[i].normal;
  }
  const auto& b = domain.balls()[i - hs.size()];
  const Point rel = x - b.center;
  const double dist = rel.norm();
  if (dist <= b.radius) return x;
  return b.center + (b.radius / dist) * rel;
}

}  // namespace

Point project(const Eigen::Ref<const Eigen::VectorXd>& x, const ConvexDomain& domain,
              const ProjectionOptions& options) {
  if (x.size() != static_cast<Eigen::Index>(domain.dim())) {
    throw PreconditionError("project: point dimension does not match the domain");
  }
  std::size_t violated = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < domain.constraint_count(); ++i) {
    if (domain.violation(i, x) > 0.0) {
      ++violated;
      last = i;
    }
  }
  if (violated == 0) return x;
  if (violated == 1) {
    Point p = project_onto(domain, last, x);
    if (domain.max_violation(p) <= options.tol) return p;
  }

  // Dykstra: cyclic projections with per-set correction terms.
  const std::size_t m = domain.constraint_count();
  std::vector<Point> corrections(m, Point::Zero(x.size()));
  Point y = x;
  double change = 0.0;
  double residual = 0.0;
  for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
    const Point before = y;
    for (std::size_t i = 0; i < m; ++i) {
      const Point z = y + corrections[i];
      y = project_onto(domain, i, z);
      corrections[i] = z - y;
    }
    change = (y - before).norm();
    residual = std::max(0.0, domain.max_violation(y));
    if (change <= options.tol && residual <= options.tol) return y;
  }
  throw IterationLimitError("project: Dykstra iteration did not converge", y, std::max(change, residual));
}

}  // namespace skorokhod
