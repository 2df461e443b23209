#include "skorokhod/core/convex_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "skorokhod/core/errors.hpp"
#include "skorokhod/core/nnls.hpp"

namespace skorokhod {

ConvexDomain::ConvexDomain(std::size_t dim, std::vector<Halfspace> halfspaces, std::vector<Ball> balls,
                           Point interior_point)
    : dim_(dim), halfspaces_(std::move(halfspaces)), balls_(std::move(balls)), interior_(std::move(interior_point)) {
  if (dim_ == 0) {
    throw PreconditionError("ConvexDomain: dimension must be >= 1");
  }
  const auto d = static_cast<Eigen::Index>(dim_);
  for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
    const auto& h = halfspaces_[i];
    if (h.normal.size() != d) {
      throw PreconditionError("ConvexDomain: halfspace " + std::to_string(i) + " has the wrong dimension");
    }
    if (std::abs(h.normal.norm() - 1.0) > 1e-12) {
      throw PreconditionError("ConvexDomain: halfspace " + std::to_string(i) + " normal is not a unit vector");
    }
    if (!std::isfinite(h.offset)) {
      throw PreconditionError("ConvexDomain: halfspace offset must be finite");
    }
  }
  for (std::size_t j = 0; j < balls_.size(); ++j) {
    const auto& b = balls_[j];
    if (b.center.size() != d) {
      throw PreconditionError("ConvexDomain: ball " + std::to_string(j) + " has the wrong dimension");
    }
    if (!(b.radius > 0.0) || !std::isfinite(b.radius)) {
      throw PreconditionError("ConvexDomain: ball radius must be finite and > 0");
    }
  }
  if (interior_.size() != d) {
    throw PreconditionError("ConvexDomain: interior point has the wrong dimension");
  }
  for (std::size_t i = 0; i < constraint_count(); ++i) {
    if (!(violation(i, interior_) < 0.0)) {
      throw PreconditionError("ConvexDomain: interior point is not strictly inside constraint " +
                              std::to_string(i));
    }
  }
}

ConvexDomain ConvexDomain::half_line() {
  return ConvexDomain(1, {Halfspace{Point::Ones(1), 0.0}}, {}, Point::Ones(1));
}

ConvexDomain ConvexDomain::halfspace(Point normal, double offset, Point interior_point) {
  const auto d = static_cast<std::size_t>(normal.size());
  return ConvexDomain(d, {Halfspace{std::move(normal), offset}}, {}, std::move(interior_point));
}

ConvexDomain ConvexDomain::orthant(std::size_t dim) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < dim; ++i) {
    Point n = Point::Zero(static_cast<Eigen::Index>(dim));
    n[static_cast<Eigen::Index>(i)] = 1.0;
    hs.push_back({n, 0.0});
  }
  return ConvexDomain(dim, std::move(hs), {}, Point::Ones(static_cast<Eigen::Index>(dim)));
}

ConvexDomain ConvexDomain::ball(Point center, double radius) {
  const auto d = static_cast<std::size_t>(center.size());
  Point inside = center;
  return ConvexDomain(d, {}, {Ball{std::move(center), radius}}, std::move(inside));
}

ConvexDomain ConvexDomain::unit_disc() { return ball(Point::Zero(2), 1.0); }

ConvexDomain ConvexDomain::strip(double lower, double upper) {
  if (!(upper > lower)) {
    throw PreconditionError("ConvexDomain::strip: need lower < upper");
  }
  Point up(2), down(2), mid(2);
  up << 0.0, 1.0;
  down << 0.0, -1.0;
  mid << 0.0, 0.5 * (lower + upper);
  return ConvexDomain(2, {Halfspace{up, lower}, Halfspace{down, -upper}}, {}, mid);
}

double ConvexDomain::violation(std::size_t i, const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (i < halfspaces_.size()) {
    const auto& h = halfspaces_[i];
    return h.offset - h.normal.dot(x);
  }
  const auto& b = balls_[i - halfspaces_.size()];
  return (x - b.center).norm() - b.radius;
}

double ConvexDomain::max_violation(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < constraint_count(); ++i) {
    m = std::max(m, violation(i, x));
  }
  return m;
}

bool ConvexDomain::contains(const Eigen::Ref<const Eigen::VectorXd>& x, double tol) const {
  for (const auto& h : halfspaces_) {
    if (h.normal.dot(x) < h.offset - tol) return false;
  }
  for (const auto& b : balls_) {
    if ((x - b.center).norm() > b.radius + tol) return false;
  }
  return true;
}

double ConvexDomain::interior_slack(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return -max_violation(x);
}

bool ConvexDomain::is_bounded() const {
  if (!balls_.empty()) return true;
  if (halfspaces_.size() <= dim_) return false;
  const auto d = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd normals(d, static_cast<Eigen::Index>(halfspaces_.size()));
  for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
    normals.col(static_cast<Eigen::Index>(i)) = halfspaces_[i].normal;
  }
  // Bounded iff the normals positively span R^d, i.e. every +-e_j is a
  // nonnegative combination of them.
  for (Eigen::Index j = 0; j < d; ++j) {
    for (double sign : {1.0, -1.0}) {
      Eigen::VectorXd target = Eigen::VectorXd::Zero(d);
      target[j] = sign;
      if (nnls(normals, target).residual_norm > 1e-9) return false;
    }
  }
  return true;
}

double default_boundary_tol(const Eigen::Ref<const Eigen::VectorXd>& x) {
  return 1e-8 * (1.0 + x.norm());
}

std::vector<Point> active_normal_cone(const Eigen::Ref<const Eigen::VectorXd>& x, const ConvexDomain& domain,
                                      std::optional<double> tol_bd) {
  const double tol = tol_bd.value_or(default_boundary_tol(x));
  if (domain.max_violation(x) > tol) {
    throw PreconditionError("active_normal_cone: point lies outside the domain");
  }
  std::vector<Point> normals;
  const auto& hs = domain.halfspaces();
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (std::abs(domain.violation(i, x)) <= tol) normals.push_back(hs[i].normal);
  }
  const auto& bs = domain.balls();
  for (std::size_t j = 0; j < bs.size(); ++j) {
    if (std::abs(domain.violation(hs.size() + j, x)) <= tol) {
      const Point inward = bs[j].center - x;
      normals.push_back(inward / inward.norm());
    }
  }
  if (normals.empty()) {
    throw PreconditionError("active_normal_cone: point is not on the boundary within tolerance");
  }
  return normals;
}

double angle_to_cone(const Eigen::Ref<const Eigen::VectorXd>& u, const std::vector<Point>& generators) {
  const double un = u.norm();
  if (generators.empty() || un == 0.0) return std::numbers::pi / 2;
  Eigen::MatrixXd G(u.size(), static_cast<Eigen::Index>(generators.size()));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    G.col(static_cast<Eigen::Index>(i)) = generators[i];
  }
  const Eigen::VectorXd unit = u / un;
  const NnlsResult fit = nnls(G, unit);
  const double along = (G * fit.coefficients).norm();
  if (along == 0.0) return std::numbers::pi / 2;
  return std::atan2(fit.residual_norm, along);
}

}  // namespace skorokhod
