#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "skorokhod/core/sampled_path.hpp"

namespace skorokhod {

/// {x : <normal, x> >= offset} with a unit inward normal.
struct Halfspace {
  Point normal;
  double offset = 0.0;
};

/// Closed ball {x : |x - center| <= radius}.
struct Ball {
  Point center;
  double radius = 1.0;
};

/// Finite intersection of halfspaces and balls with nonempty interior.
///
/// The caller supplies a strictly interior witness point; the constructor
/// checks it instead of solving a feasibility problem. Immutable.
class ConvexDomain {
 public:
  ConvexDomain(std::size_t dim, std::vector<Halfspace> halfspaces, std::vector<Ball> balls,
               Point interior_point);

  static ConvexDomain half_line();                       ///< [0, inf) in R^1
  static ConvexDomain halfspace(Point normal, double offset, Point interior_point);
  static ConvexDomain orthant(std::size_t dim);          ///< {x_i >= 0}
  static ConvexDomain ball(Point center, double radius);
  static ConvexDomain unit_disc();                       ///< unit ball in R^2
  static ConvexDomain strip(double lower, double upper); ///< {lower <= y <= upper} in R^2

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Halfspace>& halfspaces() const noexcept { return halfspaces_; }
  const std::vector<Ball>& balls() const noexcept { return balls_; }
  const Point& interior_point() const noexcept { return interior_; }
  std::size_t constraint_count() const noexcept { return halfspaces_.size() + balls_.size(); }

  /// Signed violation of constraint i (halfspaces first, then balls):
  /// positive outside, <= 0 inside.
  double violation(std::size_t i, const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// max_i violation(i, x).
  double max_violation(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// x in closure(D) up to `tol` (tol = 0 is the exact test).
  bool contains(const Eigen::Ref<const Eigen::VectorXd>& x, double tol = 0.0) const;

  /// Distance from a point of closure(D) to the nearest constraint surface,
  /// min_i(-violation(i, x)); 0 on the boundary.
  double interior_slack(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// True when every coordinate is bounded on D (some ball present, or the
  /// halfspace normals positively span R^d).
  bool is_bounded() const;

 private:
  std::size_t dim_;
  std::vector<Halfspace> halfspaces_;
  std::vector<Ball> balls_;
  Point interior_;
};

struct ProjectionOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10'000;
};

/// Nearest point of closure(D). Identity (bit-exact) on closure(D); closed
/// form when a single constraint is violated and its projection is feasible;
/// Dykstra's cyclic projection otherwise. Throws IterationLimitError.
Point project(const Eigen::Ref<const Eigen::VectorXd>& x, const ConvexDomain& domain,
              const ProjectionOptions& options = {});

/// Default boundary tolerance 1e-8 * (1 + |x|).
double default_boundary_tol(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Inward unit normals of every constraint active at x within tol_bd.
/// Throws PreconditionError when x is farther than tol_bd from the boundary.
std::vector<Point> active_normal_cone(const Eigen::Ref<const Eigen::VectorXd>& x,
                                      const ConvexDomain& domain,
                                      std::optional<double> tol_bd = std::nullopt);

/// Angle (radians) between unit direction u and the cone spanned
/// nonnegatively by `generators`; pi/2 or more when u points away.
double angle_to_cone(const Eigen::Ref<const Eigen::VectorXd>& u, const std::vector<Point>& generators);

}  // namespace skorokhod
