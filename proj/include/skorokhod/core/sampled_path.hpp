#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "skorokhod/core/time_grid.hpp"

namespace skorokhod {

using Point = Eigen::VectorXd;
using PointView = Eigen::Map<const Eigen::VectorXd>;

/// Continuous: piecewise-linear between grid points.
/// Step: cadlag, the value on [t_k, t_{k+1}) is values[k].
enum class PathKind { Continuous, Step };

/// Values of a d-dimensional path on a time grid, stored row-major
/// (point k occupies values[k*d .. k*d+d-1]).
class SampledPath {
 public:
  SampledPath(TimeGrid grid, std::size_t dim, std::vector<double> values, PathKind kind);

  /// One-dimensional convenience constructor.
  static SampledPath scalar(TimeGrid grid, std::vector<double> values,
                            PathKind kind = PathKind::Continuous);

  /// Constant path equal to `x` on every grid point.
  static SampledPath constant(TimeGrid grid, const Point& x, PathKind kind = PathKind::Continuous);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return grid_.size(); }
  PathKind kind() const noexcept { return kind_; }
  double time(std::size_t k) const { return grid_[k]; }

  PointView point(std::size_t k) const { return PointView(values_.data() + k * dim_, static_cast<Eigen::Index>(dim_)); }
  double value(std::size_t k, std::size_t j = 0) const { return values_[k * dim_ + j]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }
  std::span<const double> values() const noexcept { return values_; }

  /// Component j as a scalar series.
  std::vector<double> component(std::size_t j) const;

  /// Value at an arbitrary time in [0, T] following the interpolation kind.
  Point at(double t) const;

  /// Path on grid().refined(factor): linear interpolation for Continuous,
  /// held values for Step.
  SampledPath refined(std::size_t factor) const;

  /// Every `stride`-th point.
  SampledPath subsampled(std::size_t stride) const;

  SampledPath with_kind(PathKind kind) const;

  /// max_k |value_k| (Euclidean norm per point).
  double sup_norm() const;

 private:
  TimeGrid grid_;
  std::size_t dim_;
  std::vector<double> values_;
  PathKind kind_;
};

/// max_k |a_k - b_k| over a common grid.
double sup_distance(const SampledPath& a, const SampledPath& b);

}  // namespace skorokhod
