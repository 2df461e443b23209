#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace skorokhod {

/// Strictly increasing time points starting at 0. Immutable after construction;
/// copies share the point storage.
class TimeGrid {
 public:
  /// Throws PreconditionError unless times[0] == 0, size >= 2, all finite
  /// and strictly increasing.
  explicit TimeGrid(std::vector<double> times);

  /// times[k] = k * horizon / steps.
  static TimeGrid uniform(double horizon, std::size_t steps);

  std::size_t size() const noexcept { return times_->size(); }
  std::size_t steps() const noexcept { return times_->size() - 1; }
  double operator[](std::size_t k) const { return (*times_)[k]; }
  double horizon() const noexcept { return times_->back(); }
  double dt(std::size_t k) const { return (*times_)[k + 1] - (*times_)[k]; }
  std::span<const double> times() const noexcept { return *times_; }

  /// Splits every interval into `factor` equal parts. Original points are kept
  /// bit-exactly at indices k * factor.
  TimeGrid refined(std::size_t factor) const;

  /// Every `stride`-th point; steps() must be divisible by stride.
  TimeGrid subsampled(std::size_t stride) const;

  /// First n points (n >= 2).
  TimeGrid prefix(std::size_t n) const;

  /// Index of the grid point equal to t up to 1e-12 relative, or throws
  /// PreconditionError.
  std::size_t index_of(double t) const;

  bool operator==(const TimeGrid& other) const {
    return times_ == other.times_ || *times_ == *other.times_;
  }

 private:
  std::shared_ptr<const std::vector<double>> times_;
};

}  // namespace skorokhod
