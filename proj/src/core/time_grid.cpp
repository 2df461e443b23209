#include "skorokhod/core/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skorokhod/core/errors.hpp"

namespace skorokhod {

TimeGrid::TimeGrid(std::vector<double> times)
    : times_(std::make_shared<const std::vector<double>>(std::move(times))) {
  const auto& t = *times_;
  if (t.size() < 2) {
    throw PreconditionError("TimeGrid: need at least two time points");
  }
  if (t.front() != 0.0) {
    throw PreconditionError("TimeGrid: first time must be 0");
  }
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    if (!std::isfinite(t[k + 1]) || !(t[k + 1] > t[k])) {
      throw PreconditionError("TimeGrid: times must be finite and strictly increasing (index " +
                              std::to_string(k + 1) + ")");
    }
  }
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t steps) {
  if (steps == 0 || !(horizon > 0.0) || !std::isfinite(horizon)) {
    throw PreconditionError("TimeGrid::uniform: need steps >= 1 and a finite horizon > 0");
  }
  std::vector<double> t(steps + 1);
  const auto n = static_cast<double>(steps);
  for (std::size_t k = 0; k <= steps; ++k) {
    t[k] = static_cast<double>(k) * horizon / n;
  }
  t.back() = horizon;
  return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::refined(std::size_t factor) const {
  if (factor == 0) {
    throw PreconditionError("TimeGrid::refined: factor must be >= 1");
  }
  if (factor == 1) {
    return *this;
  }
  std::vector<double> t;
  t.reserve(steps() * factor + 1);
  const auto m = static_cast<double>(factor);
  for (std::size_t k = 0; k < steps(); ++k) {
    const double a = (*times_)[k];
    const double h = (*times_)[k + 1] - a;
    t.push_back(a);
    for (std::size_t j = 1; j < factor; ++j) {
      t.push_back(a + h * (static_cast<double>(j) / m));
    }
  }
  t.push_back(times_->back());
  return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::subsampled(std::size_t stride) const {
  if (stride == 0 || steps() % stride != 0) {
    throw PreconditionError("TimeGrid::subsampled: stride must divide the step count");
  }
  std::vector<double> t;
  t.reserve(steps() / stride + 1);
  for (std::size_t k = 0; k < times_->size(); k += stride) {
    t.push_back((*times_)[k]);
  }
  return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::prefix(std::size_t n) const {
  if (n < 2 || n > times_->size()) {
    throw PreconditionError("TimeGrid::prefix: length out of range");
  }
  return TimeGrid(std::vector<double>(times_->begin(), times_->begin() + static_cast<std::ptrdiff_t>(n)));
}

std::size_t TimeGrid::index_of(double t) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(horizon()));
  auto it = std::lower_bound(times_->begin(), times_->end(), t - tol);
  if (it == times_->end() || std::abs(*it - t) > tol) {
    throw PreconditionError("TimeGrid::index_of: time " + std::to_string(t) + " is not a grid point");
  }
  return static_cast<std::size_t>(it - times_->begin());
}

}  // namespace skorokhod
