#include "skorokhod/core/sampled_path.hpp"

#include <algorithm>
#include <cmath>

#include "skorokhod/core/errors.hpp"

namespace skorokhod {

SampledPath::SampledPath(TimeGrid grid, std::size_t dim, std::vector<double> values, PathKind kind)
    : grid_(std::move(grid)), dim_(dim), values_(std::move(values)), kind_(kind) {
  if (dim_ == 0) {
    throw PreconditionError("SampledPath: dimension must be >= 1");
  }
  if (values_.size() != grid_.size() * dim_) {
    throw PreconditionError("SampledPath: value count does not match grid length times dimension");
  }
}

SampledPath SampledPath::scalar(TimeGrid grid, std::vector<double> values, PathKind kind) {
  return SampledPath(std::move(grid), 1, std::move(values), kind);
}

SampledPath SampledPath::constant(TimeGrid grid, const Point& x, PathKind kind) {
  const auto d = static_cast<std::size_t>(x.size());
  std::vector<double> v(grid.size() * d);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::copy(x.data(), x.data() + d, v.begin() + static_cast<std::ptrdiff_t>(k * d));
  }
  return SampledPath(std::move(grid), d, std::move(v), kind);
}

std::vector<double> SampledPath::component(std::size_t j) const {
  std::vector<double> out(size());
  for (std::size_t k = 0; k < size(); ++k) {
    out[k] = values_[k * dim_ + j];
  }
  return out;
}

Point SampledPath::at(double t) const {
  const auto times = grid_.times();
  if (t < 0.0 || t > grid_.horizon()) {
    throw PreconditionError("SampledPath::at: time outside [0, T]");
  }
  auto it = std::upper_bound(times.begin(), times.end(), t);
  const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - times.begin()) - 1));
  if (k + 1 >= size() || kind_ == PathKind::Step || times[k] == t) {
    return point(k);
  }
  const double lambda = (t - times[k]) / (times[k + 1] - times[k]);
  return (1.0 - lambda) * point(k) + lambda * point(k + 1);
}

SampledPath SampledPath::refined(std::size_t factor) const {
  TimeGrid fine = grid_.refined(factor);
  if (factor == 1) {
    return *this;
  }
  std::vector<double> v;
  v.reserve(fine.size() * dim_);
  const auto m = static_cast<double>(factor);
  for (std::size_t k = 0; k + 1 < size(); ++k) {
    for (std::size_t j = 0; j < factor; ++j) {
      const double lambda = static_cast<double>(j) / m;
      for (std::size_t c = 0; c < dim_; ++c) {
        const double a = value(k, c);
        const double b = value(k + 1, c);
        v.push_back(kind_ == PathKind::Step || j == 0 ? a : a + lambda * (b - a));
      }
    }
  }
  for (std::size_t c = 0; c < dim_; ++c) {
    v.push_back(value(size() - 1, c));
  }
  return SampledPath(std::move(fine), dim_, std::move(v), kind_);
}

SampledPath SampledPath::subsampled(std::size_t stride) const {
  TimeGrid coarse = grid_.subsampled(stride);
  std::vector<double> v;
  v.reserve(coarse.size() * dim_);
  for (std::size_t k = 0; k < size(); k += stride) {
    for (std::size_t c = 0; c < dim_; ++c) {
      v.push_back(value(k, c));
    }
  }
  return SampledPath(std::move(coarse), dim_, std::move(v), kind_);
}

SampledPath SampledPath::with_kind(PathKind kind) const {
  SampledPath out = *this;
  out.kind_ = kind;
  return out;
}

double SampledPath::sup_norm() const {
  double m = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    m = std::max(m, point(k).norm());
  }
  return m;
}

double sup_distance(const SampledPath& a, const SampledPath& b) {
  if (a.grid() != b.grid() || a.dim() != b.dim()) {
    throw PreconditionError("sup_distance: paths must share grid and dimension");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    m = std::max(m, (a.point(k) - b.point(k)).norm());
  }
  return m;
}

}  // namespace skorokhod
