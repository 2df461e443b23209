#include "skorokhod/core/mc_estimate.hpp"

#include <cmath>
#include <vector>

#include "skorokhod/core/errors.hpp"

namespace skorokhod {

McEstimate McEstimate::from_samples(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw PreconditionError("McEstimate: need at least 2 samples");
  }
  // Two-pass for accuracy; summation order is the sample order.
  double sum = 0.0;
  for (double x : samples) {
    if (!std::isfinite(x)) throw PreconditionError("McEstimate: non-finite sample");
    sum += x;
  }
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

bool McEstimate::within(double target, double k) const {
  return std::abs(mean - target) <= k * std_error;
}

McEstimate paired_difference(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw PreconditionError("paired_difference: sample counts differ");
  }
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return McEstimate::from_samples(d);
}

}  // namespace skorokhod
