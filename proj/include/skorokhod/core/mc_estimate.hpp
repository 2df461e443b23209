#pragma once

#include <cstddef>
#include <span>

namespace skorokhod {

/// Monte Carlo sample mean with its standard error (sample std / sqrt(n)).
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;

  /// Throws PreconditionError for n < 2 or non-finite samples.
  static McEstimate from_samples(std::span<const double> samples);

  /// |mean - target| <= k * std_error.
  bool within(double target, double k) const;
};

/// Estimate of E[a - b] from paired samples; its std_error is the joint
/// standard error used to compare two correlated estimates.
McEstimate paired_difference(std::span<const double> a, std::span<const double> b);

}  // namespace skorokhod
