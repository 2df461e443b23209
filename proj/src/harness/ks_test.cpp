#include "skorokhod/harness/ks_test.hpp"

#include <algorithm>
#include <cmath>

#include "skorokhod/core/errors.hpp"

namespace skorokhod::harness {
namespace {

void require_sorted(std::span<const double> xs, const char* what) {
  if (!std::is_sorted(xs.begin(), xs.end())) {
    throw PreconditionError(std::string(what) + ": samples must be sorted");
  }
  if (xs.size() < 50) {
    throw PreconditionError(std::string(what) + ": need at least 50 samples");
  }
}

}  // namespace

double ks_coefficient(double alpha) {
  if (alpha == 0.05) return 1.358;
  if (alpha == 0.01) return 1.628;
  throw PreconditionError("ks_coefficient: only alpha = 0.05 and 0.01 are tabulated");
}

KsResult ks_test_against_cdf(std::span<const double> sorted_samples, const std::function<double(double)>& cdf,
                             double alpha) {
  require_sorted(sorted_samples, "ks_test_against_cdf");
  const double c = ks_coefficient(alpha);
  const std::size_t n = sorted_samples.size();
  const auto nd = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sorted_samples[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / nd - f), std::abs(static_cast<double>(i) / nd - f)});
  }
  const double threshold = c / std::sqrt(nd);
  return {d, n, alpha, threshold, d < threshold};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha) {
  require_sorted(a, "ks_two_sample");
  require_sorted(b, "ks_two_sample");
  const double c = ks_coefficient(alpha);
  const auto n = static_cast<double>(a.size());
  const auto m = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double threshold = c * std::sqrt((n + m) / (n * m));
  return {d, a.size() + b.size(), alpha, threshold, d < threshold};
}

}  // namespace skorokhod::harness
