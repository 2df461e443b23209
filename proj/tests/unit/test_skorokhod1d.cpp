#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"

#include "skorokhod/core/brownian.hpp"
#include "skorokhod/core/errors.hpp"
#include "skorokhod/core/mc_estimate.hpp"
#include "skorokhod/core/parallel.hpp"
#include "skorokhod/harness/ks_test.hpp"
#include "skorokhod/skorokhod1d.hpp"

using namespace skorokhod;
using namespace skorokhod::reflect1d;

namespace {

// Lindley recursion g_{k+1} = max(0, g_k + df_k): the discrete reflection,
// computed without running minima.
std::vector<double> lindley(const SampledPath& f, double x0) {
  std::vector<double> g(f.size());
  g[0] = x0;
  for (std::size_t k = 0; k + 1 < f.size(); ++k) g[k + 1] = std::max(0.0, g[k] + (f.value(k + 1) - f.value(k)));
  return g;
}

// Smallest nondecreasing h >= 0 keeping x0 + f + h >= 0, by brute force.
std::vector<double> minimal_regulator(const SampledPath& f, double x0) {
  std::vector<double> h(f.size(), 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) {
    for (std::size_t j = 0; j <= k; ++j) h[k] = std::max(h[k], -(x0 + f.value(j)));
  }
  return h;
}

}  // namespace

TEST_SUITE("skorokhod1d") {

TEST_CASE("zero input never touches the boundary") {
  const TimeGrid g = TimeGrid::uniform(1.0, 10);
  const auto s = skorokhod_map_1d(SampledPath::scalar(g, std::vector<double>(11, 0.0)), 1.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(s.g.value(k) == 1.0);
    CHECK(s.h.value(k) == 0.0);
  }
}

TEST_CASE("hand-evaluated running minimum") {
  const TimeGrid g({0.0, 1.0, 2.0, 3.0});
  const auto s = skorokhod_map_1d(SampledPath::scalar(g, {0.0, -0.5, 0.3, -1.2}), 0.2);
  const std::vector<double> h = {0.0, 0.3, 0.3, 1.0};
  const std::vector<double> gg = {0.2, 0.0, 0.8, 0.0};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(s.h.value(k) == doctest::Approx(h[k]).epsilon(1e-15));
    CHECK(s.g.value(k) == doctest::Approx(gg[k]).epsilon(1e-15));
  }
  // New minima give exact zeros.
  CHECK(s.g.value(1) == 0.0);
  CHECK(s.g.value(3) == 0.0);
}

TEST_CASE("f = -t from 0 stays pinned at 0") {
  const TimeGrid g = TimeGrid::uniform(2.0, 64);
  std::vector<double> f(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) f[k] = -g[k];
  const auto s = skorokhod_map_1d(SampledPath::scalar(g, f), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(s.g.value(k) == 0.0);
    CHECK(s.h.value(k) == g[k]);
  }
  CHECK(!std::signbit(s.h.value(0)));
}

TEST_CASE("preconditions") {
  const TimeGrid g = TimeGrid::uniform(1.0, 2);
  CHECK_THROWS_AS(skorokhod_map_1d(SampledPath::scalar(g, {0.0, 1.0, 2.0}), -0.1), PreconditionError);
  CHECK_THROWS_AS(skorokhod_map_1d(SampledPath::scalar(g, {0.5, 1.0, 2.0}), 0.0), PreconditionError);
  CHECK_THROWS_AS(skorokhod_map_1d(SampledPath(g, 2, std::vector<double>(6, 0.0), PathKind::Continuous), 0.0),
                  PreconditionError);
}

TEST_CASE("regulator between grid points") {
  const TimeGrid g({0.0, 1.0, 2.0});
  const SampledPath f = SampledPath::scalar(g, {0.0, -1.0, 0.5});
  const auto s = skorokhod_map_1d(f, 0.5);
  CHECK(s.h_at(0.5, f) == doctest::Approx(0.0));
  CHECK(s.h_at(0.75, f) == doctest::Approx(0.25));
  CHECK(s.h_at(1.5, f) == doctest::Approx(0.5));
  const SampledPath fs = f.with_kind(PathKind::Step);
  const auto st = skorokhod_map_1d(fs, 0.5);
  CHECK(st.h_at(0.99, fs) == 0.0);
  CHECK(st.h_at(1.0, fs) == 0.5);
}

TEST_CASE("properties on Brownian drivers: identity, monotone h, exact complementarity") {
  const TimeGrid g = TimeGrid::uniform(1.0, 2000);
  for (std::size_t i = 0; i < 50; ++i) {
    const SampledPath f = brownian_sample(g, child_seed({3, 1}, i));
    const double x0 = 0.1 * static_cast<double>(i % 5);
    const auto s = skorokhod_map_1d(f, x0);
    CHECK(s.h.value(0) == 0.0);
    double mass = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      REQUIRE(s.g.value(k) >= 0.0);
      const double scale = 1.0 + std::abs(x0 + f.value(k));
      REQUIRE(std::abs(s.g.value(k) - (x0 + f.value(k) + s.h.value(k))) <= 1e-12 * scale);
      if (k + 1 < g.size()) {
        REQUIRE(s.h.value(k + 1) >= s.h.value(k));
        if (s.g.value(k + 1) > 0.0) mass += s.h.value(k + 1) - s.h.value(k);
      }
    }
    CHECK(mass == 0.0);
  }
}

TEST_CASE("uniqueness against independent oracles") {
  const TimeGrid g = TimeGrid::uniform(1.0, 500);
  for (std::size_t i = 0; i < 20; ++i) {
    const SampledPath f = brownian_sample(g, child_seed({4, 1}, i));
    const double x0 = 0.05 * static_cast<double>(i);
    const auto s = skorokhod_map_1d(f, x0);
    const auto gl = lindley(f, x0);
    const auto hb = minimal_regulator(f, x0);
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(std::abs(s.g.value(k) - gl[k]) <= 1e-12);
      CHECK(s.h.value(k) == hb[k] + 0.0);
    }
  }
}

TEST_CASE("monotone coupling: larger input, smaller regulator") {
  const TimeGrid g = TimeGrid::uniform(1.0, 1000);
  for (std::size_t i = 0; i < 20; ++i) {
    const SampledPath f = brownian_sample(g, child_seed({5, 1}, i));
    std::vector<double> up(f.values().begin(), f.values().end());
    RandomStream rng(child_seed({5, 2}, i));
    for (std::size_t k = 1; k < up.size(); ++k) up[k] += std::abs(rng.normal()) * 0.1;
    const auto lo = skorokhod_map_1d(f, 0.1);
    const auto hi = skorokhod_map_1d(SampledPath::scalar(g, up), 0.3);
    for (std::size_t k = 0; k < g.size(); ++k) REQUIRE(hi.h.value(k) <= lo.h.value(k));
  }
}

TEST_CASE("time-homogeneity: restarting from a grid point") {
  const TimeGrid g = TimeGrid::uniform(1.0, 1000);
  const SampledPath f = brownian_sample(g, {6, 1});
  const auto full = skorokhod_map_1d(f, 0.2);
  const std::size_t m = 400;
  std::vector<double> times, tail;
  for (std::size_t k = m; k < g.size(); ++k) {
    times.push_back(g[k] - g[m]);
    tail.push_back(f.value(k) - f.value(m));
  }
  times[0] = 0.0;
  const auto restarted = skorokhod_map_1d(SampledPath::scalar(TimeGrid(times), tail), full.g.value(m));
  for (std::size_t k = m; k < g.size(); ++k) {
    CHECK(std::abs(restarted.g.value(k - m) - full.g.value(k)) <= 1e-12);
  }
}

TEST_CASE("lowering the start by c raises the regulator by at most c") {
  const TimeGrid g = TimeGrid::uniform(1.0, 1000);
  const SampledPath f = brownian_sample(g, {6, 2});
  const double c = 0.25;
  const auto base = skorokhod_map_1d(f, 1.0);
  const auto lowered = skorokhod_map_1d(f, 1.0 - c);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(lowered.h.value(k) >= base.h.value(k));
    CHECK(lowered.h.value(k) - base.h.value(k) <= c + 1e-15);
    CHECK(base.g.value(k) - lowered.g.value(k) >= -1e-15);
  }
}

TEST_CASE("reflecting Brownian motion constructions") {
  const TimeGrid g = TimeGrid::uniform(1.0, 10);
  const auto still = rbm_from_skorokhod(SampledPath::scalar(g, std::vector<double>(11, 0.0)), 2.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(still.g.value(k) == 2.0);
    CHECK(still.h.value(k) == 0.0);
  }

  const auto folded = rbm_abs(SampledPath::scalar(TimeGrid({0.0, 1.0, 2.0}), {0.0, -1.0, 2.0}));
  CHECK(folded.value(1) == 1.0);
  CHECK(folded.value(2) == 2.0);
  const SampledPath pos = SampledPath::scalar(TimeGrid({0.0, 1.0}), {0.5, 1.5});
  const SampledPath same = rbm_abs(pos);
  CHECK(std::equal(same.values().begin(), same.values().end(), pos.values().begin()));

  // Random start drawn from a law on [0, inf).
  const CustomLaw law{[](RandomStream& s) { return Point::Constant(1, s.uniform()); }};
  const auto r = rbm_from_skorokhod(brownian_sample(TimeGrid::uniform(1.0, 100), {1, 1}), law, {1, 2});
  CHECK(r.x0 > 0.0);
  CHECK(r.x0 < 1.0);
  const CustomLaw negative{[](RandomStream&) { return Point::Constant(1, -1.0); }};
  CHECK_THROWS_AS(rbm_from_skorokhod(brownian_sample(TimeGrid::uniform(1.0, 100), {1, 1}), negative, {1, 2}),
                  PreconditionError);
}

TEST_CASE("RBM terminal law: means of X(1) and phi(1), KS against |B|") {
  const TimeGrid g = TimeGrid::uniform(1.0, 100'000);
  const std::size_t n = 10'000;
  std::vector<double> x(n), phi(n), folded(n);
  parallel_for(n, default_thread_count(), [&](std::size_t i) {
    const auto s = rbm_from_skorokhod(brownian_sample(g, child_seed({8, 1}, i)), 0.0);
    x[i] = s.g.back();
    phi[i] = s.h.back();
    folded[i] = std::abs(brownian_sample(TimeGrid::uniform(1.0, 16), child_seed({8, 2}, i)).back());
  });
  const double target = std::sqrt(2.0 / std::numbers::pi);
  CHECK(McEstimate::from_samples(x).within(target, 3.0));
  CHECK(McEstimate::from_samples(phi).within(target, 3.0));
  std::sort(x.begin(), x.end());
  std::sort(folded.begin(), folded.end());
  CHECK(harness::ks_two_sample(x, folded, 0.01).pass);
}

TEST_CASE("reflected density") {
  CHECK(reflected_density(1.0, 0.0, 0.0) == doctest::Approx(0.7978845608).epsilon(1e-10));
  CHECK_THROWS_AS(reflected_density(0.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(reflected_density(1.0, -1.0, 0.0), PreconditionError);
  for (double y : {0.0, 0.3, 1.0, 2.5}) {
    CHECK(reflected_density(1.0, 0.0, y) ==
          doctest::Approx(2.0 * std::exp(-y * y / 2.0) / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-14));
  }
  // Normalization by composite Simpson quadrature on [0, x + 40 sqrt(t)].
  for (double t : {0.1, 1.0, 3.0}) {
    for (double x0 : {0.0, 0.5, 2.0}) {
      const double upper = x0 + 40.0 * std::sqrt(t);
      const int m = 200'000;
      const double h = upper / m;
      double sum = reflected_density(t, x0, 0.0) + reflected_density(t, x0, upper);
      for (int i = 1; i < m; ++i) sum += (i % 2 ? 4.0 : 2.0) * reflected_density(t, x0, i * h);
      CHECK(std::abs(sum * h / 3.0 - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("half-normal CDF") {
  CHECK(half_normal_cdf(0.0) == 0.0);
  CHECK(half_normal_cdf(1.0) == doctest::Approx(0.6826894921370859));
  CHECK(half_normal_cdf(2.0, 4.0) == doctest::Approx(0.6826894921370859));
  CHECK(half_normal_cdf(-1.0) == 0.0);
}

}  // TEST_SUITE
