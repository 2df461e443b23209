#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "skorokhod/core/brownian.hpp"
#include "skorokhod/core/errors.hpp"
#include "skorokhod/skorokhod1d.hpp"
#include "skorokhod/skorokhodnd.hpp"

using namespace skorokhod;
using namespace skorokhod::reflectnd;

namespace {

Point vec(double x, double y) { return (Point(2) << x, y).finished(); }

SampledPath path2(const TimeGrid& g, const std::vector<Point>& pts, PathKind kind) {
  std::vector<double> v;
  for (const Point& p : pts) v.insert(v.end(), p.data(), p.data() + p.size());
  return SampledPath(g, 2, std::move(v), kind);
}

ConvexDomain upper_halfplane() { return ConvexDomain::halfspace(vec(0, 1), 0.0, vec(0, 1)); }

SampledPath spiral(std::size_t steps) {
  const TimeGrid g = TimeGrid::uniform(1.0, steps);
  std::vector<Point> pts;
  for (std::size_t k = 0; k < g.size(); ++k) pts.push_back((1.0 + g[k]) * vec(std::cos(g[k]), std::sin(g[k])));
  return path2(g, pts, PathKind::Continuous);
}

}  // namespace

TEST_SUITE("skorokhodnd") {

TEST_CASE("interior drivers need no pushing") {
  const TimeGrid g = TimeGrid::uniform(1.0, 200);
  std::vector<Point> pts;
  for (std::size_t k = 0; k < g.size(); ++k) pts.push_back(0.3 * vec(std::cos(5 * g[k]), std::sin(3 * g[k])));
  const SampledPath w = path2(g, pts, PathKind::Step);
  const auto s = solve_skorokhod_step(w, ConvexDomain::unit_disc());
  CHECK(sup_distance(s.X, w) == 0.0);
  CHECK(s.phi.sup_norm() == 0.0);
  for (const auto& d : s.directions) CHECK(!d.has_value());

  const auto c = solve_skorokhod_continuous(w.with_kind(PathKind::Continuous), ConvexDomain::unit_disc());
  CHECK(c.levels == 0);
  CHECK(c.gaps.empty());
  CHECK(sup_distance(c.X_on_input_grid(), w.with_kind(PathKind::Continuous)) == 0.0);
}

TEST_CASE("halfplane jump") {
  const SampledPath w = path2(TimeGrid({0.0, 1.0}), {vec(0, 1), vec(1, -1)}, PathKind::Step);
  const auto s = solve_skorokhod_step(w, upper_halfplane());
  CHECK(s.X.value(1, 0) == 1.0);
  CHECK(s.X.value(1, 1) == 0.0);
  CHECK(s.phi.value(1, 0) == 0.0);
  CHECK(s.phi.value(1, 1) == 1.0);
  CHECK(s.total_variation[1] == 1.0);
  REQUIRE(s.directions[0].has_value());
  CHECK((*s.directions[0] - vec(0, 1)).norm() == 0.0);
}

TEST_CASE("orthant recursion by hand") {
  const SampledPath w = path2(TimeGrid({0.0, 1.0, 2.0}), {vec(1, 1), vec(-1, 2), vec(-1, -1)}, PathKind::Step);
  const auto s = solve_skorokhod_step(w, ConvexDomain::orthant(2));
  CHECK((s.X.point(1) - vec(0, 2)).norm() == 0.0);
  CHECK((s.X.point(2) - vec(0, 0)).norm() == 0.0);
  CHECK((s.phi.point(2) - vec(1, 1)).norm() == 0.0);
  CHECK(s.total_variation[2] == 2.0);
  const SampledPath back = s.driver();
  CHECK(sup_distance(back, w) == 0.0);
}

TEST_CASE("preconditions") {
  const TimeGrid g({0.0, 1.0});
  const SampledPath outside = path2(g, {vec(0, -1), vec(0, 1)}, PathKind::Step);
  CHECK_THROWS_AS(solve_skorokhod_step(outside, upper_halfplane()), PreconditionError);
  const SampledPath cont = path2(g, {vec(0, 1), vec(0, 1)}, PathKind::Continuous);
  CHECK_THROWS_AS(solve_skorokhod_step(cont, upper_halfplane()), PreconditionError);
  CHECK_THROWS_AS(solve_skorokhod_continuous(cont.with_kind(PathKind::Step), upper_halfplane()), PreconditionError);
  CHECK_THROWS_AS(solve_skorokhod_step(cont.with_kind(PathKind::Step), ConvexDomain::orthant(3)), PreconditionError);
  RefinementOptions bad;
  bad.factor = 1;
  CHECK_THROWS_AS(solve_skorokhod_continuous(cont, upper_halfplane(), bad), PreconditionError);
}

TEST_CASE("disc spiral") {
  const SampledPath w = spiral(100);
  RefinementOptions opt;
  opt.refine_tol = 1e-4;
  const auto c = solve_skorokhod_continuous(w, ConvexDomain::unit_disc(), opt);
  REQUIRE(c.levels >= 2);
  for (std::size_t l = 1; l < c.gaps.size(); ++l) CHECK(c.gaps[l] < c.gaps[l - 1]);
  CHECK(c.gaps.back() <= 1e-4);
  const SampledPath x = c.X_on_input_grid();
  for (std::size_t k = 1; k < x.size(); ++k) CHECK(std::abs(x.point(k).norm() - 1.0) <= 1e-9);

  // Oracle: step solution on a grid 4096 times finer.
  const auto fine = solve_skorokhod_step(w.refined(4096).with_kind(PathKind::Step), ConvexDomain::unit_disc());
  double err = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) err = std::max(err, (fine.X.point(k * 4096) - x.point(k)).norm());
  CHECK(err <= 3e-4);

  // Grid-step jumps shrink as the working grid refines.
  RefinementOptions one;
  one.max_levels = 0;
  const auto coarse = solve_skorokhod_continuous(w, ConvexDomain::unit_disc(), one);
  auto max_jump = [](const SampledPath& p) {
    double m = 0.0;
    for (std::size_t k = 1; k < p.size(); ++k) m = std::max(m, (p.point(k) - p.point(k - 1)).norm());
    return m;
  };
  CHECK(max_jump(c.solution.X) < max_jump(coarse.solution.X));
}

TEST_CASE("refinement limit and max_levels = 0") {
  const SampledPath w = spiral(20);
  RefinementOptions opt;
  opt.refine_tol = 1e-12;
  opt.max_levels = 2;
  try {
    solve_skorokhod_continuous(w, ConvexDomain::unit_disc(), opt);
    FAIL("expected RefinementLimitError");
  } catch (const RefinementLimitError& e) {
    CHECK(e.gaps().size() == 2);
    CHECK(e.gaps()[0] > 1e-12);
  }
  opt.max_levels = 0;
  const auto c = solve_skorokhod_continuous(w, ConvexDomain::unit_disc(), opt);
  CHECK(c.levels == 0);
  CHECK(c.stride == 1);
}

TEST_CASE("half-line agrees with the explicit 1D map") {
  const TimeGrid g = TimeGrid::uniform(1.0, 500);
  for (std::size_t i = 0; i < 10; ++i) {
    const SampledPath f = brownian_sample(g, child_seed({21, 1}, i));
    const double x0 = 0.1 * static_cast<double>(i);
    std::vector<double> shifted(f.values().begin(), f.values().end());
    for (double& v : shifted) v += x0;
    RefinementOptions opt;
    opt.refine_tol = 1e-6;
    const auto c = solve_skorokhod_continuous(SampledPath::scalar(g, shifted), ConvexDomain::half_line(), opt);
    const auto ref = reflect1d::skorokhod_map_1d(f, x0);
    CHECK(sup_distance(c.X_on_input_grid(), ref.g) <= 1e-6);
  }
}

TEST_CASE("dyadic and triadic schedules agree") {
  const TimeGrid g = TimeGrid::uniform(1.0, 200);
  for (std::size_t i = 0; i < 10; ++i) {
    const SampledPath w = brownian_sample(g, 2, PointMass{vec(0.0, 0.0)}, child_seed({22, 1}, i));
    RefinementOptions dy, tri;
    dy.refine_tol = tri.refine_tol = 1e-3;
    dy.max_levels = 12;
    tri.factor = 3;
    tri.max_levels = 8;
    const auto a = solve_skorokhod_continuous(w, ConvexDomain::unit_disc(), dy);
    const auto b = solve_skorokhod_continuous(w, ConvexDomain::unit_disc(), tri);
    CHECK(sup_distance(a.X_on_input_grid(), b.X_on_input_grid()) <= 2e-3);
  }
}

TEST_CASE("association on Brownian drivers") {
  const TimeGrid g = TimeGrid::uniform(1.0, 2000);
  for (std::size_t i = 0; i < 20; ++i) {
    const SampledPath w = brownian_sample(g, 2, PointMass{vec(0.1, 0.2)}, child_seed({23, 1}, i)).with_kind(PathKind::Step);
    for (const ConvexDomain& dom : {upper_halfplane(), ConvexDomain::orthant(2), ConvexDomain::unit_disc()}) {
      const auto s = solve_skorokhod_step(w, dom);
      const auto r = check_association(s, w, dom);
      CHECK(r.max_identity_error <= 1e-9 * (1.0 + w.sup_norm()));
      CHECK(r.max_violation <= 1e-9);
      CHECK(r.interior_mass == 0.0);
      CHECK(r.max_normal_angle <= 1e-6);
      CHECK(r.max_variation_mismatch <= 1e-12);
      CHECK(r.variation_monotone);
    }
  }
}

TEST_CASE("Tanaka inequality") {
  const TimeGrid g = TimeGrid::uniform(1.0, 500);
  const SampledPath w = brownian_sample(g, 2, PointMass{vec(0.0, 0.5)}, {24, 1}).with_kind(PathKind::Step);
  const auto s = solve_skorokhod_step(w, upper_halfplane());
  CHECK(tanaka_inequality_gap(s, s) == 0.0);

  std::vector<Point> a, b;
  for (std::size_t k = 0; k < g.size(); ++k) {
    a.push_back(vec(0.1 * std::sin(7 * g[k]), 5.0 + 0.2 * std::cos(3 * g[k])));
    b.push_back(a.back() + vec(0.3, -0.4));
  }
  const auto sa = solve_skorokhod_step(path2(g, a, PathKind::Step), upper_halfplane());
  const auto sb = solve_skorokhod_step(path2(g, b, PathKind::Step), upper_halfplane());
  CHECK(std::abs(tanaka_inequality_gap(sa, sb)) <= 1e-12);

  for (std::size_t i = 0; i < 100; ++i) {
    const SampledPath w1 = brownian_sample(g, 2, PointMass{vec(0.0, 0.2)}, child_seed({24, 2}, i)).with_kind(PathKind::Step);
    const SampledPath w2 = brownian_sample(g, 2, PointMass{vec(0.5, 0.0)}, child_seed({24, 3}, i)).with_kind(PathKind::Step);
    const auto s1 = solve_skorokhod_step(w1, upper_halfplane());
    const auto s2 = solve_skorokhod_step(w2, upper_halfplane());
    const double scale = 1.0 + std::pow(w1.sup_norm() + w2.sup_norm(), 2);
    CHECK(tanaka_inequality_gap(s1, s2) >= -1e-9 * scale);
  }

  const auto other_grid = solve_skorokhod_step(
      brownian_sample(TimeGrid::uniform(1.0, 10), 2, PointMass{vec(0.0, 0.5)}, {24, 4}).with_kind(PathKind::Step),
      upper_halfplane());
  CHECK_THROWS_AS(tanaka_inequality_gap(s, other_grid), PreconditionError);
}

TEST_CASE("modulus inequality") {
  const TimeGrid g = TimeGrid::uniform(1.0, 400);
  const SampledPath w = brownian_sample(g, 2, PointMass{vec(0.0, 0.0)}, {25, 1}).with_kind(PathKind::Step);
  const auto s = solve_skorokhod_step(w, ConvexDomain::unit_disc());
  CHECK(modulus_gap(s, 0.5, 0.5) == 0.0);
  CHECK_THROWS_AS(modulus_gap(s, 0.6, 0.5), PreconditionError);
  CHECK_THROWS_AS(modulus_gap(s, 0.1, 0.50001), PreconditionError);
  for (std::size_t i = 0; i < g.size(); i += 7) {
    for (std::size_t j = i; j < g.size(); j += 11) {
      CHECK(modulus_gap(s, g[i], g[j]) >= -1e-9 * (1.0 + 4.0 * w.sup_norm() * w.sup_norm()));
    }
  }
  // Where phi does not move, the gap is exactly the rigid-motion identity.
  std::vector<Point> inside;
  for (std::size_t k = 0; k < g.size(); ++k) inside.push_back(0.5 * vec(std::cos(g[k]), std::sin(g[k])));
  const auto si = solve_skorokhod_step(path2(g, inside, PathKind::Step), ConvexDomain::unit_disc());
  CHECK(std::abs(modulus_gap(si, 0.1, 0.9)) <= 1e-15);
}

TEST_CASE("condition A") {
  const auto half = check_condition_a(upper_halfplane());
  CHECK(half.status == ConditionStatus::Holds);
  CHECK(half.c == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((half.e - vec(0, 1)).norm() <= 1e-9);

  const auto orth = check_condition_a(ConvexDomain::orthant(2));
  CHECK(orth.status == ConditionStatus::Holds);
  CHECK(std::abs(orth.c - 1.0 / std::numbers::sqrt2) <= 1e-6);
  CHECK(std::abs(orth.e(0) - 1.0 / std::numbers::sqrt2) <= 1e-6);

  const auto orth5 = check_condition_a(ConvexDomain::orthant(5));
  CHECK(orth5.status == ConditionStatus::Holds);
  CHECK(std::abs(orth5.c - 1.0 / std::sqrt(5.0)) <= 1e-6);

  CHECK(check_condition_a(ConvexDomain::strip(0.0, 1.0)).status == ConditionStatus::Fails);
  CHECK(check_condition_a(ConvexDomain::unit_disc()).status == ConditionStatus::Unknown);
  CHECK_THROWS_AS(check_condition_a(ConvexDomain::orthant(9)), UnsupportedError);
  CHECK(to_string(ConditionStatus::Holds) == "holds");
  CHECK(to_string(ConditionStatus::Fails) == "fails");
  CHECK(to_string(ConditionStatus::Unknown) == "unknown");
}

TEST_CASE("condition B") {
  CHECK(check_condition_b(ConvexDomain::unit_disc()).status == ConditionStatus::Holds);
  CHECK(check_condition_b(upper_halfplane()).status == ConditionStatus::Holds);
  CHECK(check_condition_b(ConvexDomain::orthant(3)).status == ConditionStatus::Unknown);
  const auto both = check_conditions(ConvexDomain::orthant(2));
  CHECK(both.condition_a.status == ConditionStatus::Holds);
  CHECK(both.condition_b.status == ConditionStatus::Holds);
}

}  // TEST_SUITE
