#include "skorokhod/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <map>
#include <numbers>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "skorokhod/core/brownian.hpp"
#include "skorokhod/core/errors.hpp"
#include "skorokhod/core/mc_estimate.hpp"
#include "skorokhod/core/parallel.hpp"
#include "skorokhod/harness/domain_file.hpp"
#include "skorokhod/harness/ks_test.hpp"
#include "skorokhod/harness/output.hpp"
#include "skorokhod/itocalc.hpp"
#include "skorokhod/rsde.hpp"
#include "skorokhod/skorokhod1d.hpp"
#include "skorokhod/skorokhodnd.hpp"

#ifndef SKOROKHOD_KIT_VERSION
#define SKOROKHOD_KIT_VERSION "0.0.0"
#endif

namespace skorokhod::harness {
namespace {

Json to_json(const McEstimate& e) { return Json{{"mean", e.mean}, {"std_error", e.std_error}, {"n", e.n}}; }

Json to_json(const KsResult& r) {
  return Json{{"statistic", r.statistic}, {"n", r.n}, {"alpha", r.alpha}, {"threshold", r.threshold}, {"pass", r.pass}};
}

Json to_json(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end()); }
double sum_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}
double rms_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

/// Per-run state: effective parameters, estimates, checks, optional path output.
class Run {
 public:
  explicit Run(const ExperimentConfig& config)
      : config_(config), threads_(config.threads.value_or(default_thread_count())) {}

  std::size_t n_paths(std::size_t fallback) {
    const std::size_t n = config_.n_paths.value_or(fallback);
    params_["n_paths"] = n;
    return n;
  }
  std::size_t steps(std::size_t fallback) {
    const std::size_t n = config_.steps.value_or(fallback);
    if (n == 0) throw PreconditionError("steps must be >= 1");
    params_["steps"] = n;
    return n;
  }
  double horizon(double fallback) {
    const double t = config_.horizon.value_or(fallback);
    if (!(t > 0.0)) throw PreconditionError("horizon must be > 0");
    params_["horizon"] = t;
    return t;
  }
  double tol(const std::string& name, double fallback) {
    const double v = config_.tolerance(name, fallback);
    tolerances_[name] = v;
    return v;
  }
  std::string coefficients(const std::string& fallback) {
    const std::string c = config_.coefficients.value_or(fallback);
    params_["coefficients"] = c;
    return c;
  }
  ConvexDomain domain(const std::string& fallback) {
    if (config_.domain_file) {
      params_["domain_file"] = *config_.domain_file;
      return load_domain(*config_.domain_file);
    }
    const std::string name = config_.domain.value_or(fallback);
    params_["domain"] = name;
    return domain_preset(name);
  }

  RngSeed seed(std::uint64_t stream) const { return {config_.seed, stream}; }
  std::size_t threads() const { return threads_; }
  bool write_paths() const { return config_.write_paths; }

  Json& estimates() { return estimates_; }

  void check(const std::string& name, double value, Json threshold, const std::string& relation, bool pass) {
    checks_.push_back({name, value, std::move(threshold), relation, pass});
  }
  void check_le(const std::string& name, double value, double limit) { check(name, value, limit, "<=", value <= limit); }
  void check_lt(const std::string& name, double value, double limit) { check(name, value, limit, "<", value < limit); }
  void check_ge(const std::string& name, double value, double limit) { check(name, value, limit, ">=", value >= limit); }
  void check_eq(const std::string& name, double value, double expected) {
    check(name, value, expected, "==", value == expected);
  }
  void check_in(const std::string& name, double value, double lo, double hi) {
    check(name, value, Json::array({lo, hi}), "in", value >= lo && value <= hi);
  }
  /// |mean - target| <= k SE, recorded as value = |mean - target|, threshold = k SE.
  void check_within_se(const std::string& name, const McEstimate& e, double target, double k) {
    const double dev = std::abs(e.mean - target);
    check(name, dev, k * e.std_error, "<=", dev <= k * e.std_error);
  }
  void check_true(const std::string& name, bool ok) { check(name, ok ? 1.0 : 0.0, 1.0, "==", ok); }

  void set_paths_writer(std::function<void(std::ostream&)> w) { paths_writer_ = std::move(w); }

  ExperimentResult finish(const std::string& name) {
    ExperimentResult r;
    r.experiment = name;
    r.checks = checks_;
    Json checks = Json::array();
    bool all = true;
    for (const auto& c : checks_) {
      checks.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"relation", c.relation},
                        {"pass", c.pass}});
      all = all && c.pass;
    }
    Json params = params_;
    params["tolerances"] = tolerances_;
    r.summary = Json{{"experiment", name},
                     {"library_version", library_version()},
                     {"seed", config_.seed},
                     {"config", params},
                     {"estimates", estimates_},
                     {"checks", checks},
                     {"pass", all}};
    return r;
  }

  const std::function<void(std::ostream&)>& paths_writer() const { return paths_writer_; }

 private:
  const ExperimentConfig& config_;
  std::size_t threads_;
  Json params_ = Json::object();
  Json tolerances_ = Json::object();
  Json estimates_ = Json::object();
  std::vector<Check> checks_;
  std::function<void(std::ostream&)> paths_writer_;
};

// Stream tags keep experiments on disjoint random streams for a common seed.
enum StreamTag : std::uint64_t {
  kTag1d = 0x1D00,
  kTagRbm = 0x2B00,
  kTagRbmAbs = 0x2B01,
  kTagIso = 0x3100,
  kTagFormula = 0x3F00,
  kTagLocal = 0x4700,
  kTagNdDisc = 0x5D00,
  kTagNdOrthant = 0x5D01,
  kTagNdPartner = 0x5D02,
  kTagNd1d = 0x5D03,
  kTagNdPairs = 0x5D04,
  kTagRsde = 0x6500,
  kTagRsdeNd = 0x6501,
  kTagContract = 0x6502,
  kTagSemimart = 0x6503,
  kTagStrong = 0x7500,
};

// ---------------------------------------------------------------------------

void skorokhod_1d_props(Run& run) {
  const std::size_t n = run.n_paths(1000);
  const std::size_t steps = run.steps(10'000);
  const double T = run.horizon(1.0);
  const double decomposition_tol = run.tol("decomposition_rel", 1e-12);
  const TimeGrid grid = TimeGrid::uniform(T, steps);
  constexpr double kStarts[] = {0.0, 0.5, 1.0};

  std::vector<double> decomposition(n), complementarity(n), monotone(n), start(n), negative(n), g_end(n), h_end(n);
  parallel_for(n, run.threads(), [&](std::size_t i) {
    const SampledPath f = brownian_sample(grid, child_seed(run.seed(kTag1d), i));
    const double x0 = kStarts[i % 3];
    const auto sol = reflect1d::skorokhod_map_1d(f, x0);
    double scale = 1.0;
    double err = 0.0;
    double mass = 0.0;
    double down = 0.0;
    double neg = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double shifted = x0 + f.value(k);
      scale = std::max(scale, 1.0 + std::abs(shifted));
      err = std::max(err, std::abs(sol.g.value(k) - (shifted + sol.h.value(k))));
      if (sol.g.value(k) < 0.0) neg += 1.0;
      if (k + 1 < f.size()) {
        const double dh = sol.h.value(k + 1) - sol.h.value(k);
        if (dh < 0.0) down += 1.0;
        if (sol.g.value(k + 1) > 0.0) mass += dh;
      }
    }
    decomposition[i] = err / scale;
    complementarity[i] = mass;
    monotone[i] = down;
    start[i] = sol.h.value(0) != 0.0 ? 1.0 : 0.0;
    negative[i] = neg;
    g_end[i] = sol.g.back();
    h_end[i] = sol.h.back();
  });

  run.estimates()["g_terminal"] = to_json(McEstimate::from_samples(g_end));
  run.estimates()["h_terminal"] = to_json(McEstimate::from_samples(h_end));
  run.check_le("decomposition_rel_error", max_of(decomposition), decomposition_tol);
  run.check_eq("h_decreasing_steps", sum_of(monotone), 0.0);
  run.check_eq("h_start_nonzero", sum_of(start), 0.0);
  run.check_eq("g_negative_points", sum_of(negative), 0.0);
  run.check_eq("complementarity_mass", sum_of(complementarity), 0.0);

  if (run.write_paths()) {
    run.set_paths_writer([grid, seed = run.seed(kTag1d)](std::ostream& out) {
      const SampledPath f = brownian_sample(grid, child_seed(seed, 0));
      write_reflected_pair_csv(f, reflect1d::skorokhod_map_1d(f, 0.0).g, out);
    });
  }
}

void rbm_density(Run& run) {
  const std::size_t n = run.n_paths(10'000);
  const std::size_t steps = run.steps(100'000);
  const double T = run.horizon(1.0);
  const double alpha = run.tol("ks_alpha", 0.01);
  const double k_se = run.tol("mean_se_multiple", 3.0);
  const TimeGrid grid = TimeGrid::uniform(T, steps);

  std::vector<double> skorokhod(n), regulator(n), folded(n);
  parallel_for(n, run.threads(), [&](std::size_t i) {
    const SampledPath b = brownian_sample(grid, child_seed(run.seed(kTagRbm), i));
    const auto sol = reflect1d::rbm_from_skorokhod(b, 0.0);
    skorokhod[i] = sol.g.back();
    regulator[i] = sol.h.back();
    folded[i] = reflect1d::rbm_abs(brownian_sample(grid, child_seed(run.seed(kTagRbmAbs), i))).back();
  });

  const double mean_abs = std::sqrt(2.0 * T / std::numbers::pi);
  const McEstimate x_mean = McEstimate::from_samples(skorokhod);
  const McEstimate phi_mean = McEstimate::from_samples(regulator);
  const McEstimate abs_mean = McEstimate::from_samples(folded);
  std::sort(skorokhod.begin(), skorokhod.end());
  std::sort(folded.begin(), folded.end());
  const KsResult ks = ks_test_against_cdf(skorokhod, [T](double y) { return reflect1d::half_normal_cdf(y, T); }, alpha);
  const KsResult ks_abs = ks_test_against_cdf(folded, [T](double y) { return reflect1d::half_normal_cdf(y, T); }, alpha);
  const KsResult ks2 = ks_two_sample(skorokhod, folded, alpha);

  auto& est = run.estimates();
  est["skorokhod_terminal"] = to_json(x_mean);
  est["regulator_terminal"] = to_json(phi_mean);
  est["abs_terminal"] = to_json(abs_mean);
  est["ks_skorokhod_vs_half_normal"] = to_json(ks);
  est["ks_abs_vs_half_normal"] = to_json(ks_abs);
  est["ks_two_sample"] = to_json(ks2);

  run.check_lt("ks_skorokhod_vs_half_normal", ks.statistic, ks.threshold);
  run.check_lt("ks_two_sample_skorokhod_vs_abs", ks2.statistic, ks2.threshold);
  run.check_within_se("skorokhod_mean_vs_sqrt_2T_over_pi", x_mean, mean_abs, k_se);
  run.check_within_se("regulator_mean_vs_sqrt_2T_over_pi", phi_mean, mean_abs, k_se);

  if (run.write_paths()) {
    run.set_paths_writer([grid, seed = run.seed(kTagRbm)](std::ostream& out) {
      const SampledPath b = brownian_sample(grid, child_seed(seed, 0));
      write_reflected_pair_csv(b, reflect1d::rbm_abs(b), out);
    });
  }
}

void ito_isometry(Run& run) {
  const std::size_t n = run.n_paths(100'000);
  const std::size_t steps = run.steps(1000);
  const double T = run.horizon(1.0);
  const double k_mean = run.tol("mean_se_multiple", 3.0);
  const double k_joint = run.tol("joint_se_multiple", 4.0);
  const double k_mart = run.tol("martingale_se_multiple", 4.0);

  struct Case {
    std::string key;
    ito::Integrand f;
    double target;  // E int_0^T f^2 dt
  };
  const std::vector<Case> cases = {
      {"B", ito::Integrand::power(1), T * T / 2.0},
      {"one", ito::Integrand::constant(1.0), T},
      {"B2", ito::Integrand::power(2), T * T * T},
  };
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& cs = cases[c];
    const auto iso = ito::ito_isometry_check(cs.f, T, steps, n, child_seed(run.seed(kTagIso), c), run.threads());
    run.estimates()[cs.key] = Json{{"lhs", to_json(iso.lhs)},
                                   {"rhs", to_json(iso.rhs)},
                                   {"difference", to_json(iso.difference)},
                                   {"integral", to_json(iso.integral)}};
    if (cs.key == "B") {
      run.check_within_se("B.lhs_vs_half", iso.lhs, cs.target, k_mean);
      run.check_within_se("B.rhs_vs_half", iso.rhs, cs.target, k_mean);
    } else if (cs.key == "one") {
      run.check_le("one.rhs_exact", std::abs(iso.rhs.mean - T), 1e-9 * T);
      run.check_within_se("one.lhs_vs_T", iso.lhs, cs.target, k_mean);
    } else {
      run.check_within_se("B2.rhs_vs_T3", iso.rhs, cs.target, k_mean);
    }
    run.check_within_se(cs.key + ".lhs_minus_rhs", iso.difference, 0.0, k_joint);
    run.check_within_se(cs.key + ".martingale_mean", iso.integral, 0.0, k_mart);
  }
}

void ito_formula(Run& run) {
  const std::size_t n = run.n_paths(100);
  const std::size_t steps = run.steps(10'000);
  const double T = run.horizon(1.0);
  const double rms_limit = run.tol("cubic_rms", 0.05);
  const double ratio_lo = run.tol("ratio_lo", 1.5);
  const double ratio_hi = run.tol("ratio_hi", 3.0);
  const TimeGrid fine_grid = TimeGrid::uniform(T, 4 * steps);

  const ito::SmoothFunction cubic{[](double, double x) { return x * x * x; }, [](double, double) { return 0.0; },
                                  [](double, double x) { return 3.0 * x * x; }, [](double, double x) { return 6.0 * x; }};
  const ito::SmoothFunction square_minus_t{[](double t, double x) { return x * x - t; },
                                           [](double, double) { return -1.0; },
                                           [](double, double x) { return 2.0 * x; },
                                           [](double, double) { return 2.0; }};
  const ito::SmoothFunction identity{[](double, double x) { return x; }, [](double, double) { return 0.0; },
                                     [](double, double) { return 1.0; }, [](double, double) { return 0.0; }};

  std::vector<double> coarse(n), fine(n), realized(n), sq_gap(n), sq_res(n), lin(n);
  parallel_for(n, run.threads(), [&](std::size_t i) {
    const SampledPath bf = brownian_sample(fine_grid, child_seed(run.seed(kTagFormula), i));
    const SampledPath bc = bf.subsampled(4);
    const auto qv_c = ito::brownian_quadratic_variation(bc.grid());
    coarse[i] = ito::ito_formula_residual(cubic, bc, qv_c);
    fine[i] = ito::ito_formula_residual(cubic, bf, ito::brownian_quadratic_variation(fine_grid));
    const auto realized_qv = ito::quadratic_variation(bc);
    realized[i] = ito::ito_formula_residual(cubic, bc, realized_qv);
    sq_res[i] = ito::ito_formula_residual(square_minus_t, bc, qv_c);
    sq_gap[i] = std::abs(sq_res[i] - (realized_qv.terminal() - T));
    lin[i] = std::abs(ito::ito_formula_residual(identity, bc, qv_c));
  });

  const double rms_c = rms_of(coarse);
  const double rms_f = rms_of(fine);
  auto& est = run.estimates();
  est["cubic_rms_dt"] = rms_c;
  est["cubic_rms_dt_over_4"] = rms_f;
  est["cubic_rms_realized_qv"] = rms_of(realized);
  est["square_minus_t_rms"] = rms_of(sq_res);
  run.check_le("cubic_rms_at_dt", rms_c, rms_limit);
  run.check_in("cubic_rms_ratio", rms_f > 0.0 ? rms_c / rms_f : 0.0, ratio_lo, ratio_hi);
  run.check_le("square_minus_t_equals_qv_gap", max_of(sq_gap), run.tol("square_identity", 1e-9));
  run.check_le("identity_residual", max_of(lin), run.tol("identity_residual", 1e-12));
}

void local_time(Run& run) {
  const std::size_t n = run.n_paths(10'000);
  const std::size_t steps = run.steps(10'000);
  const double T = run.horizon(1.0);
  const double eps = run.tol("epsilon", 0.01);
  const double level = run.tol("level", 0.0);
  const double k_se = run.tol("mean_se_multiple", 3.0);
  const double gap_limit = run.tol("cross_rms", 0.05);
  const TimeGrid grid = TimeGrid::uniform(T, steps);

  std::vector<double> occ(n), tan(n), gap(n);
  parallel_for(n, run.threads(), [&](std::size_t i) {
    const SampledPath b = brownian_sample(grid, child_seed(run.seed(kTagLocal), i));
    occ[i] = ito::local_time_occupation(b, level, eps).value;
    tan[i] = ito::local_time_tanaka(b, level).value;
    gap[i] = occ[i] - tan[i];
  });
  // E phi(T, a) = (1/2) int_0^T p(s, a) ds.
  double target = 0.0;
  if (level == 0.0) {
    target = std::sqrt(T / (2.0 * std::numbers::pi));
  } else {
    // closed form of (1/2) int_0^T (2 pi s)^{-1/2} exp(-a^2/2s) ds
    const double a = std::abs(level);
    target = std::sqrt(T / (2.0 * std::numbers::pi)) * std::exp(-a * a / (2.0 * T)) -
             0.5 * a * std::erfc(a / std::sqrt(2.0 * T));
  }
  const McEstimate occ_est = McEstimate::from_samples(occ);
  const McEstimate tan_est = McEstimate::from_samples(tan);
  auto& est = run.estimates();
  est["target"] = target;
  est["occupation"] = to_json(occ_est);
  est["tanaka"] = to_json(tan_est);
  est["cross_rms"] = rms_of(gap);
  run.check_within_se("occupation_mean", occ_est, target, k_se);
  run.check_within_se("tanaka_mean", tan_est, target, k_se);

  // Per-path agreement needs a finer grid and window than the mean checks:
  // at dt = 1e-4, eps = 0.01 the two estimators' own errors already give an
  // RMS gap near 0.057.
  const std::size_t n_cross = std::min<std::size_t>(n, static_cast<std::size_t>(run.tol("cross_paths", 1000)));
  const std::size_t cross_steps = static_cast<std::size_t>(run.tol("cross_steps", 100'000));
  const double cross_eps = run.tol("cross_epsilon", 0.005);
  const TimeGrid fine = TimeGrid::uniform(T, cross_steps);
  std::vector<double> fine_gap(n_cross);
  parallel_for(n_cross, run.threads(), [&](std::size_t i) {
    const SampledPath b = brownian_sample(fine, child_seed(run.seed(kTagLocal + 1), i));
    fine_gap[i] = ito::local_time_occupation(b, level, cross_eps).value - ito::local_time_tanaka(b, level).value;
  });
  est["cross_rms_fine"] = rms_of(fine_gap);
  run.check_le("cross_estimator_rms_fine", rms_of(fine_gap), gap_limit);
}

struct NdDomainStats {
  std::vector<double> identity, violation, interior_mass, angle, variation, lemma_i, lemma_ii, schedule_ratio;
  std::vector<double> levels_dyadic, levels_triadic, refine_failures, monotone;
  explicit NdDomainStats(std::size_t n)
      : identity(n), violation(n), interior_mass(n), angle(n), variation(n), lemma_i(n), lemma_ii(n),
        schedule_ratio(n), levels_dyadic(n), levels_triadic(n), refine_failures(n), monotone(n) {}
};

void nd_skorokhod_props(Run& run) {
  const std::size_t n = run.n_paths(1000);
  const std::size_t steps = run.steps(1000);
  const double T = run.horizon(1.0);
  const double proj_tol = run.tol("projection", 1e-10);
  const double angle_tol = run.tol("normal_angle", 1e-6);
  const double gap_tol = run.tol("lemma_gap_rel", 1e-9);
  const double identity_tol = run.tol("identity_rel", 1e-9);
  const std::size_t max_levels = static_cast<std::size_t>(run.tol("max_levels", 6));
  const TimeGrid grid = TimeGrid::uniform(T, steps);
  ProjectionOptions popt;
  popt.tol = proj_tol;

  struct Setup {
    std::string key;
    ConvexDomain domain;
    Point x0;
    std::uint64_t tag;
  };
  Point corner_start(2);
  corner_start << 0.25, 0.25;
  const std::vector<Setup> setups = {{"unit_disc", ConvexDomain::unit_disc(), Point::Zero(2), kTagNdDisc},
                                     {"orthant", ConvexDomain::orthant(2), corner_start, kTagNdOrthant}};

  for (const auto& s : setups) {
    NdDomainStats st(n);
    parallel_for(n, run.threads(), [&](std::size_t i) {
      const SampledPath w = brownian_sample(grid, 2, PointMass{s.x0}, child_seed(run.seed(s.tag), i));
      const SampledPath partner =
          brownian_sample(grid, 2, PointMass{s.x0}, child_seed(run.seed(s.tag ^ kTagNdPartner), i));
      const double scale = 1.0 + std::max(w.sup_norm(), partner.sup_norm());

      const auto step = reflectnd::solve_skorokhod_step(w.with_kind(PathKind::Step), s.domain, popt);
      const auto other = reflectnd::solve_skorokhod_step(partner.with_kind(PathKind::Step), s.domain, popt);
      const auto assoc = reflectnd::check_association(step, w.with_kind(PathKind::Step), s.domain);
      st.identity[i] = assoc.max_identity_error / scale;
      st.violation[i] = assoc.max_violation;
      st.interior_mass[i] = assoc.interior_mass;
      st.angle[i] = assoc.max_normal_angle;
      st.variation[i] = assoc.max_variation_mismatch;
      st.monotone[i] = assoc.variation_monotone ? 0.0 : 1.0;
      st.lemma_i[i] = reflectnd::tanaka_inequality_gap(step, other) / (scale * scale);

      RandomStream pairs(child_seed(run.seed(kTagNdPairs ^ s.tag), i));
      double worst = 0.0;
      for (int p = 0; p < 8; ++p) {
        auto a = static_cast<std::size_t>(pairs.uniform() * static_cast<double>(grid.size()));
        auto b = static_cast<std::size_t>(pairs.uniform() * static_cast<double>(grid.size()));
        if (a > b) std::swap(a, b);
        worst = std::min(worst, reflectnd::modulus_gap(step, grid[a], grid[b]));
      }
      st.lemma_ii[i] = worst / (scale * scale);

      reflectnd::RefinementOptions dyadic;
      dyadic.max_levels = max_levels;
      dyadic.projection = popt;
      reflectnd::RefinementOptions triadic = dyadic;
      triadic.factor = 3;
      try {
        const auto cd = reflectnd::solve_skorokhod_continuous(w, s.domain, dyadic);
        const auto ct = reflectnd::solve_skorokhod_continuous(w, s.domain, triadic);
        st.schedule_ratio[i] = sup_distance(cd.X_on_input_grid(), ct.X_on_input_grid()) / (2.0 * cd.refine_tol);
        st.levels_dyadic[i] = static_cast<double>(cd.levels);
        st.levels_triadic[i] = static_cast<double>(ct.levels);
        const auto fine_assoc = reflectnd::check_association(
            cd.solution, w.refined(cd.stride).with_kind(PathKind::Step), s.domain);
        st.violation[i] = std::max(st.violation[i], fine_assoc.max_violation);
        st.interior_mass[i] += fine_assoc.interior_mass;
        st.angle[i] = std::max(st.angle[i], fine_assoc.max_normal_angle);
      } catch (const RefinementLimitError&) {
        st.refine_failures[i] = 1.0;
        st.schedule_ratio[i] = std::numeric_limits<double>::infinity();
      }
    });

    auto& est = run.estimates()[s.key];
    est["mean_levels_dyadic"] = sum_of(st.levels_dyadic) / static_cast<double>(n);
    est["mean_levels_triadic"] = sum_of(st.levels_triadic) / static_cast<double>(n);
    est["max_levels_dyadic"] = max_of(st.levels_dyadic);
    est["max_levels_triadic"] = max_of(st.levels_triadic);
    const std::string p = s.key + ".";
    run.check_le(p + "identity_rel_error", max_of(st.identity), identity_tol);
    run.check_le(p + "containment_violation", max_of(st.violation), proj_tol);
    run.check_eq(p + "interior_phi_mass", sum_of(st.interior_mass), 0.0);
    run.check_le(p + "normal_cone_angle", max_of(st.angle), angle_tol);
    run.check_le(p + "variation_mismatch", max_of(st.variation), 1e-12 * static_cast<double>(steps));
    run.check_eq(p + "variation_decreasing_paths", sum_of(st.monotone), 0.0);
    run.check_ge(p + "lemma_i_min_gap_rel", min_of(st.lemma_i), -gap_tol);
    run.check_ge(p + "lemma_ii_min_gap_rel", min_of(st.lemma_ii), -gap_tol);
    run.check_eq(p + "refinement_failures", sum_of(st.refine_failures), 0.0);
    run.check_le(p + "dyadic_vs_triadic_over_2tol", max_of(st.schedule_ratio), 1.0);
  }

  // 1D consistency with the explicit map.
  const ConvexDomain half_line = ConvexDomain::half_line();
  std::vector<double> ratio(n), failures(n);
  parallel_for(n, run.threads(), [&](std::size_t i) {
    const SampledPath f = brownian_sample(grid, child_seed(run.seed(kTagNd1d), i));
    constexpr double x0 = 0.5;
    std::vector<double> shifted(f.values().begin(), f.values().end());
    for (double& v : shifted) v += x0;
    const SampledPath w = SampledPath::scalar(grid, std::move(shifted));
    reflectnd::RefinementOptions opt;
    opt.max_levels = max_levels;
    opt.projection = popt;
    try {
      const auto cs = reflectnd::solve_skorokhod_continuous(w, half_line, opt);
      ratio[i] = sup_distance(cs.X_on_input_grid().with_kind(PathKind::Continuous),
                              reflect1d::skorokhod_map_1d(f, x0).g) /
                 cs.refine_tol;
    } catch (const RefinementLimitError&) {
      failures[i] = 1.0;
    }
  });
  run.check_eq("half_line.refinement_failures", sum_of(failures), 0.0);
  run.check_le("half_line.vs_explicit_map_over_tol", max_of(ratio), 1.0);

  if (run.write_paths()) {
    run.set_paths_writer([grid, seed = run.seed(kTagNdDisc), popt](std::ostream& out) {
      const SampledPath w = brownian_sample(grid, 2, PointMass{Point::Zero(2)}, child_seed(seed, 0));
      write_solution_csv(reflectnd::solve_skorokhod_step(w.with_kind(PathKind::Step), ConvexDomain::unit_disc(), popt),
                         out);
    });
  }
}

void rsde_consistency(Run& run) {
  const std::size_t n = run.n_paths(10'000);
  const std::size_t steps = run.steps(10'000);
  const double T = run.horizon(1.0);
  const double alpha = run.tol("ks_alpha", 0.01);
  auto& est = run.estimates();

  // Deterministic pushdown against the floor y >= 0.
  {
    const ConvexDomain floor = domain_preset("halfplane");
    rsde::SdeCoefficients push = rsde::presets::zero(2);
    push.drift = [](double, const Point&) -> Point {
      Point v(2);
      v << 0.0, -1.0;
      return v;
    };
    const TimeGrid g = TimeGrid::uniform(T, 1000);
    const auto path = rsde::euler_reflected(push, floor, Point::Zero(2), g, run.seed(kTagRsde));
    double err_phi = 0.0;
    double err_x = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      Point expected(2);
      expected << 0.0, g[k];
      err_phi = std::max(err_phi, (path.phi.point(k) - expected).norm());
      err_x = std::max(err_x, path.X.point(k).norm());
    }
    run.check_le("pushdown.phi_vs_t", err_phi, run.tol("pushdown", 1e-12));
    run.check_le("pushdown.X_pinned", err_x, run.tol("pushdown", 1e-12));
  }

  // 1D unit diffusion on [0, inf) is reflecting Brownian motion.
  {
    const ConvexDomain half_line = ConvexDomain::half_line();
    const auto coeffs = rsde::presets::unit_diffusion(1);
    const TimeGrid grid = TimeGrid::uniform(T, steps);
    std::vector<double> terminal(n), consistency(n, 0.0);
    const std::size_t n_consistency = std::min<std::size_t>(n, 200);
    parallel_for(n, run.threads(), [&](std::size_t i) {
      const auto path = rsde::euler_reflected(coeffs, half_line, Point::Zero(1), grid, child_seed(run.seed(kTagRsde), i));
      terminal[i] = path.X.back();
      if (i < n_consistency) {
        const auto explicit_map = reflect1d::skorokhod_map_1d(path.driver, 0.0);
        const double scale = 1.0 + path.driver.sup_norm();
        double gap = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
          gap = std::max({gap, std::abs(path.X.value(k) - explicit_map.g.value(k)),
                          std::abs(path.phi.value(k) - explicit_map.h.value(k))});
        }
        consistency[i] = gap / scale;
      }
    });
    std::sort(terminal.begin(), terminal.end());
    const KsResult ks = ks_test_against_cdf(terminal, [T](double y) { return reflect1d::half_normal_cdf(y, T); }, alpha);
    est["unit_diffusion_ks"] = to_json(ks);
    run.check_lt("unit_diffusion.ks_vs_half_normal", ks.statistic, ks.threshold);
    run.check_le("unit_diffusion.vs_explicit_map_rel", max_of(consistency), run.tol("explicit_map_rel", 1e-12));
  }

  // Association invariants of the projected scheme in the disc.
  {
    const ConvexDomain disc = ConvexDomain::unit_disc();
    const auto coeffs = rsde::presets::by_name(run.coefficients("sin-diffusion"), 2);
    const TimeGrid grid = TimeGrid::uniform(T, 1000);
    const std::size_t m = std::min<std::size_t>(n, 200);
    std::vector<double> violation(m), mass(m), angle(m);
    parallel_for(m, run.threads(), [&](std::size_t i) {
      Point x0(2);
      x0 << 0.5, 0.0;
      const auto path = rsde::euler_reflected(coeffs, disc, x0, grid, child_seed(run.seed(kTagRsdeNd), i));
      const auto sol = path.as_solution();
      const auto rep = reflectnd::check_association(sol, sol.driver(), disc);
      violation[i] = rep.max_violation;
      mass[i] = rep.interior_mass;
      angle[i] = rep.max_normal_angle;
    });
    run.check_le("disc_scheme.containment_violation", max_of(violation), 1e-10);
    run.check_eq("disc_scheme.interior_phi_mass", sum_of(mass), 0.0);
    run.check_le("disc_scheme.normal_cone_angle", max_of(angle), 1e-6);
  }

  // Coefficient contracts.
  {
    const ConvexDomain plane = domain_preset("halfplane");
    const std::size_t samples = 3000;
    const auto unit = rsde::coefficient_contract_check(rsde::presets::unit_diffusion(2), plane, samples,
                                                       child_seed(run.seed(kTagContract), 0));
    const auto linear = rsde::coefficient_contract_check(rsde::presets::by_name("linear-drift(2)@1", 2), plane,
                                                         samples, child_seed(run.seed(kTagContract), 1));
    const auto sine = rsde::coefficient_contract_check(rsde::presets::sin_diffusion(2), plane, samples,
                                                       child_seed(run.seed(kTagContract), 2));
    auto report = [](const rsde::ContractReport& r) {
      return Json{{"declared_k", r.declared_k},         {"sigma_lipschitz", r.sigma_lipschitz},
                  {"drift_lipschitz", r.drift_lipschitz}, {"sigma_growth", r.sigma_growth},
                  {"drift_growth", r.drift_growth},       {"pass", r.pass}};
    };
    est["contract_unit_diffusion"] = report(unit);
    est["contract_linear_drift_2_k1"] = report(linear);
    est["contract_sin_diffusion"] = report(sine);
    run.check_true("contract.unit_diffusion_accepted", unit.pass);
    run.check_true("contract.linear_drift_2_with_k1_rejected", !linear.pass);
    run.check_true("contract.sin_diffusion_accepted", sine.pass);
  }

  // Semimartingale route (w = M + A) against the Euler route on one driver.
  {
    const ConvexDomain disc = ConvexDomain::unit_disc();
    const TimeGrid grid = TimeGrid::uniform(T, 1000);
    Point drift(2);
    drift << 1.0, 0.0;
    const auto coeffs = rsde::presets::constant_drift(drift);
    const std::size_t m = std::min<std::size_t>(n, 20);
    std::vector<double> gap(m), mass(m), angle(m);
    parallel_for(m, run.threads(), [&](std::size_t i) {
      const SampledPath M = brownian_sample(grid, 2, PointMass{Point::Zero(2)}, child_seed(run.seed(kTagSemimart), i));
      std::vector<double> a(grid.size() * 2, 0.0);
      for (std::size_t k = 0; k < grid.size(); ++k) a[2 * k] = grid[k];
      const SampledPath A(grid, 2, std::move(a), PathKind::Continuous);
      const auto cs = rsde::semimartingale_skorokhod(M, A, disc);
      const SampledPath fine_driver = M.refined(cs.stride);
      const auto euler = rsde::euler_reflected(coeffs, disc, Point::Zero(2), fine_driver);
      gap[i] = sup_distance(cs.solution.X, euler.X);
      const auto rep = reflectnd::check_association(cs.solution, cs.solution.driver(), disc);
      mass[i] = rep.interior_mass;
      angle[i] = rep.max_normal_angle;
    });
    run.check_le("semimartingale.vs_euler_same_driver", max_of(gap), run.tol("semimartingale_vs_euler", 1e-10));
    run.check_eq("semimartingale.interior_phi_mass", sum_of(mass), 0.0);
    run.check_le("semimartingale.normal_cone_angle", max_of(angle), 1e-6);
  }
}

void condition_checks(Run& run) {
  const double c_tol = run.tol("condition_a_c", 1e-6);
  auto& est = run.estimates();
  auto report_json = [](const reflectnd::DomainConditionReport& r) {
    Json a{{"status", reflectnd::to_string(r.condition_a.status)}, {"reason", r.condition_a.reason}};
    if (r.condition_a.status == reflectnd::ConditionStatus::Holds) {
      a["e"] = to_json(r.condition_a.e);
      a["c"] = r.condition_a.c;
    }
    Json b{{"status", reflectnd::to_string(r.condition_b.status)}, {"reason", r.condition_b.reason}};
    if (r.condition_b.delta) b["delta"] = *r.condition_b.delta;
    return Json{{"condition_a", a}, {"condition_b", b}};
  };
  std::map<std::string, reflectnd::DomainConditionReport> reports;
  for (const char* name : {"orthant", "strip", "unit-disc", "halfplane", "orthant3"}) {
    reports[name] = reflectnd::check_conditions(domain_preset(name));
    est[name] = report_json(reports[name]);
  }
  using reflectnd::ConditionStatus;
  const auto& orth = reports["orthant"].condition_a;
  run.check_true("orthant.condition_a_holds", orth.status == ConditionStatus::Holds);
  run.check_le("orthant.condition_a_c_error", std::abs(orth.c - 1.0 / std::numbers::sqrt2), c_tol);
  run.check_true("strip.condition_a_fails", reports["strip"].condition_a.status == ConditionStatus::Fails);
  run.check_true("unit_disc.condition_b_holds_bounded",
                 reports["unit-disc"].condition_b.status == ConditionStatus::Holds &&
                     reports["unit-disc"].condition_b.reason == "domain is bounded");
  const auto& half = reports["halfplane"];
  run.check_true("halfplane.condition_a_holds", half.condition_a.status == ConditionStatus::Holds);
  run.check_le("halfplane.condition_a_c_error", std::abs(half.condition_a.c - 1.0), c_tol);
  run.check_true("halfplane.condition_b_holds", half.condition_b.status == ConditionStatus::Holds);
  run.check_true("orthant3.condition_b_unknown", reports["orthant3"].condition_b.status == ConditionStatus::Unknown);
}

void strong_error(Run& run) {
  const std::size_t n = run.n_paths(200);
  const double T = run.horizon(1.0);
  const ConvexDomain domain = run.domain("half-line");
  const auto coeffs = rsde::presets::by_name(run.coefficients("unit-diffusion"), domain.dim());
  const Point x0 = project(domain.interior_point() * 0.0, domain);
  std::vector<double> levels;
  for (int e = 4; e <= 12; ++e) levels.push_back(T * std::ldexp(1.0, -e));

  const auto rows = rsde::strong_error_estimate(coeffs, domain, x0, T, levels, n, run.seed(kTagStrong), run.threads());
  Json table = Json::array();
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table.push_back({{"dt", rows[i].dt}, {"steps", rows[i].steps}, {"rms_gap", rows[i].rms_gap}});
    if (i > 0 && !(rows[i].rms_gap < rows[i - 1].rms_gap)) decreasing = false;
  }
  run.estimates()["table"] = table;
  run.check_true("rms_gap_decreasing", decreasing);

  // Free motion and zero coefficients: the scheme must be exact across levels.
  const auto free_rows = rsde::strong_error_estimate(rsde::presets::unit_diffusion(1), domain_preset("half-line-far"),
                                                     Point::Zero(1), T, levels, std::min<std::size_t>(n, 50),
                                                     run.seed(kTagStrong + 1), run.threads());
  const auto zero_rows = rsde::strong_error_estimate(rsde::presets::zero(1), ConvexDomain::half_line(),
                                                     Point::Ones(1), T, levels, std::min<std::size_t>(n, 10),
                                                     run.seed(kTagStrong + 2), run.threads());
  double free_max = 0.0;
  double zero_max = 0.0;
  for (const auto& r : free_rows) free_max = std::max(free_max, r.rms_gap);
  for (const auto& r : zero_rows) zero_max = std::max(zero_max, r.rms_gap);
  run.check_le("free_brownian_gap", free_max, run.tol("free_gap", 1e-12));
  run.check_eq("zero_coefficients_gap", zero_max, 0.0);
}

using ExperimentFn = void (*)(Run&);

const std::map<std::string, ExperimentFn>& registry() {
  static const std::map<std::string, ExperimentFn> r = {
      {"skorokhod-1d-props", &skorokhod_1d_props}, {"rbm-density", &rbm_density},
      {"local-time", &local_time},                 {"ito-isometry", &ito_isometry},
      {"ito-formula", &ito_formula},               {"nd-skorokhod-props", &nd_skorokhod_props},
      {"rsde-consistency", &rsde_consistency},     {"condition-checks", &condition_checks},
      {"strong-error", &strong_error},
  };
  return r;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

bool ExperimentResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<std::string> ExperimentResult::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "skorokhod-1d-props", "rbm-density",      "local-time",       "ito-isometry", "ito-formula",
      "nd-skorokhod-props", "rsde-consistency", "condition-checks", "strong-error",
  };
  return names;
}

std::string library_version() { return SKOROKHOD_KIT_VERSION; }

void tune_allocator_for_paths() {
#if defined(__GLIBC__)
  mallopt(M_MMAP_THRESHOLD, 64 << 20);
  mallopt(M_TRIM_THRESHOLD, 256 << 20);
#endif
}

std::string summary_bytes(const ExperimentResult& result) { return result.summary.dump(2) + "\n"; }

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto it = registry().find(config.experiment);
  if (it == registry().end()) {
    throw ConfigError("unknown experiment: '" + config.experiment + "'");
  }
  // Resolve referenced files and presets before any simulation starts.
  if (config.domain_file) (void)load_domain(*config.domain_file);
  if (config.domain) (void)domain_preset(*config.domain);
  if (config.coefficients) {
    try {
      (void)rsde::presets::by_name(*config.coefficients, 1);
    } catch (const PreconditionError&) {
      (void)rsde::presets::by_name(*config.coefficients, 2);
    }
  }

  Run run(config);
  const auto start = std::chrono::steady_clock::now();
  it->second(run);
  ExperimentResult result = run.finish(config.experiment);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (config.out_dir) {
    const auto dir = *config.out_dir / config.experiment;
    write_file(dir / "summary.json", [&](std::ostream& out) { out << summary_bytes(result); });
    Json manifest{{"experiment", config.experiment},
                  {"library_version", library_version()},
                  {"seed", config.seed},
                  {"config", result.summary["config"]},
                  {"threads", run.threads()},
                  {"wall_seconds", result.wall_seconds},
                  {"created_utc", utc_timestamp()}};
    write_file(dir / "manifest.json", [&](std::ostream& out) { out << manifest.dump(2) << "\n"; });
    if (config.write_paths && run.paths_writer()) {
      write_file(dir / "paths.csv", run.paths_writer());
    }
  }
  return result;
}

}  // namespace skorokhod::harness
