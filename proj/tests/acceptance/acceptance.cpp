// Runs every experiment at its default (acceptance-scale) configuration with
// seed 42 and prints one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "skorokhod/core/parallel.hpp"
#include "skorokhod/harness/experiments.hpp"
#include "skorokhod/skorokhod1d.hpp"

using namespace skorokhod;
using namespace skorokhod::harness;

namespace {

struct Outcome {
  ExperimentResult result;
  std::string bytes;
  double seconds = 0.0;
};

std::map<std::string, Outcome> g_runs;
int g_failed = 0;

ExperimentConfig default_config(const std::string& name) {
  ExperimentConfig c;
  c.experiment = name;
  c.seed = 42;
  return c;
}

const Outcome& run(const std::string& name) {
  auto it = g_runs.find(name);
  if (it != g_runs.end()) return it->second;
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  o.result = run_experiment(default_config(name));
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.bytes = summary_bytes(o.result);
  return g_runs.emplace(name, std::move(o)).first->second;
}

const Check* find_check(const ExperimentResult& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double estimate(const ExperimentResult& r, const Json::json_pointer& ptr) { return r.summary["estimates"].at(ptr).get<double>(); }

void report(int id, bool pass, const std::string& title, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

// Every listed check must be present and passing; the experiment must pass overall.
bool required_checks(const ExperimentResult& r, const std::vector<std::string>& names, std::string& detail) {
  bool ok = r.pass();
  for (const auto& n : names) {
    const Check* c = find_check(r, n);
    if (c == nullptr) {
      detail += " missing:" + n;
      ok = false;
    } else if (!c->pass) {
      char buf[256];
      std::snprintf(buf, sizeof buf, " failed:%s=%.6g", n.c_str(), c->value);
      detail += buf;
      ok = false;
    }
  }
  for (const auto& f : r.failed_checks()) {
    if (std::find(names.begin(), names.end(), f) == names.end()) detail += " failed:" + f;
  }
  return ok;
}

template <typename... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

void criterion_1() {
  const auto& o = run("skorokhod-1d-props");
  std::string detail = fmt("%.2f s", o.seconds);
  bool ok = required_checks(o.result,
                            {"decomposition_rel_error", "h_decreasing_steps", "h_start_nonzero", "g_negative_points",
                             "complementarity_mass"},
                            detail);
  ok = ok && o.seconds < 10.0;
  ok = ok && o.result.summary["config"]["n_paths"] == 1000 && o.result.summary["config"]["steps"] == 10'000;
  report(1, ok, "1D Skorokhod map identity, monotone regulator, complementarity", detail);
}

void criterion_2() {
  // Oracle for the half-normal CDF: integrate the reflected transition density.
  boost::math::quadrature::tanh_sinh<double> integrator;
  double cdf_err = 0.0;
  for (double y : {0.1, 0.5, 1.0, 2.0, 3.5}) {
    const double q = integrator.integrate([](double u) { return reflect1d::reflected_density(1.0, 0.0, u); }, 0.0, y);
    cdf_err = std::max(cdf_err, std::abs(q - reflect1d::half_normal_cdf(y)));
  }
  const auto& o = run("rbm-density");
  std::string detail = fmt("%.2f s, KS %.5f vs %.5f, two-sample %.5f vs %.5f", o.seconds,
                           estimate(o.result, "/ks_skorokhod_vs_half_normal/statistic"_json_pointer),
                           estimate(o.result, "/ks_skorokhod_vs_half_normal/threshold"_json_pointer),
                           estimate(o.result, "/ks_two_sample/statistic"_json_pointer),
                           estimate(o.result, "/ks_two_sample/threshold"_json_pointer));
  detail += fmt(", cdf oracle err %.1e", cdf_err);
  bool ok = required_checks(o.result, {"ks_skorokhod_vs_half_normal", "ks_two_sample_skorokhod_vs_abs"}, detail);
  ok = ok && o.seconds < 60.0 && cdf_err < 1e-12 && o.result.summary["config"]["n_paths"] == 10'000;
  report(2, ok, "RBM terminal law: KS vs half-normal and vs |B|", detail);
}

void criterion_3() {
  const auto& o = run("ito-isometry");
  std::string detail = fmt("%.2f s, lhs %.5f, rhs %.5f, joint SE %.5f", o.seconds,
                           estimate(o.result, "/B/lhs/mean"_json_pointer), estimate(o.result, "/B/rhs/mean"_json_pointer),
                           estimate(o.result, "/B/difference/std_error"_json_pointer));
  bool ok = required_checks(o.result, {"B.lhs_vs_half", "B.rhs_vs_half", "B.lhs_minus_rhs"}, detail);
  ok = ok && o.seconds < 300.0 && o.result.summary["config"]["n_paths"] == 100'000 &&
       o.result.summary["config"]["steps"] == 1000;
  report(3, ok, "Ito isometry for f = B", detail);
}

void criterion_4() {
  const auto& o = run("ito-formula");
  std::string detail = fmt("%.2f s", o.seconds);
  const Check* rms = find_check(o.result, "cubic_rms_at_dt");
  const Check* ratio = find_check(o.result, "cubic_rms_ratio");
  if (rms && ratio) detail += fmt(", RMS %.5f, ratio %.3f", rms->value, ratio->value);
  bool ok = required_checks(o.result, {"cubic_rms_at_dt", "cubic_rms_ratio"}, detail);
  ok = ok && o.result.summary["config"]["n_paths"] == 100;
  report(4, ok, "Ito formula residual for x^3", detail);
}

void criterion_5() {
  // Quadrature oracle: E phi(1, 0) = (1/2) int_0^1 (2 pi s)^(-1/2) ds.
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double oracle =
      0.5 * integrator.integrate([](double s) { return 1.0 / std::sqrt(2.0 * std::numbers::pi * s); }, 0.0, 1.0);
  const auto& o = run("local-time");
  const double target = o.result.summary["estimates"]["target"].get<double>();
  std::string detail = fmt("%.2f s, oracle %.6f, occupation %.5f, Tanaka %.5f", o.seconds, oracle,
                           estimate(o.result, "/occupation/mean"_json_pointer),
                           estimate(o.result, "/tanaka/mean"_json_pointer));
  detail += fmt(", cross RMS %.4f (dt 1e-4: %.4f)", estimate(o.result, "/cross_rms_fine"_json_pointer),
                estimate(o.result, "/cross_rms"_json_pointer));
  bool ok = required_checks(o.result, {"occupation_mean", "tanaka_mean", "cross_estimator_rms_fine"}, detail);
  ok = ok && std::abs(oracle - 1.0 / std::sqrt(2.0 * std::numbers::pi)) < 1e-12 && std::abs(target - oracle) < 1e-12;
  report(5, ok, "local time estimators at level 0", detail);
}

void criterion_6() {
  const auto& o = run("nd-skorokhod-props");
  std::string detail = fmt("%.2f s", o.seconds);
  std::vector<std::string> names;
  for (const char* p : {"unit_disc.", "orthant."}) {
    for (const char* c : {"containment_violation", "interior_phi_mass", "lemma_i_min_gap_rel", "lemma_ii_min_gap_rel",
                          "dyadic_vs_triadic_over_2tol", "normal_cone_angle", "identity_rel_error"}) {
      names.push_back(std::string(p) + c);
    }
  }
  names.push_back("half_line.vs_explicit_map_over_tol");
  bool ok = required_checks(o.result, names, detail);
  ok = ok && o.seconds < 120.0 && o.result.summary["config"]["n_paths"] == 1000;
  report(6, ok, "ND Skorokhod problem on disc and orthant", detail);
}

void criterion_7() {
  const auto& o = run("rsde-consistency");
  std::string detail = fmt("%.2f s", o.seconds);
  const Check* ks = find_check(o.result, "unit_diffusion.ks_vs_half_normal");
  if (ks) detail += fmt(", KS %.5f", ks->value);
  const bool ok = required_checks(o.result,
                                  {"pushdown.phi_vs_t", "pushdown.X_pinned", "unit_diffusion.ks_vs_half_normal",
                                   "contract.unit_diffusion_accepted", "contract.linear_drift_2_with_k1_rejected"},
                                  detail);
  report(7, ok, "reflected SDE: pushdown, 1D law, coefficient contracts", detail);
}

void criterion_8() {
  const auto& o = run("condition-checks");
  std::string detail = fmt("c(orthant) = %.9f", o.result.summary["estimates"]["orthant"]["condition_a"]["c"].get<double>());
  const bool ok = required_checks(o.result,
                                  {"orthant.condition_a_holds", "orthant.condition_a_c_error", "strip.condition_a_fails",
                                   "unit_disc.condition_b_holds_bounded"},
                                  detail);
  report(8, ok, "domain conditions A and B", detail);
}

void criterion_9() {
  // Rerun every experiment with the identical config; vary the worker count
  // too, since results must not depend on it.
  const std::size_t hw = default_thread_count();
  bool ok = true;
  std::string detail;
  for (const auto& name : experiment_names()) {
    const Outcome& first = run(name);
    ExperimentConfig c = default_config(name);
    c.threads = hw > 1 ? std::max<std::size_t>(1, hw / 2) : 2;
    const std::string again = summary_bytes(run_experiment(c));
    const bool same = again == first.bytes;
    if (!same) {
      ok = false;
      detail += " differs:" + name;
    }
  }
  detail = fmt("%.0f experiments rerun", static_cast<double>(experiment_names().size())) + detail;
  report(9, ok, "byte-identical summaries on rerun", detail);
}

}  // namespace

int main() {
  tune_allocator_for_paths();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d of 9 criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
