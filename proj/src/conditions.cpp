#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "skorokhod/core/errors.hpp"
#include "skorokhod/skorokhodnd.hpp"

namespace skorokhod::reflectnd {
namespace {

constexpr std::size_t kMaxConditionADim = 8;

// Minimum-norm point of the affine hull of the columns of N restricted to
// `support`; weights are returned in full length (zero off the support).
Eigen::VectorXd affine_min_norm_weights(const Eigen::MatrixXd& N, const std::vector<Eigen::Index>& support) {
  const auto m = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) kkt(a, b) = N.col(support[a]).dot(N.col(support[b]));
    kkt(a, m) = 1.0;
    kkt(m, a) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs[m] = 1.0;
  const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(N.cols());
  for (Eigen::Index a = 0; a < m; ++a) weights[support[a]] = sol[a];
  return weights;
}

}  // namespace

ConditionAReport check_condition_a(const ConvexDomain& domain, std::size_t search_iterations) {
  if (domain.dim() > kMaxConditionADim) {
    throw UnsupportedError("check_condition_a: dimension above 8 is not supported");
  }
  ConditionAReport report;
  if (!domain.balls().empty()) {
    report.reason = "ball constraints contribute a continuum of normals; not searched";
    return report;
  }
  const auto d = static_cast<Eigen::Index>(domain.dim());
  const auto& hs = domain.halfspaces();
  if (hs.empty()) {
    report.status = ConditionStatus::Holds;
    report.e = Point::Unit(d, 0);
    report.c = 1.0;
    report.reason = "no boundary";
    return report;
  }
  const auto m = static_cast<Eigen::Index>(hs.size());
  Eigen::MatrixXd N(d, m);
  for (Eigen::Index i = 0; i < m; ++i) N.col(i) = hs[static_cast<std::size_t>(i)].normal;

  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      if ((N.col(i) + N.col(j)).norm() <= 1e-12) {
        report.status = ConditionStatus::Fails;
        report.reason = "opposing inward normals: no e can have positive product with both";
        return report;
      }
    }
  }

  // max_{|e|=1} min_i <e, n_i> = |z| with z the min-norm point of conv{n_i}.
  Eigen::VectorXd weights = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  Eigen::VectorXd z = N * weights;
  for (std::size_t it = 0; it < search_iterations; ++it) {
    Eigen::Index s = 0;
    (N.transpose() * z).minCoeff(&s);
    const Eigen::VectorXd dir = N.col(s) - z;
    const double duality_gap = -z.dot(dir);
    if (duality_gap <= 1e-15) break;
    const double gamma = std::clamp(duality_gap / dir.squaredNorm(), 0.0, 1.0);
    z += gamma * dir;
    weights *= (1.0 - gamma);
    weights[s] += gamma;
  }

  // Polish: exact min-norm point of the affine hull of the near-active normals.
  const double zz = z.squaredNorm();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (N.col(i).dot(z) <= zz + 1e-6) support.push_back(i);
  }
  const Eigen::VectorXd polished_w = affine_min_norm_weights(N, support);
  const Eigen::VectorXd polished = N * polished_w;
  const double pp = polished.squaredNorm();
  bool polished_ok = polished_w.minCoeff() >= -1e-12;
  for (Eigen::Index i = 0; i < m && polished_ok; ++i) {
    polished_ok = N.col(i).dot(polished) >= pp - 1e-12;
  }
  if (polished_ok) z = polished;

  const double norm = z.norm();
  if (norm > 1e-9) {
    const Eigen::VectorXd e = z / norm;
    report.e = e;
    report.c = (N.transpose() * e).minCoeff();
    if (report.c > 0.0) {
      report.status = ConditionStatus::Holds;
      report.reason = "e is the normalized min-norm point of the normals' convex hull";
      return report;
    }
  }
  if (polished_ok && norm <= 1e-12) {
    report.status = ConditionStatus::Fails;
    report.reason = "0 is a convex combination of the inward normals";
    return report;
  }
  report.reason = "search inconclusive";
  return report;
}

ConditionBReport check_condition_b(const ConvexDomain& domain) {
  ConditionBReport report;
  if (domain.is_bounded()) {
    report.status = ConditionStatus::Holds;
    report.reason = "domain is bounded";
    if (!domain.balls().empty()) {
      // D lies in each ball, so every boundary point is within this distance
      // of the interior witness.
      double delta = std::numeric_limits<double>::infinity();
      for (const auto& b : domain.balls()) {
        delta = std::min(delta, (domain.interior_point() - b.center).norm() + b.radius);
      }
      report.delta = delta;
    }
    return report;
  }
  if (domain.dim() == 2) {
    report.status = ConditionStatus::Holds;
    report.reason = "dimension is 2";
    return report;
  }
  report.reason = "neither bounded nor two-dimensional; no general decision procedure";
  return report;
}

DomainConditionReport check_conditions(const ConvexDomain& domain) {
  DomainConditionReport r;
  if (domain.dim() <= kMaxConditionADim) {
    r.condition_a = check_condition_a(domain);
  } else {
    r.condition_a.reason = "dimension above 8";
  }
  r.condition_b = check_condition_b(domain);
  return r;
}

}  // namespace skorokhod::reflectnd
