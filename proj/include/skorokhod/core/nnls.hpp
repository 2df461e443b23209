#pragma once

#include <Eigen/Core>

namespace skorokhod {

struct NnlsResult {
  Eigen::VectorXd coefficients;
  double residual_norm = 0.0;
};

/// min |A x - b| subject to x >= 0 (Lawson-Hanson active set). Meant for the
/// small systems that arise from normal-cone generators.
NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter = 0);

}  // namespace skorokhod
