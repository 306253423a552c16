#pragma once

#include <Eigen/Dense>

namespace advq {

struct LstsqResult {
  Eigen::VectorXd x;
  double residual = 0.0;  ///< ||M x - rhs||
  int rank = 0;
};

/// Minimum-norm least squares for a symmetric positive semidefinite M.
/// Eigenvalues below `rel_cutoff * max|eigenvalue|` are discarded, which for
/// a PSD matrix is exactly a truncated SVD.
LstsqResult truncated_lstsq_symmetric(const Eigen::MatrixXd& m,
                                      const Eigen::VectorXd& rhs,
                                      double rel_cutoff);

}  // namespace advq
