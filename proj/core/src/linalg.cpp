#include "advq/linalg.hpp"

#include <cmath>

#include "advq/errors.hpp"

namespace advq {

LstsqResult truncated_lstsq_symmetric(const Eigen::MatrixXd& m,
                                      const Eigen::VectorXd& rhs,
                                      double rel_cutoff) {
  if (m.rows() != m.cols() || m.rows() != rhs.size()) {
    throw DimensionError("least-squares system shape mismatch");
  }
  LstsqResult out;
  out.x = Eigen::VectorXd::Zero(m.rows());
  if (m.rows() == 0) {
    out.residual = 0.0;
    return out;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const auto& vals = eig.eigenvalues();
  const auto& vecs = eig.eigenvectors();
  const double scale = vals.cwiseAbs().maxCoeff();
  const double cut = rel_cutoff * scale;
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    if (scale == 0.0 || std::abs(vals[k]) <= cut) continue;
    out.x += vecs.col(k) * (vecs.col(k).dot(rhs) / vals[k]);
    ++out.rank;
  }
  out.residual = (m * out.x - rhs).norm();
  return out;
}

}  // namespace advq
