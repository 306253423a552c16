#include "advq/dns.hpp"

#include <cmath>
#include <map>

#include <unsupported/Eigen/MatrixFunctions>

#include "advq/errors.hpp"

namespace advq {

namespace {

void check_system(const Eigen::MatrixXd& a, const Eigen::VectorXd& c0) {
  if (a.rows() != a.cols() || a.rows() != c0.size()) {
    throw DimensionError("generator and initial vector shapes disagree");
  }
}

}  // namespace

Eigen::VectorXd evolve_expm(const Eigen::MatrixXd& a, const Eigen::VectorXd& c0,
                            double t) {
  check_system(a, c0);
  if (t < 0.0) throw ConfigError("evolution time must be non-negative");
  if (t == 0.0) return c0;
  const Eigen::MatrixXd prop = (a * t).exp();
  return prop * c0;
}

Eigen::VectorXd evolve_rk4(const Eigen::MatrixXd& a, const Eigen::VectorXd& c0,
                           double t, long substeps) {
  check_system(a, c0);
  if (substeps < 1) throw ConfigError("rk4 needs at least one substep");
  const double h = t / static_cast<double>(substeps);
  Eigen::VectorXd c = c0;
  Eigen::VectorXd k1, k2, k3, k4;
  for (long s = 0; s < substeps; ++s) {
    k1.noalias() = a * c;
    k2.noalias() = a * (c + 0.5 * h * k1);
    k3.noalias() = a * (c + 0.5 * h * k2);
    k4.noalias() = a * (c + h * k3);
    c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return c;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.qubits() != b.qubits()) throw DimensionError("fidelity dimension mismatch");
  return std::norm(a.inner(b));
}

std::vector<ReferencePoint> reference_series(const Eigen::MatrixXd& a,
                                             const Eigen::VectorXd& c0,
                                             const std::vector<double>& times) {
  check_system(a, c0);
  std::vector<ReferencePoint> out;
  out.reserve(times.size());
  std::map<double, Eigen::MatrixXd> propagators;
  Eigen::VectorXd c = c0;
  double t_prev = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    if (t < t_prev) throw ConfigError("reference times must be non-decreasing");
    const double delta = t - t_prev;
    if (delta > 0.0) {
      // Round the key so that uniform grids built by accumulation share one propagator.
      const double key = std::round(delta * 1e12) / 1e12;
      auto it = propagators.find(key);
      if (it == propagators.end()) {
        it = propagators.emplace(key, Eigen::MatrixXd((a * delta).exp())).first;
      }
      c = it->second * c;
    }
    t_prev = t;
    const double n = c.norm();
    if (n == 0.0) throw NumericalError("reference solution vanished");
    out.push_back({t, c / n, n});
  }
  return out;
}

std::vector<double> uniform_times(double dt, long steps) {
  std::vector<double> t(static_cast<std::size_t>(steps + 1));
  for (long k = 0; k <= steps; ++k) t[static_cast<std::size_t>(k)] = static_cast<double>(k) * dt;
  return t;
}

}  // namespace advq
