#pragma once

// Classical reference integration of dC/dt = A C.

#include <vector>

#include <Eigen/Dense>

#include "advq/pauli.hpp"

namespace advq {

/// e^{A t} c0 by scaling-and-squaring Pade.
Eigen::VectorXd evolve_expm(const Eigen::MatrixXd& a, const Eigen::VectorXd& c0,
                            double t);

/// Classic fourth-order Runge-Kutta with `substeps` equal steps.
Eigen::VectorXd evolve_rk4(const Eigen::MatrixXd& a, const Eigen::VectorXd& c0,
                           double t, long substeps);

/// |<a|b>|^2 for normalised states.
double fidelity(const StateVector& a, const StateVector& b);

struct ReferencePoint {
  double t = 0.0;
  Eigen::VectorXd state;  ///< e^{At} c0 / ||e^{At} c0||
  double norm = 0.0;      ///< ||e^{At} c0||
};

/// Normalised exact solution at each of the (non-decreasing) times. Equal
/// time increments reuse one propagator.
std::vector<ReferencePoint> reference_series(const Eigen::MatrixXd& a,
                                             const Eigen::VectorXd& c0,
                                             const std::vector<double>& times);

/// Times 0, dt, ..., steps*dt.
std::vector<double> uniform_times(double dt, long steps);

}  // namespace advq
