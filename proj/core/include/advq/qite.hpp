#pragma once

// Trotterized quantum imaginary time evolution: each step replaces the
// normalised non-unitary update by a product of Pauli rotations whose rates
// solve S a = b.

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "advq/pauli.hpp"
#include "advq/record.hpp"
#include "advq/transport.hpp"

namespace advq {

struct QitePool {
  std::vector<PauliString> strings;
  int domain = 0;  ///< width of the contiguous window each string fits in

  /// Every odd-Y string on `qubits` qubits, lexicographic.
  static QitePool full(int qubits);
  /// Odd-Y strings whose support fits inside `domain` consecutive qubits.
  static QitePool with_domain(int qubits, int domain);

  std::size_t size() const { return strings.size(); }
  /// Non-empty, odd Y-parity, no identity, no duplicates, matching length.
  void validate(int qubits) const;
};

struct QiteSolveConfig {
  double rel_cutoff = 1e-8;
  /// Use <C|exp(-(H + H^dagger) dt)|C> instead of its first-order expansion.
  bool exact_norm = false;
};

struct QiteStepRecord {
  std::vector<double> coefficients;  ///< a_j, rates multiplying dt
  double norm_factor = 1.0;          ///< c_k
  double residual = 0.0;
  int rank = 0;
};

/// S_jl = Re <psi| u_j^dagger u_l |psi>.
Eigen::MatrixXd build_s(const StateVector& psi, const QitePool& pool);

/// b_j = Re[-i <psi| u_j^dagger H |psi>] / sqrt(radicand). The radicand is
/// written to `radicand` when non-null. Throws StepSizeError when it is not
/// positive and NumericalError when the imaginary residue exceeds 1e-8.
Eigen::VectorXd build_b(const StateVector& psi, const QitePool& pool, const CSparse& h,
                        double dt, bool exact_norm = false, double* radicand = nullptr);
Eigen::VectorXd build_b(const StateVector& psi, const QitePool& pool, const PauliSum& h,
                        double dt, bool exact_norm = false, double* radicand = nullptr);

/// Solves S a = b, applies exp(-i a_j u_j dt) in pool order.
std::pair<StateVector, QiteStepRecord> qite_step(const StateVector& psi,
                                                 const QitePool& pool, const CSparse& h,
                                                 double dt, const QiteSolveConfig& cfg = {});

/// Rotations with |a_j dt| at or below this are left out of the circuit trace.
inline constexpr double kQiteTraceAngle = 1e-12;

RunRecord qite_run(const Problem& problem, const QitePool& pool, double dt,
                   double total_time, const QiteSolveConfig& cfg = {},
                   const RowObserver& observer = {});

}  // namespace advq
