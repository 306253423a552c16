#pragma once

// McLachlan variational time evolution on parameterised circuits, with the
// hardware-efficient R_Y / CX ansatz and its initial-state fit.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "advq/pauli.hpp"
#include "advq/record.hpp"
#include "advq/resources.hpp"
#include "advq/transport.hpp"

namespace advq {

/// Gate of a parameterised circuit: either exp(-i scale theta_param P) or a CX.
struct CircuitGate {
  enum class Kind { rotation, cx };
  Kind kind = Kind::rotation;
  PauliString string;
  double scale = 1.0;
  int param = -1;
  int control = -1;
  int target = -1;
};

class ParametrizedCircuit {
 public:
  explicit ParametrizedCircuit(int qubits);

  /// Appends exp(-i scale theta P) with a fresh parameter; returns its index.
  int add_rotation(const PauliString& p, double scale = 1.0);
  void add_cx(int control, int target);

  int qubits() const noexcept { return qubits_; }
  std::size_t parameter_count() const noexcept { return params_; }
  const std::vector<CircuitGate>& gates() const noexcept { return gates_; }

  /// Resource-counting view. Single-qubit Y rotations at scale 1/2 become RY.
  std::vector<CircuitElement> elements() const;

 private:
  int qubits_;
  std::size_t params_ = 0;
  std::vector<CircuitGate> gates_;
};

void apply_cx_inplace(CVector& psi, int qubits, int control, int target);

/// Circuit applied to `initial`.
StateVector circuit_state(const ParametrizedCircuit& c, const Eigen::VectorXd& theta,
                          const StateVector& initial);

/// d|C>/d theta_j for every parameter, from one forward sweep that inserts
/// -i scale P after the parameter's gate. The final state goes to `state`
/// when non-null.
std::vector<CVector> circuit_derivatives(const ParametrizedCircuit& c,
                                         const Eigen::VectorXd& theta,
                                         const StateVector& initial,
                                         StateVector* state = nullptr);

/// L layers of [R_Y on every qubit, CX on even pairs then odd pairs] and a
/// closing R_Y layer. R_Y(theta) = exp(-i theta Y / 2). Parameter index of
/// layer l, qubit q is l * N + q.
struct HardwareEfficientAnsatz {
  int qubits = 4;
  int layers = 10;

  std::size_t parameter_count() const {
    return static_cast<std::size_t>(qubits) * static_cast<std::size_t>(layers + 1);
  }
  ParametrizedCircuit circuit() const;
  void validate() const;
};

StateVector ansatz_state(const HardwareEfficientAnsatz& a, const Eigen::VectorXd& theta);
std::vector<CVector> ansatz_derivatives(const HardwareEfficientAnsatz& a,
                                        const Eigen::VectorXd& theta);

struct McLachlanSystem {
  Eigen::MatrixXd a;
  Eigen::VectorXd r;
  double h1_mean = 0.0;
  double h2_mean = 0.0;
  /// ||(H1 - <H1>)C + i(H2 - <H2>)C||^2
  double variance = 0.0;
};

/// A_jk = Re[<d_j C|d_k C> + <d_j C|C><C|d_k C>],
/// R_j  = -Re[<d_j C|H|C> - <H><d_j C|C>] with H = H1 + i H2 and
/// <H> = <H1> + i <H2>. Throws NumericalError when H1 or H2 is not Hermitian
/// within 1e-10.
McLachlanSystem mclachlan_system(const std::vector<CVector>& derivs,
                                 const StateVector& state, const CSparse& h1,
                                 const CSparse& h2);

/// || sum_j thetadot_j d_j C + (H1 - <H1>)C + i(H2 - <H2>)C ||
double mclachlan_distance(const StateVector& state, const std::vector<CVector>& derivs,
                          const Eigen::VectorXd& theta_dot, const CSparse& h1,
                          const CSparse& h2);

/// thetadot^T A thetadot - 2 thetadot^T R + variance, clamped at zero.
double mclachlan_distance_squared(const McLachlanSystem& sys,
                                  const Eigen::VectorXd& theta_dot);

struct FitConfig {
  int restarts = 32;
  double tol = 1e-10;
  double accept = 1e-8;
  std::uint64_t seed = 0;
};

struct FitResult {
  Eigen::VectorXd theta;
  double infidelity = 1.0;
  int starts_used = 0;
};

/// Levenberg-Marquardt on r = psi - (t.psi) t, whose squared norm is the
/// infidelity for real states. Start 0 is theta = 0; later starts are uniform
/// in [-pi, pi) from a generator seeded with cfg.seed. Throws FitFailure when
/// the best infidelity exceeds cfg.accept.
FitResult fit_initial(const HardwareEfficientAnsatz& a, const StateVector& target,
                      const FitConfig& cfg = {});

/// theta + dt * lstsq(A, R). The solve residual goes to `residual` when non-null.
Eigen::VectorXd varqte_step(const Eigen::VectorXd& theta, const McLachlanSystem& sys,
                            double dt, double rel_cutoff = 1e-8,
                            double* residual = nullptr);

enum class Integrator { euler, rk4 };

struct VarqteConfig {
  int layers = 10;
  FitConfig fit;
  double rel_cutoff = 1e-8;
  Integrator integrator = Integrator::euler;
};

RunRecord varqte_run(const Problem& problem, const VarqteConfig& cfg, double dt,
                     double total_time, const RowObserver& observer = {});

}  // namespace advq
