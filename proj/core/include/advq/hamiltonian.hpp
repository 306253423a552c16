#pragma once

// 1D periodic advection-diffusion operator, its Hamiltonian H = -A and the
// Pauli expansion of H through the cyclic shift operator.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "advq/pauli.hpp"

namespace advq {

/// Periodic unit interval resolved by 2^qubits cells, x_i = i * dx.
struct Transport1DConfig {
  int qubits = 4;
  double peclet = 32.0;

  double dx() const { return std::ldexp(1.0, -qubits); }
  std::size_t grid_size() const { return std::size_t{1} << qubits; }
  void validate() const;

  /// Stencil coefficients before the 1/(Pe dx) prefactor.
  double diag_coeff() const { return -2.0 / dx(); }
  double upper_coeff() const { return 1.0 / dx() - peclet / 2.0; }
  double lower_coeff() const { return 1.0 / dx() + peclet / 2.0; }
};

/// Cyclic left shift: ones on the superdiagonal and in the bottom-left corner.
Eigen::MatrixXd shift_matrix(int qubits);

/// The recursive annihilation/creation expansion of the shift, with
/// a = (X + iY)/2 and a^dagger = (X - iY)/2, fully multiplied out.
PauliSum shift_pauli(int qubits);

/// One summand of the shift expansion, kept separate for term counting.
struct ShiftComponent {
  std::string label;
  PauliSum terms;
};

/// Components of the shift (or its adjoint): I..I a, I..I a (a+)^j, X (a+)^(N-1).
std::vector<ShiftComponent> shift_components(int qubits, bool adjoint = false);

Eigen::MatrixXd operator_matrix_1d(const Transport1DConfig& cfg);

/// H = (1/Pe) [ 2/dx^2 I - (1/dx^2 - Pe/(2dx)) T - (1/dx^2 + Pe/(2dx)) T^dagger ]
PauliSum hamiltonian_1d(const Transport1DConfig& cfg);

/// 2^N + 2^(N-1) - 1
std::int64_t term_count_formula(int qubits);

struct TermCountRow {
  std::string label;
  std::size_t measured = 0;
  std::int64_t expected = 0;
};

/// Per-component Pauli-term counts next to the closed-form counts
/// (1, 2, 2^(j+1), 2^(N-1)), plus the total row.
std::vector<TermCountRow> term_count_table(const Transport1DConfig& cfg);

/// Hilbert-Schmidt projection c_P = Tr(P M) / 2^N for every Pauli string.
/// Coefficients below 1e-12 are dropped. Cost is O(8^N), so N <= 8.
PauliSum decompose_dense(const CMatrix& m, int qubits);

inline constexpr int kMaxDecomposeQubits = 8;

}  // namespace advq
