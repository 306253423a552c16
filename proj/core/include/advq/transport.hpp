#pragma once

// Problem definitions: initial profiles, the 2D rotating-flow operator on a
// bit-interleaved grid, and the Problem bundle consumed by the solvers.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "advq/hamiltonian.hpp"
#include "advq/pauli.hpp"

namespace advq {

/// Square periodic box [-Lx/2, Lx/2) x [-Ly/2, Ly/2) with 2^N cells per axis.
/// Coordinates are cell centred, so the grid never touches the origin where
/// the rotational velocity field is singular.
struct Transport2DConfig {
  int qubits_per_axis = 4;
  double gamma = 0.01;
  double lx = 1.0;
  double ly = 1.0;

  int total_qubits() const { return 2 * qubits_per_axis; }
  std::int64_t cells_per_axis() const { return std::int64_t{1} << qubits_per_axis; }
  double dx() const { return lx / static_cast<double>(cells_per_axis()); }
  double dy() const { return ly / static_cast<double>(cells_per_axis()); }
  /// Unwrapped: i outside [0, 2^N) extrapolates past the box edge.
  double x(std::int64_t i) const { return -lx / 2 + (static_cast<double>(i) + 0.5) * dx(); }
  double y(std::int64_t j) const { return -ly / 2 + (static_cast<double>(j) + 0.5) * dy(); }
  void validate() const;
};

/// Row index i (x) and column index j (y) to the flat index whose bit pairs
/// read (b0 a0 b1 a1 ...), j's bit leading each pair.
std::uint64_t interleave(std::uint64_t i, std::uint64_t j, int qubits_per_axis);
/// Inverse of interleave: returns (i, j).
std::pair<std::uint64_t, std::uint64_t> deinterleave(std::uint64_t k,
                                                     int qubits_per_axis);

enum class StencilParts { all, advection, diffusion };

using RealSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Generator A of dC/dt = A C on the interleaved grid: second-order central
/// differences for the flux of U = (-y, x)/|r| and for Gamma * Laplacian.
/// Neighbour indices wrap periodically; the flux coefficients use the
/// unwrapped neighbour coordinates.
RealSparse operator_matrix_2d(const Transport2DConfig& cfg,
                              StencilParts parts = StencilParts::all);

inline constexpr int kMax2DQubitsPerAxis = 5;

struct TrapezoidGeometry {
  double start = 0.25;      ///< last zero before the rising ramp
  double top_start = 0.375; ///< ramp reaches the plateau
  double top_end = 0.625;   ///< plateau ends
  double end = 0.75;        ///< ramp returns to zero
};

/// Fractions of the box measured from its lower-left corner.
struct LShapeGeometry {
  double corner_x = 0.1875;
  double corner_y = 0.1875;
  double arm_length = 0.625;
  double thickness = 0.375;
};

struct InitialProfile {
  enum class Kind { trapezoid, l_shape, custom_samples };
  Kind kind = Kind::trapezoid;
  double height = 1.0;
  TrapezoidGeometry trapezoid;
  LShapeGeometry l_shape;
  std::vector<double> samples;
};

std::string to_string(InitialProfile::Kind kind);
InitialProfile::Kind profile_kind_from_string(const std::string& s);

/// Samples the profile on a grid with `qubits_per_axis` bits per axis.
/// 1D profiles use x_i = i / 2^N; 2D profiles are sampled at cell centres and
/// returned in interleaved order. Throws ConfigError on an all-zero result or
/// negative samples.
Eigen::VectorXd build_profile(const InitialProfile& profile, int qubits_per_axis,
                              int dims);

/// Samples divided by their 2-norm, loaded as amplitudes. Throws ConfigError
/// on a zero vector or a length that is not a power of two.
StateVector amplitude_embed(const Eigen::VectorXd& samples);

/// Everything a solver needs: the generator A (real), the raw initial
/// samples and the register size.
struct Problem {
  int dims = 1;
  int qubits = 0;
  RealSparse generator;
  Eigen::VectorXd initial;
  std::string label;

  std::size_t dim() const { return static_cast<std::size_t>(initial.size()); }
  StateVector initial_state() const { return amplitude_embed(initial); }
  /// H = -A as a complex sparse matrix.
  CSparse hamiltonian() const;
  /// H = H1 + i H2 with H1 = (H + H^dagger)/2 and H2 = (H - H^dagger)/(2i).
  std::pair<CSparse, CSparse> hermitian_split() const;
  Eigen::MatrixXd dense_generator() const { return Eigen::MatrixXd(generator); }
};

Problem make_problem_1d(const Transport1DConfig& cfg, const InitialProfile& profile);
Problem make_problem_2d(const Transport2DConfig& cfg, const InitialProfile& profile);

}  // namespace advq
