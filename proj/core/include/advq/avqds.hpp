#pragma once

// Adaptive variational quantum dynamics: a product ansatz of Pauli rotations
// on the embedded initial state, grown greedily from an odd-Y operator pool
// whenever the McLachlan distance exceeds a threshold.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "advq/pauli.hpp"
#include "advq/record.hpp"
#include "advq/resources.hpp"
#include "advq/transport.hpp"
#include "advq/varqte.hpp"

namespace advq {

struct OperatorPool {
  std::vector<PauliString> candidates;
  int max_weight = 0;
  Connectivity connectivity = Connectivity::all_to_all;

  std::size_t size() const { return candidates.size(); }
};

/// Odd-Y strings of weight <= w in lexicographic order. Under linear-chain
/// connectivity only strings with contiguous support are kept.
OperatorPool pool_generate(int qubits, int max_weight,
                           Connectivity connectivity = Connectivity::all_to_all);

/// |C(theta)> = prod_j exp(-i theta_j A_j) |C0>, the newest generator applied last.
struct AdaptiveAnsatz {
  std::vector<PauliString> generators;
  std::vector<double> theta;

  std::size_t size() const { return generators.size(); }
  ParametrizedCircuit circuit(int qubits) const;
  Eigen::VectorXd parameters() const;
  void validate(int qubits) const;
};

struct AvqdsConfig {
  double d_max = 1e-4;
  int max_adds_per_step = 10;
  double rel_cutoff = 1e-4;
  /// When false, a stagnating adaptation keeps the current ansatz for the step
  /// and the run continues instead of raising StagnationError.
  bool raise_on_stagnation = true;
};

/// Everything adapt needs about the current point of the trajectory.
struct AdaptContext {
  const StateVector& initial;
  const CSparse& h1;
  const CSparse& h2;
};

/// Outcome of solving the McLachlan system over the current generators.
struct DistanceSolve {
  StateVector state;
  std::vector<CVector> derivs;
  Eigen::VectorXd theta_dot;
  double distance = 0.0;
  double residual = 0.0;
};

DistanceSolve solve_distance(const AdaptiveAnsatz& ansatz, const AdaptContext& ctx,
                             double rel_cutoff);

struct AdaptResult {
  std::vector<PauliString> additions;
  DistanceSolve solve;  ///< system over the grown ansatz
};

/// Greedy growth. Each round scores every candidate by the distance reached
/// when its derivative -i g|C> joins the span of the current derivatives,
/// appends the best with theta = 0 (lowest pool index on ties) and re-solves.
/// Stops once the distance drops below d_max or after max_adds_per_step
/// additions. Throws StagnationError when no candidate lowers the distance by
/// more than 1e-12.
AdaptResult adapt(AdaptiveAnsatz& ansatz, const OperatorPool& pool,
                  const AdaptContext& ctx, const AvqdsConfig& cfg,
                  DistanceSolve current);

struct CandidateScores {
  double current = 0.0;           ///< least-squares distance over the current span
  std::vector<double> distances;  ///< one per pool candidate
};

/// Distance each candidate would reach if appended alone to the current ansatz,
/// by projecting its derivative -i g|C> out of the span kept by the truncated
/// solve. Candidates whose new direction would itself be truncated score the
/// current distance.
CandidateScores score_candidates(const DistanceSolve& current, const OperatorPool& pool,
                                 const AdaptContext& ctx, double rel_cutoff);

RunRecord avqds_run(const Problem& problem, const OperatorPool& pool,
                    const AvqdsConfig& cfg, double dt, double total_time,
                    const RowObserver& observer = {});

}  // namespace advq
