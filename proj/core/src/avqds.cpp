#include "advq/avqds.hpp"

#include <cmath>
#include <set>
#include <string>

#include "advq/errors.hpp"
#include "advq/linalg.hpp"
#include "run_support.hpp"

namespace advq {

namespace {

// Complex vectors as real vectors, so that the dot product is Re<a|b>.
Eigen::VectorXd realify(const CVector& v) {
  Eigen::VectorXd out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

// Left singular vectors of the realified derivative matrix whose squared
// singular values survive the relative cutoff, matching the truncated solve.
// `largest` receives the largest squared singular value (zero when empty).
Eigen::MatrixXd retained_span(const std::vector<CVector>& derivs, Eigen::Index rows,
                              double rel_cutoff, double& largest) {
  largest = 0.0;
  const auto n = static_cast<Eigen::Index>(derivs.size());
  Eigen::MatrixXd d(rows, n);
  for (Eigen::Index j = 0; j < n; ++j) d.col(j) = realify(derivs[static_cast<std::size_t>(j)]);
  if (n == 0) return d;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(d.transpose() * d);
  const auto& vals = eig.eigenvalues();
  largest = vals.cwiseAbs().maxCoeff();
  const double cut = rel_cutoff * largest;
  Eigen::MatrixXd u(rows, n);
  Eigen::Index kept = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (vals[k] <= cut || vals[k] <= 0.0) continue;
    u.col(kept++) = d * eig.eigenvectors().col(k) / std::sqrt(vals[k]);
  }
  return u.leftCols(kept);
}

CVector centred_action(const StateVector& state, const CSparse& h1, const CSparse& h2) {
  const CVector& c = state.amplitudes();
  const CVector h1c = h1 * c;
  const CVector h2c = h2 * c;
  const double m1 = c.dot(h1c).real();
  const double m2 = c.dot(h2c).real();
  return (h1c - m1 * c) + kI * (h2c - m2 * c);
}

constexpr double kStagnationTolerance = 1e-12;

}  // namespace

OperatorPool pool_generate(int qubits, int max_weight, Connectivity connectivity) {
  if (qubits < 1) throw ConfigError("pool needs at least one qubit");
  if (max_weight < 1 || max_weight > qubits) {
    throw ConfigError("pool weight must lie in [1, " + std::to_string(qubits) + "]");
  }
  OperatorPool pool;
  pool.max_weight = max_weight;
  pool.connectivity = connectivity;
  pool.candidates = enumerate_strings(qubits, [&](const PauliString& p) {
    const int w = p.weight();
    if (w == 0 || w > max_weight || y_parity(p) != Parity::odd) return false;
    if (connectivity == Connectivity::linear_chain) {
      const auto sup = p.support();
      return sup.back() - sup.front() + 1 == w;
    }
    return true;
  });
  return pool;
}

ParametrizedCircuit AdaptiveAnsatz::circuit(int qubits) const {
  ParametrizedCircuit c(qubits);
  for (const auto& g : generators) c.add_rotation(g, 1.0);
  return c;
}

Eigen::VectorXd AdaptiveAnsatz::parameters() const {
  return Eigen::Map<const Eigen::VectorXd>(theta.data(),
                                           static_cast<Eigen::Index>(theta.size()));
}

void AdaptiveAnsatz::validate(int qubits) const {
  if (generators.size() != theta.size()) {
    throw DimensionError("generator and parameter counts differ");
  }
  for (const auto& g : generators) {
    if (g.size() != qubits) throw DimensionError("generator length mismatch");
    if (y_parity(g) != Parity::odd) {
      throw ConfigError("generator " + g.str() + " has even Y-parity");
    }
  }
}

DistanceSolve solve_distance(const AdaptiveAnsatz& ansatz, const AdaptContext& ctx,
                             double rel_cutoff) {
  const int qubits = ctx.initial.qubits();
  ansatz.validate(qubits);
  const ParametrizedCircuit circuit = ansatz.circuit(qubits);
  DistanceSolve out;
  out.derivs = circuit_derivatives(circuit, ansatz.parameters(), ctx.initial, &out.state);
  const McLachlanSystem sys = mclachlan_system(out.derivs, out.state, ctx.h1, ctx.h2);
  const LstsqResult sol = truncated_lstsq_symmetric(sys.a, sys.r, rel_cutoff);
  out.theta_dot = sol.x;
  out.residual = sol.residual;
  out.distance = mclachlan_distance(out.state, out.derivs, sol.x, ctx.h1, ctx.h2);
  return out;
}

CandidateScores score_candidates(const DistanceSolve& current,
                                     const OperatorPool& pool, const AdaptContext& ctx,
                                     double rel_cutoff) {
  const auto rows = 2 * static_cast<Eigen::Index>(current.state.dim());
  double largest = 0.0;
  const Eigen::MatrixXd q = retained_span(current.derivs, rows, rel_cutoff, largest);
  Eigen::VectorXd r = realify(centred_action(current.state, ctx.h1, ctx.h2));
  r -= q * (q.transpose() * r);
  const double base = r.squaredNorm();

  CandidateScores out;
  out.current = std::sqrt(base);
  auto& scores = out.distances;
  scores.assign(pool.size(), out.current);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    CVector gc = current.state.amplitudes();
    apply_string_inplace(gc, pool.candidates[i]);
    Eigen::VectorXd g = realify(-kI * gc);
    const double original = g.squaredNorm();
    g -= q * (q.transpose() * g);
    const double gn = g.squaredNorm();
    // A direction this weak would be truncated by the next solve.
    if (gn <= rel_cutoff * std::max(largest, original)) continue;
    const double proj = g.dot(r);
    scores[i] = std::sqrt(std::max(0.0, base - proj * proj / gn));
  }
  return out;
}

AdaptResult adapt(AdaptiveAnsatz& ansatz, const OperatorPool& pool,
                  const AdaptContext& ctx, const AvqdsConfig& cfg,
                  DistanceSolve current) {
  if (pool.candidates.empty()) throw ConfigError("operator pool is empty");
  AdaptResult out;
  while (current.distance >= cfg.d_max &&
         static_cast<int>(out.additions.size()) < cfg.max_adds_per_step) {
    const auto scored = score_candidates(current, pool, ctx, cfg.rel_cutoff);
    const auto& scores = scored.distances;
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
      if (scores[i] < scores[best]) best = i;
    }
    if (!(scored.current - scores[best] > kStagnationTolerance)) {
      throw StagnationError("no pool operator lowers the McLachlan distance " +
                                std::to_string(current.distance),
                            current.distance);
    }
    ansatz.generators.push_back(pool.candidates[best]);
    ansatz.theta.push_back(0.0);
    out.additions.push_back(pool.candidates[best]);
    current = solve_distance(ansatz, ctx, cfg.rel_cutoff);
  }
  out.solve = std::move(current);
  return out;
}

RunRecord avqds_run(const Problem& problem, const OperatorPool& pool,
                    const AvqdsConfig& cfg, double dt, double total_time,
                    const RowObserver& observer) {
  if (!(cfg.d_max > 0.0)) throw ConfigError("d_max must be positive");
  if (cfg.max_adds_per_step < 1) throw ConfigError("max_adds_per_step must be positive");
  if (pool.candidates.empty()) throw ConfigError("operator pool is empty");
  std::set<PauliString> seen;
  for (const auto& p : pool.candidates) {
    if (p.size() != problem.qubits) throw DimensionError("pool string length mismatch");
    if (p.is_identity() || y_parity(p) != Parity::odd || !seen.insert(p).second) {
      throw ConfigError("pool entry " + p.str() + " is not a distinct odd-Y string");
    }
  }
  const long steps = step_count(dt, total_time);
  const auto ref = detail::reference_for(problem, dt, steps);
  const auto [h1, h2] = problem.hermitian_split();
  const StateVector initial = problem.initial_state();
  const AdaptContext ctx{initial, h1, h2};

  RunRecord rec;
  rec.method = Method::avqds;
  rec.qubits = problem.qubits;
  const auto emit = [&](RunRow row) {
    if (observer) observer(row);
    rec.rows.push_back(std::move(row));
  };
  RunRow first;
  first.infidelity = detail::infidelity_against(ref[0], initial.amplitudes());
  emit(first);

  AdaptiveAnsatz ansatz;
  double max_distance = 0.0;
  long additions = 0;
  long stagnated = 0;
  for (long k = 1; k <= steps; ++k) {
    DistanceSolve solve = solve_distance(ansatz, ctx, cfg.rel_cutoff);
    std::vector<PauliString> added;
    if (solve.distance >= cfg.d_max) {
      const std::size_t before = ansatz.size();
      try {
        AdaptResult res = adapt(ansatz, pool, ctx, cfg, std::move(solve));
        added = std::move(res.additions);
        solve = std::move(res.solve);
      } catch (const StagnationError& e) {
        if (cfg.raise_on_stagnation) {
          throw StagnationError("step " + std::to_string(k) + ": " + e.what(),
                                e.distance());
        }
        ++stagnated;
        added.assign(ansatz.generators.begin() + static_cast<std::ptrdiff_t>(before),
                     ansatz.generators.end());
        solve = solve_distance(ansatz, ctx, cfg.rel_cutoff);
      }
    }
    for (std::size_t j = 0; j < ansatz.theta.size(); ++j) {
      ansatz.theta[j] += dt * solve.theta_dot[static_cast<Eigen::Index>(j)];
    }
    const StateVector state =
        circuit_state(ansatz.circuit(problem.qubits), ansatz.parameters(), initial);
    RunRow row;
    row.step = k;
    row.t = ref[static_cast<std::size_t>(k)].t;
    row.infidelity =
        detail::infidelity_against(ref[static_cast<std::size_t>(k)], state.amplitudes());
    row.distance = solve.distance;
    row.n_params = static_cast<long>(ansatz.size());
    row.residual = solve.residual;
    for (const auto& g : added) row.added_ops.push_back(g.str());
    max_distance = std::max(max_distance, solve.distance);
    additions += static_cast<long>(added.size());
    emit(row);
  }
  for (const auto& g : ansatz.generators) rec.trace.push_back(CircuitElement::rotation(g));
  rec.final_parameters = ansatz.theta;
  rec.summary["pool_size"] = static_cast<double>(pool.size());
  rec.summary["max_weight"] = pool.max_weight;
  rec.summary["d_max"] = cfg.d_max;
  rec.summary["max_distance"] = max_distance;
  rec.summary["additions"] = static_cast<double>(additions);
  rec.summary["stagnated_steps"] = static_cast<double>(stagnated);
  return rec;
}

}  // namespace advq
