#include "advq/qite.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "advq/errors.hpp"
#include "advq/linalg.hpp"
#include "run_support.hpp"

namespace advq {

namespace {

bool fits_window(const PauliString& p, int domain) {
  const auto sup = p.support();
  return !sup.empty() && sup.back() - sup.front() + 1 <= domain;
}

void check_state(const StateVector& psi, const QitePool& pool) {
  if (pool.strings.empty()) throw ConfigError("QITE pool is empty");
  if (pool.strings.front().size() != psi.qubits()) {
    throw DimensionError("QITE pool and state sizes disagree");
  }
}

}  // namespace

QitePool QitePool::full(int qubits) { return with_domain(qubits, qubits); }

QitePool QitePool::with_domain(int qubits, int domain) {
  if (qubits < 1) throw ConfigError("QITE pool needs at least one qubit");
  if (domain < 1 || domain > qubits) {
    throw ConfigError("QITE domain must lie in [1, " + std::to_string(qubits) + "]");
  }
  QitePool pool;
  pool.domain = domain;
  pool.strings = enumerate_strings(qubits, [domain](const PauliString& p) {
    return y_parity(p) == Parity::odd && fits_window(p, domain);
  });
  return pool;
}

void QitePool::validate(int qubits) const {
  if (strings.empty()) throw ConfigError("QITE pool is empty");
  std::set<PauliString> seen;
  for (const auto& p : strings) {
    if (p.size() != qubits) throw DimensionError("QITE pool string length mismatch");
    if (p.is_identity()) throw ConfigError("QITE pool contains the identity");
    if (y_parity(p) != Parity::odd) {
      throw ConfigError("QITE pool string " + p.str() + " has even Y-parity");
    }
    if (!seen.insert(p).second) throw ConfigError("duplicate QITE pool string " + p.str());
  }
}

Eigen::MatrixXd build_s(const StateVector& psi, const QitePool& pool) {
  check_state(psi, pool);
  const auto m = static_cast<Eigen::Index>(pool.size());
  Eigen::MatrixXd s(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    s(j, j) = 1.0;
    for (Eigen::Index l = j + 1; l < m; ++l) {
      const auto [phase, prod] = multiply(pool.strings[static_cast<std::size_t>(j)],
                                          pool.strings[static_cast<std::size_t>(l)]);
      s(j, l) = s(l, j) = (phase * expectation(psi, prod)).real();
    }
  }
  return s;
}

Eigen::VectorXd build_b(const StateVector& psi, const QitePool& pool, const CSparse& h,
                        double dt, bool exact_norm, double* radicand) {
  check_state(psi, pool);
  if (h.rows() != static_cast<Eigen::Index>(psi.dim()) || h.cols() != h.rows()) {
    throw DimensionError("Hamiltonian and state sizes disagree");
  }
  if (dt < 0.0) throw ConfigError("time step must be non-negative");
  const CVector& c = psi.amplitudes();
  const CVector hc = h * c;
  double rad = 0.0;
  if (exact_norm) {
    const CMatrix sym = CMatrix(h) + CMatrix(h.adjoint());
    const CMatrix prop = (-dt * sym).exp();
    rad = c.dot(prop * c).real();
  } else {
    rad = 1.0 - 2.0 * dt * c.dot(hc).real();
  }
  if (radicand) *radicand = rad;
  if (!(rad > 0.0)) {
    throw StepSizeError("QITE normalisation radicand " + std::to_string(rad) +
                        " is not positive; reduce dt");
  }
  const double scale = 1.0 / std::sqrt(rad);
  Eigen::VectorXd b(static_cast<Eigen::Index>(pool.size()));
  for (std::size_t j = 0; j < pool.size(); ++j) {
    const StateVector uc = apply_string(psi, pool.strings[j]);
    const Complex v = -kI * uc.amplitudes().dot(hc) * scale;
    if (std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v))) {
      throw NumericalError("QITE b vector has an imaginary residue " +
                           std::to_string(v.imag()) + " for " + pool.strings[j].str());
    }
    b[static_cast<Eigen::Index>(j)] = v.real();
  }
  return b;
}

Eigen::VectorXd build_b(const StateVector& psi, const QitePool& pool, const PauliSum& h,
                        double dt, bool exact_norm, double* radicand) {
  return build_b(psi, pool, to_sparse(h, psi.qubits()), dt, exact_norm, radicand);
}

std::pair<StateVector, QiteStepRecord> qite_step(const StateVector& psi,
                                                 const QitePool& pool, const CSparse& h,
                                                 double dt, const QiteSolveConfig& cfg) {
  QiteStepRecord rec;
  if (dt == 0.0) {
    check_state(psi, pool);
    rec.coefficients.assign(pool.size(), 0.0);
    return {psi, rec};
  }
  double rad = 0.0;
  const Eigen::VectorXd b = build_b(psi, pool, h, dt, cfg.exact_norm, &rad);
  const Eigen::MatrixXd s = build_s(psi, pool);
  const LstsqResult sol = truncated_lstsq_symmetric(s, b, cfg.rel_cutoff);
  rec.coefficients.assign(sol.x.data(), sol.x.data() + sol.x.size());
  rec.norm_factor = std::sqrt(rad);
  rec.residual = sol.residual;
  rec.rank = sol.rank;
  StateVector out = psi;
  for (std::size_t j = 0; j < pool.size(); ++j) {
    const double angle = rec.coefficients[j] * dt;
    if (angle != 0.0) apply_rotation_inplace(out.amplitudes(), pool.strings[j], angle);
  }
  out.normalize();
  return {out, rec};
}

RunRecord qite_run(const Problem& problem, const QitePool& pool, double dt,
                   double total_time, const QiteSolveConfig& cfg,
                   const RowObserver& observer) {
  pool.validate(problem.qubits);
  const long steps = step_count(dt, total_time);
  const auto ref = detail::reference_for(problem, dt, steps);
  const CSparse h = problem.hamiltonian();

  RunRecord rec;
  rec.method = Method::qite;
  rec.qubits = problem.qubits;
  StateVector psi = problem.initial_state();
  double cum = 1.0;

  const auto emit = [&](RunRow row) {
    if (observer) observer(row);
    rec.rows.push_back(std::move(row));
  };
  RunRow first;
  first.infidelity = detail::infidelity_against(ref[0], psi.amplitudes());
  first.norm = 1.0;
  first.cum_norm = 1.0;
  first.n_params = static_cast<long>(pool.size());
  emit(first);

  for (long k = 1; k <= steps; ++k) {
    std::pair<StateVector, QiteStepRecord> next;
    try {
      next = qite_step(psi, pool, h, dt, cfg);
    } catch (const StepSizeError& e) {
      throw StepSizeError("step " + std::to_string(k) + ": " + e.what());
    }
    psi = std::move(next.first);
    const auto& step = next.second;
    cum *= step.norm_factor;
    double a_max = 0.0;
    for (std::size_t j = 0; j < step.coefficients.size(); ++j) {
      a_max = std::max(a_max, std::abs(step.coefficients[j]));
      if (std::abs(step.coefficients[j] * dt) > kQiteTraceAngle) {
        rec.trace.push_back(CircuitElement::rotation(pool.strings[j]));
      }
    }
    RunRow row;
    row.step = k;
    row.t = ref[static_cast<std::size_t>(k)].t;
    row.infidelity = detail::infidelity_against(ref[static_cast<std::size_t>(k)],
                                                psi.amplitudes());
    row.norm = step.norm_factor;
    row.cum_norm = cum;
    row.n_params = static_cast<long>(pool.size());
    row.a_max = a_max;
    row.residual = step.residual;
    emit(row);
  }
  rec.summary["pool_size"] = static_cast<double>(pool.size());
  rec.summary["dns_norm_ratio"] = ref.back().norm / problem.initial.norm();
  rec.summary["final_cum_norm"] = cum;
  rec.summary["max_imag"] = psi.max_imag();
  return rec;
}

}  // namespace advq
