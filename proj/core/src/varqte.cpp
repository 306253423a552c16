#include "advq/varqte.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <unsupported/Eigen/LevenbergMarquardt>

#include "advq/errors.hpp"
#include "advq/linalg.hpp"
#include "run_support.hpp"

namespace advq {

namespace {

void check_theta(std::size_t expected, const Eigen::VectorXd& theta) {
  if (static_cast<std::size_t>(theta.size()) != expected) {
    throw DimensionError("expected " + std::to_string(expected) + " parameters, got " +
                         std::to_string(theta.size()));
  }
}

void check_hermitian(const CSparse& m, const char* name) {
  const double skew = CSparse(m - CSparse(m.adjoint())).norm();
  if (skew > 1e-10) {
    throw NumericalError(std::string(name) + " is not Hermitian (skew norm " +
                         std::to_string(skew) + ")");
  }
}

PauliString single(int qubits, int q, Pauli p) {
  PauliString s(qubits);
  s.set(q, p);
  return s;
}

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ParametrizedCircuit::ParametrizedCircuit(int qubits) : qubits_(qubits) {
  if (qubits < 1) throw ConfigError("circuit needs at least one qubit");
}

int ParametrizedCircuit::add_rotation(const PauliString& p, double scale) {
  if (p.size() != qubits_) throw DimensionError("rotation string length mismatch");
  if (p.is_identity()) throw ConfigError("identity rotation has no effect");
  CircuitGate g;
  g.kind = CircuitGate::Kind::rotation;
  g.string = p;
  g.scale = scale;
  g.param = static_cast<int>(params_++);
  gates_.push_back(g);
  return g.param;
}

void ParametrizedCircuit::add_cx(int control, int target) {
  if (control < 0 || control >= qubits_ || target < 0 || target >= qubits_ ||
      control == target) {
    throw DimensionError("invalid CX qubits");
  }
  CircuitGate g;
  g.kind = CircuitGate::Kind::cx;
  g.control = control;
  g.target = target;
  gates_.push_back(g);
}

std::vector<CircuitElement> ParametrizedCircuit::elements() const {
  std::vector<CircuitElement> out;
  out.reserve(gates_.size());
  for (const auto& g : gates_) {
    if (g.kind == CircuitGate::Kind::cx) {
      out.push_back(CircuitElement::cx(g.control, g.target));
    } else if (g.scale == 0.5 && g.string.weight() == 1 && g.string.y_count() == 1) {
      out.push_back(CircuitElement::ry(g.string.support().front()));
    } else {
      out.push_back(CircuitElement::rotation(g.string));
    }
  }
  return out;
}

void apply_cx_inplace(CVector& psi, int qubits, int control, int target) {
  const std::uint64_t cb = std::uint64_t{1} << (qubits - 1 - control);
  const std::uint64_t tb = std::uint64_t{1} << (qubits - 1 - target);
  const auto n = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t i = 0; i < n; ++i) {
    if ((i & cb) && !(i & tb)) {
      std::swap(psi[static_cast<Eigen::Index>(i)],
                psi[static_cast<Eigen::Index>(i | tb)]);
    }
  }
}

StateVector circuit_state(const ParametrizedCircuit& c, const Eigen::VectorXd& theta,
                          const StateVector& initial) {
  check_theta(c.parameter_count(), theta);
  if (initial.qubits() != c.qubits()) throw DimensionError("initial state size mismatch");
  StateVector psi = initial;
  for (const auto& g : c.gates()) {
    if (g.kind == CircuitGate::Kind::cx) {
      apply_cx_inplace(psi.amplitudes(), c.qubits(), g.control, g.target);
    } else {
      apply_rotation_inplace(psi.amplitudes(), g.string, g.scale * theta[g.param]);
    }
  }
  return psi;
}

std::vector<CVector> circuit_derivatives(const ParametrizedCircuit& c,
                                         const Eigen::VectorXd& theta,
                                         const StateVector& initial, StateVector* state) {
  check_theta(c.parameter_count(), theta);
  if (initial.qubits() != c.qubits()) throw DimensionError("initial state size mismatch");
  CVector psi = initial.amplitudes();
  std::vector<CVector> derivs(c.parameter_count());
  std::vector<int> live;
  live.reserve(c.parameter_count());
  for (const auto& g : c.gates()) {
    if (g.kind == CircuitGate::Kind::cx) {
      apply_cx_inplace(psi, c.qubits(), g.control, g.target);
      for (int j : live) apply_cx_inplace(derivs[j], c.qubits(), g.control, g.target);
      continue;
    }
    const double angle = g.scale * theta[g.param];
    apply_rotation_inplace(psi, g.string, angle);
    for (int j : live) apply_rotation_inplace(derivs[j], g.string, angle);
    CVector d = psi;
    apply_string_inplace(d, g.string);
    d *= Complex{0.0, -g.scale};
    derivs[static_cast<std::size_t>(g.param)] = std::move(d);
    live.push_back(g.param);
  }
  if (state) *state = StateVector(c.qubits(), psi);
  return derivs;
}

void HardwareEfficientAnsatz::validate() const {
  if (qubits < 1) throw ConfigError("ansatz needs at least one qubit");
  if (layers < 0) throw ConfigError("ansatz layer count must be non-negative");
}

ParametrizedCircuit HardwareEfficientAnsatz::circuit() const {
  validate();
  ParametrizedCircuit c(qubits);
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < qubits; ++q) c.add_rotation(single(qubits, q, Pauli::Y), 0.5);
    for (int q = 0; q + 1 < qubits; q += 2) c.add_cx(q, q + 1);
    for (int q = 1; q + 1 < qubits; q += 2) c.add_cx(q, q + 1);
  }
  for (int q = 0; q < qubits; ++q) c.add_rotation(single(qubits, q, Pauli::Y), 0.5);
  return c;
}

StateVector ansatz_state(const HardwareEfficientAnsatz& a, const Eigen::VectorXd& theta) {
  return circuit_state(a.circuit(), theta, StateVector(a.qubits));
}

std::vector<CVector> ansatz_derivatives(const HardwareEfficientAnsatz& a,
                                        const Eigen::VectorXd& theta) {
  return circuit_derivatives(a.circuit(), theta, StateVector(a.qubits));
}

McLachlanSystem mclachlan_system(const std::vector<CVector>& derivs,
                                 const StateVector& state, const CSparse& h1,
                                 const CSparse& h2) {
  const auto dim = static_cast<Eigen::Index>(state.dim());
  if (h1.rows() != dim || h1.cols() != dim || h2.rows() != dim || h2.cols() != dim) {
    throw DimensionError("Hamiltonian parts and state sizes disagree");
  }
  check_hermitian(h1, "H1");
  check_hermitian(h2, "H2");
  const CVector& c = state.amplitudes();
  const CVector h1c = h1 * c;
  const CVector h2c = h2 * c;
  McLachlanSystem sys;
  sys.h1_mean = c.dot(h1c).real();
  sys.h2_mean = c.dot(h2c).real();
  const CVector v = (h1c - sys.h1_mean * c) + kI * (h2c - sys.h2_mean * c);
  sys.variance = v.squaredNorm();

  const auto n = static_cast<Eigen::Index>(derivs.size());
  CMatrix d(dim, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (derivs[static_cast<std::size_t>(j)].size() != dim) {
      throw DimensionError("derivative state length mismatch");
    }
    d.col(j) = derivs[static_cast<std::size_t>(j)];
  }
  const CVector dc = d.adjoint() * c;  // <d_j C|C>
  const CMatrix g = d.adjoint() * d + dc * dc.adjoint();
  sys.a = g.real();
  sys.a = 0.5 * (sys.a + sys.a.transpose()).eval();
  sys.r = -(d.adjoint() * v).real();
  return sys;
}

double mclachlan_distance(const StateVector& state, const std::vector<CVector>& derivs,
                          const Eigen::VectorXd& theta_dot, const CSparse& h1,
                          const CSparse& h2) {
  check_theta(derivs.size(), theta_dot);
  const CVector& c = state.amplitudes();
  const CVector h1c = h1 * c;
  const CVector h2c = h2 * c;
  const double m1 = c.dot(h1c).real();
  const double m2 = c.dot(h2c).real();
  CVector res = (h1c - m1 * c) + kI * (h2c - m2 * c);
  for (std::size_t j = 0; j < derivs.size(); ++j) {
    res += theta_dot[static_cast<Eigen::Index>(j)] * derivs[j];
  }
  return res.norm();
}

double mclachlan_distance_squared(const McLachlanSystem& sys,
                                  const Eigen::VectorXd& theta_dot) {
  const double q = theta_dot.dot(sys.a * theta_dot) - 2.0 * theta_dot.dot(sys.r) +
                   sys.variance;
  return std::max(0.0, q);
}

namespace {

struct FitFunctor : Eigen::DenseFunctor<double> {
  FitFunctor(const ParametrizedCircuit& c, const Eigen::VectorXd& t, int values)
      : Eigen::DenseFunctor<double>(static_cast<int>(c.parameter_count()), values),
        circuit(c), target(t), zero(c.qubits()) {}

  int operator()(const InputType& x, ValueType& f) const {
    const Eigen::VectorXd psi = circuit_state(circuit, x, zero).amplitudes().real();
    f.setZero(values());
    f.head(target.size()) = psi - target.dot(psi) * target;
    return 0;
  }

  int df(const InputType& x, JacobianType& jac) const {
    StateVector state;
    const auto derivs = circuit_derivatives(circuit, x, zero, &state);
    jac.setZero(values(), inputs());
    for (Eigen::Index j = 0; j < inputs(); ++j) {
      const Eigen::VectorXd d = derivs[static_cast<std::size_t>(j)].real();
      jac.col(j).head(target.size()) = d - target.dot(d) * target;
    }
    return 0;
  }

  const ParametrizedCircuit& circuit;
  Eigen::VectorXd target;
  StateVector zero;
};

}  // namespace

FitResult fit_initial(const HardwareEfficientAnsatz& a, const StateVector& target,
                      const FitConfig& cfg) {
  if (target.qubits() != a.qubits) throw DimensionError("fit target size mismatch");
  if (target.max_imag() > 1e-12) throw ConfigError("fit target must be real");
  if (cfg.restarts < 1) throw ConfigError("fit needs at least one start");
  const ParametrizedCircuit circuit = a.circuit();
  const Eigen::VectorXd t = target.amplitudes().real().normalized();
  const auto n = static_cast<int>(circuit.parameter_count());
  const int values = std::max(n, static_cast<int>(t.size()));

  std::mt19937_64 rng(cfg.seed);
  FitResult best;
  best.theta = Eigen::VectorXd::Zero(n);
  for (int start = 0; start < cfg.restarts; ++start) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    if (start > 0) {
      for (int j = 0; j < n; ++j) x[j] = std::numbers::pi * (2.0 * unit_uniform(rng) - 1.0);
    }
    if (n > 0) {
      FitFunctor f(circuit, t, values);
      Eigen::LevenbergMarquardt<FitFunctor> lm(f);
      lm.setFtol(1e-15);
      lm.setXtol(1e-15);
      lm.setGtol(0.0);
      lm.setMaxfev(400 * (n + 1));
      lm.minimize(x);
    }
    const Eigen::VectorXd psi = circuit_state(circuit, x, StateVector(a.qubits))
                                    .amplitudes().real();
    const double overlap = t.dot(psi);
    const double infid = infidelity_from(overlap * overlap);
    best.starts_used = start + 1;
    if (start == 0 || infid < best.infidelity) {
      best.infidelity = infid;
      best.theta = x;
    }
    if (best.infidelity < cfg.tol) break;
  }
  if (best.infidelity > cfg.accept) {
    throw FitFailure("initial-state fit reached infidelity " +
                         std::to_string(best.infidelity) + " after " +
                         std::to_string(best.starts_used) + " starts",
                     best.infidelity);
  }
  return best;
}

Eigen::VectorXd varqte_step(const Eigen::VectorXd& theta, const McLachlanSystem& sys,
                            double dt, double rel_cutoff, double* residual) {
  check_theta(static_cast<std::size_t>(sys.r.size()), theta);
  const LstsqResult sol = truncated_lstsq_symmetric(sys.a, sys.r, rel_cutoff);
  if (residual) *residual = sol.residual;
  return theta + dt * sol.x;
}

RunRecord varqte_run(const Problem& problem, const VarqteConfig& cfg, double dt,
                     double total_time, const RowObserver& observer) {
  const HardwareEfficientAnsatz ansatz{problem.qubits, cfg.layers};
  ansatz.validate();
  const long steps = step_count(dt, total_time);
  const ParametrizedCircuit circuit = ansatz.circuit();
  const StateVector zero(problem.qubits);
  const FitResult fit = fit_initial(ansatz, problem.initial_state(), cfg.fit);
  const auto ref = detail::reference_for(problem, dt, steps);
  const auto [h1, h2] = problem.hermitian_split();

  RunRecord rec;
  rec.method = Method::varqte;
  rec.qubits = problem.qubits;
  const auto emit = [&](RunRow row) {
    if (observer) observer(row);
    rec.rows.push_back(std::move(row));
  };

  Eigen::VectorXd theta = fit.theta;
  const auto n_params = static_cast<long>(theta.size());
  RunRow first;
  first.infidelity = detail::infidelity_against(
      ref[0], circuit_state(circuit, theta, zero).amplitudes());
  first.n_params = n_params;
  emit(first);

  // Rate thetadot = lstsq(A, R) at theta, with the distance and residual of that solve.
  const auto rate = [&](const Eigen::VectorXd& th, double* dist, double* resid) {
    StateVector state;
    const auto derivs = circuit_derivatives(circuit, th, zero, &state);
    const McLachlanSystem sys = mclachlan_system(derivs, state, h1, h2);
    const LstsqResult sol = truncated_lstsq_symmetric(sys.a, sys.r, cfg.rel_cutoff);
    if (dist) *dist = mclachlan_distance(state, derivs, sol.x, h1, h2);
    if (resid) *resid = sol.residual;
    return sol.x;
  };

  for (long k = 1; k <= steps; ++k) {
    double dist = 0.0;
    double resid = 0.0;
    const Eigen::VectorXd k1 = rate(theta, &dist, &resid);
    if (cfg.integrator == Integrator::euler) {
      theta += dt * k1;
    } else {
      const Eigen::VectorXd k2 = rate(theta + 0.5 * dt * k1, nullptr, nullptr);
      const Eigen::VectorXd k3 = rate(theta + 0.5 * dt * k2, nullptr, nullptr);
      const Eigen::VectorXd k4 = rate(theta + dt * k3, nullptr, nullptr);
      theta += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    RunRow row;
    row.step = k;
    row.t = ref[static_cast<std::size_t>(k)].t;
    row.infidelity = detail::infidelity_against(
        ref[static_cast<std::size_t>(k)], circuit_state(circuit, theta, zero).amplitudes());
    row.distance = dist;
    row.n_params = n_params;
    row.residual = resid;
    emit(row);
  }
  rec.trace = circuit.elements();
  rec.final_parameters.assign(theta.data(), theta.data() + theta.size());
  rec.summary["layers"] = cfg.layers;
  rec.summary["fit_infidelity"] = fit.infidelity;
  rec.summary["fit_starts"] = fit.starts_used;
  rec.summary["structural_depth"] =
      static_cast<double>(structural_depth(rec.trace, problem.qubits));
  return rec;
}

}  // namespace advq
