#include "advq/hamiltonian.hpp"

#include <bit>

#include "advq/errors.hpp"

namespace advq {

namespace {

void check_shift_qubits(int qubits) {
  if (qubits < 2) throw ConfigError("shift operator needs at least two qubits");
  if (qubits > kMaxDenseQubits) {
    throw ResourceError("shift operator limited to " +
                        std::to_string(kMaxDenseQubits) + " qubits");
  }
}

PauliSum lowering() {
  return single_qubit_sum({{Pauli::X, 0.5}, {Pauli::Y, 0.5 * kI}});
}
PauliSum raising() {
  return single_qubit_sum({{Pauli::X, 0.5}, {Pauli::Y, -0.5 * kI}});
}
PauliSum identity(int qubits) {
  PauliSum s(qubits);
  s.add(PauliString(qubits), 1.0);
  return s;
}

PauliSum tensor_chain(const std::vector<PauliSum>& factors) {
  PauliSum acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = acc.tensor(factors[k]);
  return acc;
}

}  // namespace

void Transport1DConfig::validate() const {
  if (qubits < 2) throw ConfigError("1D problem needs at least 2 qubits");
  if (qubits > PauliString::kMaxQubits) throw ConfigError("too many qubits");
  if (!(peclet > 0.0) || !std::isfinite(peclet)) {
    throw ConfigError("Peclet number must be positive and finite");
  }
}

Eigen::MatrixXd shift_matrix(int qubits) {
  check_shift_qubits(qubits);
  const auto n = Eigen::Index{1} << qubits;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) t(i, (i + 1) % n) = 1.0;
  return t;
}

std::vector<ShiftComponent> shift_components(int qubits, bool adjoint) {
  check_shift_qubits(qubits);
  const PauliSum down = adjoint ? raising() : lowering();
  const PauliSum up = adjoint ? lowering() : raising();
  const std::string down_name = adjoint ? "a+" : "a";
  const std::string up_name = adjoint ? "a" : "a+";

  std::vector<ShiftComponent> out;
  if (qubits == 1) {
    out.push_back({"X", single_qubit_sum({{Pauli::X, 1.0}})});
    return out;
  }
  // I^(N-1) (x) a
  {
    std::vector<PauliSum> f(static_cast<std::size_t>(qubits - 1), identity(1));
    f.push_back(down);
    out.push_back({"I^" + std::to_string(qubits - 1) + " " + down_name,
                   tensor_chain(f)});
  }
  // I^(N-1-j) (x) a (x) (a+)^j
  for (int j = 1; j <= qubits - 2; ++j) {
    std::vector<PauliSum> f(static_cast<std::size_t>(qubits - 1 - j), identity(1));
    f.push_back(down);
    for (int k = 0; k < j; ++k) f.push_back(up);
    out.push_back({"I^" + std::to_string(qubits - 1 - j) + " " + down_name +
                       " " + up_name + "^" + std::to_string(j),
                   tensor_chain(f)});
  }
  // X (x) (a+)^(N-1)
  {
    std::vector<PauliSum> f{single_qubit_sum({{Pauli::X, 1.0}})};
    for (int k = 0; k < qubits - 1; ++k) f.push_back(up);
    out.push_back({"X " + up_name + "^" + std::to_string(qubits - 1),
                   tensor_chain(f)});
  }
  return out;
}

PauliSum shift_pauli(int qubits) {
  PauliSum sum(qubits);
  for (const auto& c : shift_components(qubits)) sum += c.terms;
  return sum;
}

Eigen::MatrixXd operator_matrix_1d(const Transport1DConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<Eigen::Index>(cfg.grid_size());
  const double pre = 1.0 / (cfg.peclet * cfg.dx());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) += pre * cfg.diag_coeff();
    a(i, (i + 1) % n) += pre * cfg.upper_coeff();
    a(i, (i + n - 1) % n) += pre * cfg.lower_coeff();
  }
  return a;
}

PauliSum hamiltonian_1d(const Transport1DConfig& cfg) {
  cfg.validate();
  const int n = cfg.qubits;
  const double dx = cfg.dx();
  const double pe = cfg.peclet;
  const double id_coeff = 2.0 / (dx * dx) / pe;
  const double shift_coeff = -(1.0 / (dx * dx) - pe / (2.0 * dx)) / pe;
  const double adj_coeff = -(1.0 / (dx * dx) + pe / (2.0 * dx)) / pe;

  PauliSum h(n);
  h.add(PauliString(n), id_coeff);
  for (const auto& c : shift_components(n, false)) {
    h += Complex{shift_coeff} * c.terms;
  }
  for (const auto& c : shift_components(n, true)) {
    h += Complex{adj_coeff} * c.terms;
  }
  return h;
}

std::int64_t term_count_formula(int qubits) {
  if (qubits < 1 || qubits > 62) throw ConfigError("qubit count out of range");
  return (std::int64_t{1} << qubits) + (std::int64_t{1} << (qubits - 1)) - 1;
}

std::vector<TermCountRow> term_count_table(const Transport1DConfig& cfg) {
  cfg.validate();
  const int n = cfg.qubits;
  std::vector<TermCountRow> rows;
  rows.push_back({"I^" + std::to_string(n), 1, 1});
  const auto comps = shift_components(n, false);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    std::int64_t expected = 0;
    if (k == 0) {
      expected = 2;
    } else if (k + 1 == comps.size()) {
      expected = std::int64_t{1} << (n - 1);
    } else {
      expected = std::int64_t{1} << (k + 1);  // component j = k
    }
    rows.push_back({comps[k].label, comps[k].terms.size(), expected});
  }
  rows.push_back({"total", hamiltonian_1d(cfg).size(), term_count_formula(n)});
  return rows;
}

PauliSum decompose_dense(const CMatrix& m, int qubits) {
  if (qubits > kMaxDecomposeQubits) {
    throw ResourceError("decompose_dense limited to " +
                        std::to_string(kMaxDecomposeQubits) + " qubits");
  }
  const auto dim = Eigen::Index{1} << qubits;
  if (m.rows() != dim || m.cols() != dim) {
    throw DimensionError("matrix is not 2^N x 2^N");
  }
  PauliSum out(qubits);
  const std::uint64_t strings = std::uint64_t{1} << (2 * qubits);
  for (std::uint64_t code = 0; code < strings; ++code) {
    PauliString p(qubits);
    for (int q = 0; q < qubits; ++q) {
      p.set(q, static_cast<Pauli>((code >> (2 * (qubits - 1 - q))) & 3U));
    }
    const auto x = p.x_mask();
    const auto z = p.z_mask();
    static constexpr Complex kIPow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex ybase = kIPow[p.y_count() % 4];
    // Tr(P M) = sum_j P[j^x, j] M[j, j^x]
    Complex tr{};
    for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(dim); ++j) {
      const Complex phase = (std::popcount(j & z) & 1) ? -ybase : ybase;
      tr += phase * m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j ^ x));
    }
    const Complex c = tr / static_cast<double>(dim);
    if (std::abs(c) >= 1e-12) out.add(p, c);
  }
  return out;
}

}  // namespace advq
