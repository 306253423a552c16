#pragma once

#include <random>

#include "advq/pauli.hpp"

namespace advq::testing {

inline PauliString random_string(std::mt19937_64& rng, int qubits) {
  std::uniform_int_distribution<int> letter(0, 3);
  PauliString p(qubits);
  for (int q = 0; q < qubits; ++q) p.set(q, static_cast<Pauli>(letter(rng)));
  return p;
}

inline StateVector random_state(std::mt19937_64& rng, int qubits, bool real = false) {
  std::normal_distribution<double> g;
  CVector v(Eigen::Index{1} << qubits);
  for (auto& a : v) a = Complex(g(rng), real ? 0.0 : g(rng));
  v.normalize();
  return StateVector(qubits, v);
}

}  // namespace advq::testing
