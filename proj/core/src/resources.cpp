#include "advq/resources.hpp"

#include <algorithm>
#include <sstream>

#include "advq/errors.hpp"

namespace advq {

std::string to_string(Connectivity c) {
  return c == Connectivity::all_to_all ? "all_to_all" : "linear_chain";
}

Connectivity connectivity_from_string(const std::string& s) {
  if (s == "all_to_all") return Connectivity::all_to_all;
  if (s == "linear_chain") return Connectivity::linear_chain;
  throw ConfigError("unknown connectivity '" + s + "'");
}

CircuitElement CircuitElement::rotation(const PauliString& p) {
  if (p.is_identity()) throw ConfigError("identity rotation has no circuit");
  CircuitElement e;
  e.kind = Kind::pauli_rotation;
  e.string = p;
  return e;
}

CircuitElement CircuitElement::ry(int qubit) {
  CircuitElement e;
  e.kind = Kind::ry;
  e.q0 = qubit;
  return e;
}

CircuitElement CircuitElement::cx(int control, int target) {
  if (control == target) throw ConfigError("CX control equals target");
  CircuitElement e;
  e.kind = Kind::cx;
  e.q0 = control;
  e.q1 = target;
  return e;
}

std::string CircuitElement::str() const {
  switch (kind) {
    case Kind::pauli_rotation: return "R " + string.str();
    case Kind::ry: return "RY " + std::to_string(q0);
    case Kind::cx: return "CX " + std::to_string(q0) + " " + std::to_string(q1);
  }
  return {};
}

CircuitElement CircuitElement::parse(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  in >> tag;
  if (tag == "R") {
    std::string letters;
    in >> letters;
    return rotation(PauliString(letters));
  }
  if (tag == "RY") {
    int q = -1;
    if (in >> q) return ry(q);
  }
  if (tag == "CX") {
    int c = -1, t = -1;
    if (in >> c >> t) return cx(c, t);
  }
  throw ConfigError("malformed circuit element '" + text + "'");
}

ResourceCounter::ResourceCounter(int qubits, Connectivity connectivity)
    : qubits_(qubits), connectivity_(connectivity),
      frontier_(static_cast<std::size_t>(qubits), 0) {
  if (qubits < 1) throw ConfigError("resource counter needs at least one qubit");
}

void ResourceCounter::add_native(NativeGate g, int q0, int q1) {
  const auto check = [this](int q) {
    if (q < 0 || q >= qubits_) throw DimensionError("gate qubit out of range");
  };
  check(q0);
  auto& f0 = frontier_[static_cast<std::size_t>(q0)];
  switch (g) {
    case NativeGate::x: ++count_.x; break;
    case NativeGate::sx: ++count_.sx; break;
    case NativeGate::rz: ++count_.rz; break;
    case NativeGate::cz: ++count_.cz; ++count_.two_qubit_count; break;
  }
  if (g == NativeGate::cz) {
    check(q1);
    auto& f1 = frontier_[static_cast<std::size_t>(q1)];
    const auto layer = std::max(f0, f1) + 1;
    f0 = f1 = layer;
  } else {
    ++f0;
  }
  count_.depth = std::max({count_.depth, f0,
                           q1 >= 0 ? frontier_[static_cast<std::size_t>(q1)] : 0});
}

void ResourceCounter::hadamard(int q) {
  add_native(NativeGate::rz, q);
  add_native(NativeGate::sx, q);
  add_native(NativeGate::rz, q);
}

void ResourceCounter::cx_adjacent(int control, int target) {
  hadamard(target);
  add_native(NativeGate::cz, control, target);
  hadamard(target);
}

void ResourceCounter::swap(int a, int b) {
  cx_adjacent(a, b);
  cx_adjacent(b, a);
  cx_adjacent(a, b);
}

void ResourceCounter::cx(int control, int target) {
  const int gap = std::abs(control - target) - 1;
  if (connectivity_ == Connectivity::all_to_all || gap <= 0) {
    cx_adjacent(control, target);
    return;
  }
  // Walk the control next to the target, act, and walk it back.
  const int step = target > control ? 1 : -1;
  int pos = control;
  for (int g = 0; g < gap; ++g, pos += step) swap(pos, pos + step);
  cx_adjacent(pos, target);
  for (int g = 0; g < gap; ++g, pos -= step) swap(pos - step, pos);
}

void ResourceCounter::pauli_rotation(const PauliString& p) {
  if (p.size() != qubits_) throw DimensionError("rotation string length mismatch");
  const auto sup = p.support();
  if (sup.empty()) throw ConfigError("identity rotation has no circuit");
  for (int q : sup) {
    if (p[q] == Pauli::X) hadamard(q);
    if (p[q] == Pauli::Y) add_native(NativeGate::sx, q);
  }
  for (std::size_t k = 0; k + 1 < sup.size(); ++k) cx(sup[k], sup[k + 1]);
  add_native(NativeGate::rz, sup.back());
  for (std::size_t k = sup.size() - 1; k > 0; --k) cx(sup[k - 1], sup[k]);
  for (int q : sup) {
    if (p[q] == Pauli::X) hadamard(q);
    if (p[q] == Pauli::Y) {
      add_native(NativeGate::sx, q);
      add_native(NativeGate::x, q);
    }
  }
}

void ResourceCounter::add(const CircuitElement& e) {
  switch (e.kind) {
    case CircuitElement::Kind::pauli_rotation:
      pauli_rotation(e.string);
      break;
    case CircuitElement::Kind::ry:
      add_native(NativeGate::sx, e.q0);
      add_native(NativeGate::rz, e.q0);
      add_native(NativeGate::sx, e.q0);
      add_native(NativeGate::x, e.q0);
      break;
    case CircuitElement::Kind::cx:
      cx(e.q0, e.q1);
      break;
  }
}

ResourceCount count_pauli_rotation(const PauliString& p, Connectivity connectivity) {
  if (p.is_identity()) throw ConfigError("identity rotation has no circuit");
  ResourceCounter c(p.size(), connectivity);
  c.add(CircuitElement::rotation(p));
  return c.count();
}

ResourceCount count_run(const std::vector<CircuitElement>& trace, int qubits,
                        Connectivity connectivity) {
  ResourceCounter c(qubits, connectivity);
  for (const auto& e : trace) c.add(e);
  return c.count();
}

std::int64_t structural_depth(const std::vector<CircuitElement>& trace, int qubits) {
  std::vector<std::int64_t> frontier(static_cast<std::size_t>(qubits), 0);
  std::int64_t depth = 0;
  for (const auto& e : trace) {
    std::vector<int> qs;
    switch (e.kind) {
      case CircuitElement::Kind::pauli_rotation: qs = e.string.support(); break;
      case CircuitElement::Kind::ry: qs = {e.q0}; break;
      case CircuitElement::Kind::cx: qs = {e.q0, e.q1}; break;
    }
    std::int64_t layer = 0;
    for (int q : qs) layer = std::max(layer, frontier[static_cast<std::size_t>(q)]);
    ++layer;
    for (int q : qs) frontier[static_cast<std::size_t>(q)] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

}  // namespace advq
