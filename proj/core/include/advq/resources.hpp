#pragma once

// Native-gate resource estimation over the {X, SX, RZ, CZ} set.
//
// Rule table (no cancellation between neighbouring elements):
//   H               = RZ SX RZ
//   CX(c, t)        = H(t) CZ(c, t) H(t)
//   SWAP(a, b)      = CX(a, b) CX(b, a) CX(a, b)
//   RY(phi)         = SX RZ SX X            (SX^dagger = X SX)
//   exp(-i th P)    = basis change in, CX ladder onto the last support qubit,
//                     RZ on that qubit, ladder undone, basis change out.
//                     X letter: H in, H out. Y letter: SX in, SX X out.
//   Linear chain    : a CX across a gap of g idle qubits is wrapped in g SWAPs
//                     before and g SWAPs after.
// Depth is the as-soon-as-possible schedule length over native gates.

#include <cstdint>
#include <string>
#include <vector>

#include "advq/pauli.hpp"

namespace advq {

enum class Connectivity { all_to_all, linear_chain };

std::string to_string(Connectivity c);
Connectivity connectivity_from_string(const std::string& s);

enum class NativeGate { x, sx, rz, cz };

/// One element of a recorded circuit: a Pauli rotation, an R_Y or a CX.
struct CircuitElement {
  enum class Kind { pauli_rotation, ry, cx };
  Kind kind = Kind::pauli_rotation;
  PauliString string;
  int q0 = -1;
  int q1 = -1;

  static CircuitElement rotation(const PauliString& p);
  static CircuitElement ry(int qubit);
  static CircuitElement cx(int control, int target);

  /// "R XYZI", "RY 2", "CX 0 1"
  std::string str() const;
  static CircuitElement parse(const std::string& text);
};

struct ResourceCount {
  std::int64_t x = 0;
  std::int64_t sx = 0;
  std::int64_t rz = 0;
  std::int64_t cz = 0;
  std::int64_t depth = 0;
  std::int64_t two_qubit_count = 0;

  std::int64_t total() const { return x + sx + rz + cz; }
  bool operator==(const ResourceCount&) const = default;
};

/// Streams circuit elements, lowering each to native gates on the fly.
class ResourceCounter {
 public:
  ResourceCounter(int qubits, Connectivity connectivity);

  void add(const CircuitElement& e);
  void add_native(NativeGate g, int q0, int q1 = -1);
  const ResourceCount& count() const noexcept { return count_; }

 private:
  void hadamard(int q);
  void cx(int control, int target);
  void cx_adjacent(int control, int target);
  void swap(int a, int b);
  void pauli_rotation(const PauliString& p);

  int qubits_;
  Connectivity connectivity_;
  std::vector<std::int64_t> frontier_;
  ResourceCount count_;
};

ResourceCount count_pauli_rotation(const PauliString& p, Connectivity connectivity);

ResourceCount count_run(const std::vector<CircuitElement>& trace, int qubits,
                        Connectivity connectivity);

/// ASAP depth with every element (rotation, R_Y, CX) counted as one layer
/// on the qubits it touches; the pre-decomposition depth.
std::int64_t structural_depth(const std::vector<CircuitElement>& trace, int qubits);

}  // namespace advq
