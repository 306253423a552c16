#pragma once

// Pauli-string algebra and its action on statevectors.
//
// Qubit ordering: qubit 0 is the leftmost tensor factor and acts on the most
// significant bit of the basis index. For an N-qubit register, qubit q owns
// index bit (N - 1 - q).

#include <complex>
#include <compare>
#include <functional>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace advq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CSparse = Eigen::SparseMatrix<Complex>;

inline constexpr Complex kI{0.0, 1.0};

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

enum class Parity { even, odd };

class PauliString {
 public:
  static constexpr int kMaxQubits = 62;

  PauliString() = default;
  /// All-identity string on `qubits` qubits.
  explicit PauliString(int qubits);
  /// Parses "IXYZ"-style text; qubit 0 is the first character.
  explicit PauliString(std::string_view letters);

  int size() const noexcept { return qubits_; }
  Pauli operator[](int qubit) const;
  void set(int qubit, Pauli p);

  /// Index-bit masks: X and Y flip, Y and Z carry a (-1)^bit sign.
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }

  int weight() const noexcept;
  int y_count() const noexcept;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  /// Qubits with a non-identity letter, ascending.
  std::vector<int> support() const;

  std::string str() const;

  /// Lexicographic over letters (I < X < Y < Z), then by length.
  std::strong_ordering operator<=>(const PauliString& other) const noexcept;
  bool operator==(const PauliString& other) const noexcept = default;

 private:
  int qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

Parity y_parity(const PauliString& p);

/// a * b = phase * product, phase in {1, i, -1, -i}.
std::pair<Complex, PauliString> multiply(const PauliString& a,
                                         const PauliString& b);

class StateVector {
 public:
  StateVector() = default;
  /// |0...0> on `qubits` qubits.
  explicit StateVector(int qubits);
  StateVector(int qubits, CVector amplitudes);

  static StateVector basis(int qubits, std::uint64_t index);

  int qubits() const noexcept { return qubits_; }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(amps_.size());
  }
  const CVector& amplitudes() const noexcept { return amps_; }
  CVector& amplitudes() noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amps_.norm(); }
  void normalize();
  /// <this|other>
  Complex inner(const StateVector& other) const;
  /// Largest |Im(amplitude)|.
  double max_imag() const;

 private:
  int qubits_ = 0;
  CVector amps_;
};

/// Sparse sum of Pauli strings. Terms whose magnitude drops below the
/// dedup tolerance are erased on insertion.
class PauliSum {
 public:
  static constexpr double kDedupTolerance = 1e-14;

  PauliSum() = default;
  explicit PauliSum(int qubits) : qubits_(qubits) {}

  int qubits() const noexcept { return qubits_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::map<PauliString, Complex>& terms() const noexcept {
    return terms_;
  }

  void add(const PauliString& p, Complex coeff);
  Complex coefficient(const PauliString& p) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }

  PauliSum adjoint() const;
  /// Kronecker product; `this` supplies the leading (more significant) qubits.
  PauliSum tensor(const PauliSum& right) const;

 private:
  int qubits_ = 0;
  std::map<PauliString, Complex> terms_;
};

/// Single-qubit sum: sum of (letter, coefficient) pairs.
PauliSum single_qubit_sum(std::initializer_list<std::pair<Pauli, Complex>> terms);

/// Every string on `qubits` qubits accepted by `keep`, in lexicographic
/// order. Enumerates 4^qubits candidates.
std::vector<PauliString> enumerate_strings(
    int qubits, const std::function<bool(const PauliString&)>& keep);

/// Dense guard for test-scale conversions.
inline constexpr int kMaxDenseQubits = 12;

CMatrix to_dense(const PauliSum& sum, int qubits);
CMatrix to_dense(const PauliString& p);
CSparse to_sparse(const PauliSum& sum, int qubits);

StateVector apply_string(const StateVector& psi, const PauliString& p);
/// In-place P|psi>.
void apply_string_inplace(CVector& psi, const PauliString& p);

/// exp(-i theta P)|psi> = cos(theta)|psi> - i sin(theta) P|psi>.
StateVector apply_rotation(const StateVector& psi, const PauliString& p,
                           double theta);
void apply_rotation_inplace(CVector& psi, const PauliString& p, double theta);

StateVector apply_sum(const StateVector& psi, const PauliSum& op);

/// <psi|P|psi>
Complex expectation(const StateVector& psi, const PauliString& p);
/// sum_P c_P <psi|P|psi>, accumulated in map order.
Complex expectation(const StateVector& psi, const PauliSum& op);

/// JSON array of {"string", "re", "im"} objects.
std::string to_json(const PauliSum& sum, int indent = 2);
PauliSum pauli_sum_from_json(std::string_view text);

}  // namespace advq
