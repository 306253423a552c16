#include "advq/pauli.hpp"

#include <bit>
#include <cmath>

#include <nlohmann/json.hpp>

#include "advq/errors.hpp"

namespace advq {

namespace {

std::uint64_t bit_of(int qubits, int qubit) {
  return std::uint64_t{1} << (qubits - 1 - qubit);
}

// i^k for k mod 4
Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// Phase acquired by basis state |idx> under P: P|idx> = phase |idx ^ x>.
inline Complex string_phase(std::uint64_t idx, std::uint64_t z, int ys) {
  const Complex base = i_power(ys);
  return (std::popcount(idx & z) & 1) ? -base : base;
}

void check_dense(int qubits) {
  if (qubits > kMaxDenseQubits) {
    throw ResourceError("dense conversion limited to " +
                        std::to_string(kMaxDenseQubits) + " qubits, got " +
                        std::to_string(qubits));
  }
}

void check_match(const StateVector& psi, int qubits) {
  if (psi.qubits() != qubits) {
    throw DimensionError("state has " + std::to_string(psi.qubits()) +
                         " qubits, operator has " + std::to_string(qubits));
  }
}

}  // namespace

char to_char(Pauli p) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  return kLetters[static_cast<int>(p)];
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ConfigError(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(int qubits) : qubits_(qubits) {
  if (qubits < 0 || qubits > kMaxQubits) {
    throw DimensionError("Pauli string length out of range: " +
                         std::to_string(qubits));
  }
}

PauliString::PauliString(std::string_view letters)
    : PauliString(static_cast<int>(letters.size())) {
  for (int q = 0; q < qubits_; ++q) set(q, pauli_from_char(letters[q]));
}

Pauli PauliString::operator[](int qubit) const {
  const auto b = bit_of(qubits_, qubit);
  const bool x = x_ & b;
  const bool z = z_ & b;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

void PauliString::set(int qubit, Pauli p) {
  if (qubit < 0 || qubit >= qubits_) {
    throw DimensionError("qubit index out of range");
  }
  const auto b = bit_of(qubits_, qubit);
  x_ &= ~b;
  z_ &= ~b;
  if (p == Pauli::X || p == Pauli::Y) x_ |= b;
  if (p == Pauli::Z || p == Pauli::Y) z_ |= b;
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }
int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

std::vector<int> PauliString::support() const {
  std::vector<int> out;
  for (int q = 0; q < qubits_; ++q) {
    if ((x_ | z_) & bit_of(qubits_, q)) out.push_back(q);
  }
  return out;
}

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(qubits_), 'I');
  for (int q = 0; q < qubits_; ++q) s[q] = to_char((*this)[q]);
  return s;
}

std::strong_ordering PauliString::operator<=>(
    const PauliString& other) const noexcept {
  const int n = std::min(qubits_, other.qubits_);
  for (int q = 0; q < n; ++q) {
    const auto a = static_cast<int>((*this)[q]);
    const auto b = static_cast<int>(other[q]);
    if (a != b) return a <=> b;
  }
  return qubits_ <=> other.qubits_;
}

Parity y_parity(const PauliString& p) {
  return (p.y_count() % 2) ? Parity::odd : Parity::even;
}

std::pair<Complex, PauliString> multiply(const PauliString& a,
                                         const PauliString& b) {
  if (a.size() != b.size()) {
    throw DimensionError("cannot multiply Pauli strings of length " +
                         std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  // Single-qubit products: XY = iZ, YZ = iX, ZX = iY, reversed order gives -i.
  int power = 0;
  PauliString out(a.size());
  for (int q = 0; q < a.size(); ++q) {
    const Pauli pa = a[q];
    const Pauli pb = b[q];
    if (pa == Pauli::I) {
      out.set(q, pb);
    } else if (pb == Pauli::I) {
      out.set(q, pa);
    } else if (pa == pb) {
      out.set(q, Pauli::I);
    } else {
      const int ia = static_cast<int>(pa);
      const int ib = static_cast<int>(pb);
      const int ic = 6 - ia - ib;  // the remaining letter among 1, 2, 3
      out.set(q, static_cast<Pauli>(ic));
      // cyclic (X->Y->Z->X) order yields +i
      power += ((ib - ia + 3) % 3 == 1) ? 1 : 3;
    }
  }
  return {i_power(power), out};
}

StateVector::StateVector(int qubits) : qubits_(qubits) {
  if (qubits < 0 || qubits > PauliString::kMaxQubits) {
    throw DimensionError("invalid qubit count");
  }
  amps_ = CVector::Zero(Eigen::Index{1} << qubits);
  amps_[0] = 1.0;
}

StateVector::StateVector(int qubits, CVector amplitudes)
    : qubits_(qubits), amps_(std::move(amplitudes)) {
  if (qubits < 0 || amps_.size() != (Eigen::Index{1} << qubits)) {
    throw DimensionError("amplitude vector length " +
                         std::to_string(amps_.size()) + " is not 2^" +
                         std::to_string(qubits));
  }
}

StateVector StateVector::basis(int qubits, std::uint64_t index) {
  StateVector s(qubits);
  if (index >= s.dim()) throw DimensionError("basis index out of range");
  s.amps_.setZero();
  s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

void StateVector::normalize() {
  const double n = amps_.norm();
  if (n == 0.0) throw NumericalError("cannot normalize the zero vector");
  amps_ /= n;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.qubits_ != qubits_) throw DimensionError("inner product dimension mismatch");
  return amps_.dot(other.amps_);  // Eigen's dot conjugates the left operand
}

double StateVector::max_imag() const {
  double m = 0.0;
  for (const auto& a : amps_) m = std::max(m, std::abs(a.imag()));
  return m;
}

void PauliSum::add(const PauliString& p, Complex coeff) {
  if (qubits_ == 0 && terms_.empty()) qubits_ = p.size();
  if (p.size() != qubits_) {
    throw DimensionError("term length " + std::to_string(p.size()) +
                         " does not match sum length " + std::to_string(qubits_));
  }
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) < kDedupTolerance) terms_.erase(it);
}

Complex PauliSum::coefficient(const PauliString& p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? Complex{} : it->second;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& [p, c] : other.terms_) add(p, c);
  if (qubits_ == 0) qubits_ = other.qubits_;
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scale;
    if (std::abs(it->second) < kDedupTolerance) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(qubits_);
  for (const auto& [p, c] : terms_) out.add(p, std::conj(c));
  return out;
}

PauliSum PauliSum::tensor(const PauliSum& right) const {
  const int n = qubits_ + right.qubits_;
  PauliSum out(n);
  for (const auto& [pl, cl] : terms_) {
    for (const auto& [pr, cr] : right.terms_) {
      PauliString s(n);
      for (int q = 0; q < qubits_; ++q) s.set(q, pl[q]);
      for (int q = 0; q < right.qubits_; ++q) s.set(qubits_ + q, pr[q]);
      out.add(s, cl * cr);
    }
  }
  return out;
}

PauliSum single_qubit_sum(
    std::initializer_list<std::pair<Pauli, Complex>> terms) {
  PauliSum out(1);
  for (const auto& [p, c] : terms) {
    PauliString s(1);
    s.set(0, p);
    out.add(s, c);
  }
  return out;
}

std::vector<PauliString> enumerate_strings(
    int qubits, const std::function<bool(const PauliString&)>& keep) {
  check_dense(qubits);
  std::vector<PauliString> out;
  const std::uint64_t total = std::uint64_t{1} << (2 * qubits);
  for (std::uint64_t code = 0; code < total; ++code) {
    PauliString p(qubits);
    for (int q = 0; q < qubits; ++q) {
      p.set(q, static_cast<Pauli>((code >> (2 * (qubits - 1 - q))) & 3U));
    }
    if (keep(p)) out.push_back(p);
  }
  return out;
}

CMatrix to_dense(const PauliSum& sum, int qubits) {
  check_dense(qubits);
  if (!sum.empty() && sum.qubits() != qubits) {
    throw DimensionError("sum acts on " + std::to_string(sum.qubits()) +
                         " qubits, requested " + std::to_string(qubits));
  }
  const auto dim = Eigen::Index{1} << qubits;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& [p, c] : sum.terms()) {
    const auto x = p.x_mask();
    const auto z = p.z_mask();
    const int ys = p.y_count();
    for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
      m(static_cast<Eigen::Index>(col ^ x), static_cast<Eigen::Index>(col)) +=
          c * string_phase(col, z, ys);
    }
  }
  return m;
}

CMatrix to_dense(const PauliString& p) {
  PauliSum s(p.size());
  s.add(p, 1.0);
  return to_dense(s, p.size());
}

CSparse to_sparse(const PauliSum& sum, int qubits) {
  const auto dim = Eigen::Index{1} << qubits;
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(sum.size() * static_cast<std::size_t>(dim));
  for (const auto& [p, c] : sum.terms()) {
    for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
      trips.emplace_back(static_cast<Eigen::Index>(col ^ p.x_mask()),
                         static_cast<Eigen::Index>(col),
                         c * string_phase(col, p.z_mask(), p.y_count()));
    }
  }
  CSparse m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  m.prune(Complex{0.0});
  return m;
}

void apply_string_inplace(CVector& psi, const PauliString& p) {
  if (psi.size() != (Eigen::Index{1} << p.size())) {
    throw DimensionError("state length does not match Pauli string");
  }
  const auto x = p.x_mask();
  const auto z = p.z_mask();
  const int ys = p.y_count();
  const auto dim = static_cast<std::uint64_t>(psi.size());
  if (x == 0) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      psi[static_cast<Eigen::Index>(i)] *= string_phase(i, z, ys);
    }
    return;
  }
  // Pair i with i ^ x; visit each pair once from its smaller member.
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t j = i ^ x;
    if (j < i) continue;
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    const Complex ai = psi[ii];
    const Complex aj = psi[jj];
    psi[jj] = string_phase(i, z, ys) * ai;
    psi[ii] = string_phase(j, z, ys) * aj;
  }
}

StateVector apply_string(const StateVector& psi, const PauliString& p) {
  check_match(psi, p.size());
  StateVector out = psi;
  apply_string_inplace(out.amplitudes(), p);
  return out;
}

void apply_rotation_inplace(CVector& psi, const PauliString& p, double theta) {
  if (p.is_identity()) {
    throw DimensionError("identity-string rotation is a global phase; filter it out");
  }
  CVector moved = psi;
  apply_string_inplace(moved, p);
  psi = std::cos(theta) * psi - kI * std::sin(theta) * moved;
}

StateVector apply_rotation(const StateVector& psi, const PauliString& p,
                           double theta) {
  check_match(psi, p.size());
  StateVector out = psi;
  apply_rotation_inplace(out.amplitudes(), p, theta);
  return out;
}

StateVector apply_sum(const StateVector& psi, const PauliSum& op) {
  check_match(psi, op.empty() ? psi.qubits() : op.qubits());
  CVector acc = CVector::Zero(psi.amplitudes().size());
  for (const auto& [p, c] : op.terms()) {
    CVector tmp = psi.amplitudes();
    apply_string_inplace(tmp, p);
    acc += c * tmp;
  }
  return StateVector(psi.qubits(), std::move(acc));
}

Complex expectation(const StateVector& psi, const PauliString& p) {
  check_match(psi, p.size());
  const auto& a = psi.amplitudes();
  const auto x = p.x_mask();
  const auto z = p.z_mask();
  const int ys = p.y_count();
  Complex acc{};
  for (std::uint64_t i = 0; i < psi.dim(); ++i) {
    // <psi|P|psi> = sum_i conj(a[i ^ x]) phase(i) a[i]
    acc += std::conj(a[static_cast<Eigen::Index>(i ^ x)]) *
           string_phase(i, z, ys) * a[static_cast<Eigen::Index>(i)];
  }
  return acc;
}

Complex expectation(const StateVector& psi, const PauliSum& op) {
  Complex acc{};
  for (const auto& [p, c] : op.terms()) acc += c * expectation(psi, p);
  return acc;
}

std::string to_json(const PauliSum& sum, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [p, c] : sum.terms()) {
    arr.push_back({{"string", p.str()}, {"re", c.real()}, {"im", c.imag()}});
  }
  return arr.dump(indent);
}

PauliSum pauli_sum_from_json(std::string_view text) {
  try {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw ConfigError("Pauli sum JSON must be an array");
    PauliSum out;
    for (const auto& t : arr) {
      out.add(PauliString(t.at("string").get<std::string>()),
              Complex{t.at("re").get<double>(), t.at("im").get<double>()});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed Pauli sum JSON: ") + e.what());
  }
}

}  // namespace advq
