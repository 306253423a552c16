#include <gtest/gtest.h>

#include <random>

#include "advq/errors.hpp"
#include "advq/pauli.hpp"
#include "helpers.hpp"

using namespace advq;
using advq::testing::random_state;
using advq::testing::random_string;

TEST(PauliString, ParseAndPrint) {
  const PauliString p("IXYZ");
  EXPECT_EQ(p.size(), 4);
  EXPECT_EQ(p.str(), "IXYZ");
  EXPECT_EQ(p[1], Pauli::X);
  EXPECT_EQ(p.weight(), 3);
  EXPECT_EQ(p.y_count(), 1);
  EXPECT_EQ(p.support(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(y_parity(p), Parity::odd);
  EXPECT_THROW(PauliString("IQ"), Error);
}

TEST(PauliString, LexicographicOrder) {
  EXPECT_LT(PauliString("IZ"), PauliString("XI"));
  EXPECT_LT(PauliString("XY"), PauliString("XZ"));
  const auto all = enumerate_strings(2, [](const PauliString&) { return true; });
  ASSERT_EQ(all.size(), 16u);
  EXPECT_EQ(all.front().str(), "II");
  EXPECT_EQ(all[1].str(), "IX");
  EXPECT_EQ(all[4].str(), "XI");
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(PauliString, SingleQubitProducts) {
  const auto [ph, p] = multiply(PauliString("X"), PauliString("Y"));
  EXPECT_EQ(p.str(), "Z");
  EXPECT_EQ(ph, kI);
  const auto [ph2, p2] = multiply(PauliString("Y"), PauliString("X"));
  EXPECT_EQ(p2.str(), "Z");
  EXPECT_EQ(ph2, -kI);
}

TEST(PauliString, DenseMatchesKroneckerConvention) {
  CMatrix z = to_dense(PauliString("ZI"));
  EXPECT_EQ(z(0, 0), Complex(1));
  EXPECT_EQ(z(2, 2), Complex(-1));
  EXPECT_EQ(z(1, 1), Complex(1));
  CMatrix y = to_dense(PauliString("Y"));
  EXPECT_EQ(y(0, 1), -kI);
  EXPECT_EQ(y(1, 0), kI);
}

TEST(PauliProperty, ProductMatchesDenseExactly) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 4;
    const PauliString a = random_string(rng, n);
    const PauliString b = random_string(rng, n);
    const auto [phase, prod] = multiply(a, b);
    const CMatrix lhs = to_dense(a) * to_dense(b);
    const CMatrix rhs = phase * to_dense(prod);
    ASSERT_EQ(lhs, rhs) << a.str() << " * " << b.str();
    ASSERT_TRUE(phase == Complex(1) || phase == Complex(-1) || phase == kI || phase == -kI);
  }
}

TEST(PauliProperty, ApplyStringMatchesDense) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 5;
    const PauliString p = random_string(rng, n);
    const StateVector psi = random_state(rng, n);
    const CVector expect = to_dense(p) * psi.amplitudes();
    ASSERT_LT((apply_string(psi, p).amplitudes() - expect).norm(), 1e-14);
  }
}

TEST(PauliProperty, RotationIsUnitary) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ang(-4.0, 4.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 5;
    const PauliString p = random_string(rng, n);
    if (p.is_identity()) {
      EXPECT_THROW(apply_rotation(StateVector(n), p, 0.1), DimensionError);
      continue;
    }
    const StateVector psi = random_state(rng, n);
    const double th = ang(rng);
    const StateVector out = apply_rotation(psi, p, th);
    ASSERT_NEAR(out.norm(), 1.0, 1e-12);
    const CMatrix u = (std::cos(th) * CMatrix::Identity(psi.dim(), psi.dim()) -
                       kI * std::sin(th) * to_dense(p));
    ASSERT_LT((u * psi.amplitudes() - out.amplitudes()).norm(), 1e-12);
  }
}

TEST(PauliProperty, OddYRotationPreservesReality) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(-4.0, 4.0);
  int checked = 0;
  while (checked < 1000) {
    const int n = 1 + checked % 5;
    const PauliString p = random_string(rng, n);
    if (y_parity(p) != Parity::odd) continue;
    const StateVector psi = random_state(rng, n, true);
    ASSERT_LT(apply_rotation(psi, p, ang(rng)).max_imag(), 1e-8) << p.str();
    ++checked;
  }
}

TEST(PauliSum, DedupAndAdjoint) {
  PauliSum s(2);
  s.add(PauliString("XY"), Complex(1, 2));
  s.add(PauliString("XY"), Complex(-1, -2));
  EXPECT_TRUE(s.empty());
  s.add(PauliString("ZY"), Complex(0, 3));
  EXPECT_EQ(s.adjoint().coefficient(PauliString("ZY")), Complex(0, -3));
  EXPECT_EQ(s.coefficient(PauliString("II")), Complex(0));
}

TEST(PauliSum, TensorPutsLeftOnLeadingQubits) {
  const PauliSum a = single_qubit_sum({{Pauli::X, 2.0}});
  const PauliSum b = single_qubit_sum({{Pauli::Z, 3.0}, {Pauli::I, 1.0}});
  const PauliSum t = a.tensor(b);
  EXPECT_EQ(t.coefficient(PauliString("XZ")), Complex(6.0));
  EXPECT_EQ(t.coefficient(PauliString("XI")), Complex(2.0));
  const CMatrix kron = to_dense(t, 2);
  CMatrix expect = CMatrix::Zero(4, 4);
  const CMatrix da = to_dense(a, 1), db = to_dense(b, 1);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) expect.block(2 * i, 2 * j, 2, 2) = da(i, j) * db;
  EXPECT_LT((kron - expect).norm(), 1e-15);
}

TEST(PauliSum, SparseDenseAndExpectationAgree) {
  std::mt19937_64 rng(19);
  PauliSum s(3);
  std::normal_distribution<double> g;
  for (int k = 0; k < 20; ++k) s.add(random_string(rng, 3), Complex(g(rng), g(rng)));
  const CMatrix d = to_dense(s, 3);
  EXPECT_LT((CMatrix(to_sparse(s, 3)) - d).norm(), 1e-13);
  const StateVector psi = random_state(rng, 3);
  const Complex e = psi.amplitudes().dot(d * psi.amplitudes());
  EXPECT_LT(std::abs(expectation(psi, s) - e), 1e-12);
  EXPECT_LT((apply_sum(psi, s).amplitudes() - d * psi.amplitudes()).norm(), 1e-12);
}

TEST(PauliSum, JsonRoundTrip) {
  PauliSum s(2);
  s.add(PauliString("XY"), Complex(0.1, -2.5));
  s.add(PauliString("ZZ"), Complex(3.0, 0.0));
  const PauliSum back = pauli_sum_from_json(to_json(s));
  EXPECT_EQ(back.terms(), s.terms());
  EXPECT_THROW(pauli_sum_from_json("[{\"string\": 3}]"), Error);
}

TEST(StateVector, BasisAndInner) {
  const StateVector b = StateVector::basis(2, 2);
  EXPECT_EQ(b[2], Complex(1));
  EXPECT_EQ(StateVector(2)[0], Complex(1));
  EXPECT_EQ(b.inner(StateVector(2)), Complex(0));
}

TEST(Dense, GuardsSize) {
  EXPECT_THROW(to_dense(PauliSum(13), 13), Error);
}
