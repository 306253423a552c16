#include <gtest/gtest.h>

#include <random>

#include "advq/errors.hpp"
#include "advq/hamiltonian.hpp"

using namespace advq;

TEST(Shift, CyclicPermutation) {
  const Eigen::MatrixXd t = shift_matrix(2);
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 4);
  expect(0, 1) = expect(1, 2) = expect(2, 3) = expect(3, 0) = 1.0;
  EXPECT_EQ(t, expect);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(4, 4);
  for (int k = 0; k < 4; ++k) p = p * t;
  EXPECT_EQ(p, Eigen::MatrixXd::Identity(4, 4));
  EXPECT_THROW(shift_matrix(1), Error);
  EXPECT_THROW(shift_matrix(13), Error);
}

TEST(Shift, PauliExpansionMatchesMatrix) {
  for (int n = 2; n <= 6; ++n) {
    const CMatrix d = to_dense(shift_pauli(n), n);
    EXPECT_LT((d - shift_matrix(n).cast<Complex>()).norm(), 1e-12) << n;
    PauliSum sum(n);
    for (const auto& c : shift_components(n)) sum += c.terms;
    EXPECT_LT((to_dense(sum, n) - d).norm(), 1e-12) << n;
  }
}

TEST(Operator1D, StencilEntries) {
  const Transport1DConfig cfg{3, 4.0};
  const Eigen::MatrixXd a = operator_matrix_1d(cfg);
  const double n = 8.0, pre = n / 4.0;
  EXPECT_DOUBLE_EQ(a(0, 0), pre * -2.0 * n);
  EXPECT_DOUBLE_EQ(a(0, 1), pre * (n - 2.0));
  EXPECT_DOUBLE_EQ(a(0, 7), pre * (n + 2.0));
  EXPECT_DOUBLE_EQ(a(7, 0), pre * (n - 2.0));
  EXPECT_DOUBLE_EQ(a(0, 3), 0.0);
  EXPECT_LT(a.colwise().sum().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Operator1D, HamiltonianIsNegatedOperator) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pe(0.1, 100.0);
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k < 10; ++k) {
      const Transport1DConfig cfg{n, pe(rng)};
      const CMatrix h = to_dense(hamiltonian_1d(cfg), n);
      const CMatrix a = operator_matrix_1d(cfg).cast<Complex>();
      ASSERT_LT((h + a).cwiseAbs().maxCoeff(), 1e-12) << n;
    }
  }
}

TEST(Operator1D, TermCountsFollowFormula) {
  const std::vector<std::int64_t> expected = {5, 11, 23, 47, 95, 191, 383};
  for (int n = 2; n <= 8; ++n) {
    EXPECT_EQ(term_count_formula(n), expected[n - 2]);
    const Transport1DConfig cfg{n, 3.7};
    EXPECT_EQ(static_cast<std::int64_t>(hamiltonian_1d(cfg).size()), expected[n - 2]);
    for (const auto& row : term_count_table(cfg)) {
      EXPECT_EQ(static_cast<std::int64_t>(row.measured), row.expected) << row.label;
    }
  }
}

TEST(Operator1D, HamiltonianNonHermitianWhenAdvecting) {
  const Transport1DConfig cfg{3, 10.0};
  const CMatrix h = to_dense(hamiltonian_1d(cfg), 3);
  EXPECT_GT((h - h.adjoint()).norm(), 1.0);
  const Transport1DConfig upwind{3, 16.0};
  ASSERT_EQ(upwind.upper_coeff(), 0.0);
  const CMatrix d = to_dense(hamiltonian_1d(upwind), 3);
  EXPECT_GT((d - d.adjoint()).norm(), 1.0);
}

TEST(Decompose, RoundTripsRandomMatrix) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 4; ++n) {
    CMatrix m(1 << n, 1 << n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(g(rng), g(rng));
    EXPECT_LT((to_dense(decompose_dense(m, n), n) - m).norm(), 1e-12);
  }
  EXPECT_THROW(decompose_dense(CMatrix::Zero(3, 3), 2), Error);
}

TEST(Transport1DConfig, Validation) {
  EXPECT_THROW((Transport1DConfig{1, 1.0}.validate()), Error);
  EXPECT_THROW((Transport1DConfig{4, -1.0}.validate()), Error);
  EXPECT_THROW((Transport1DConfig{4, 0.0}.validate()), Error);
  EXPECT_NO_THROW((Transport1DConfig{4, 32.0}.validate()));
}

TEST(Operator1D, DegeneratePecletKeepsEveryString) {
  const Transport1DConfig cfg{4, 32.0};
  ASSERT_EQ(cfg.upper_coeff(), 0.0);
  const PauliSum h = hamiltonian_1d(cfg);
  EXPECT_EQ(h.size(), 23u);
  EXPECT_LT((to_dense(h, 4) + operator_matrix_1d(cfg).cast<Complex>()).cwiseAbs().maxCoeff(),
            1e-12);
  PauliSum t(4), td(4);
  for (const auto& c : shift_components(4, false)) t += c.terms;
  for (const auto& c : shift_components(4, true)) td += c.terms;
  ASSERT_EQ(t.size(), td.size());
  for (const auto& [p, v] : t.terms()) EXPECT_EQ(td.coefficient(p), std::conj(v)) << p.str();
}
