#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "advq/dns.hpp"
#include "advq/errors.hpp"
#include "advq/hamiltonian.hpp"
#include "advq/qite.hpp"
#include "advq/transport.hpp"

using namespace advq;

namespace {

Problem small_problem(int n = 3, double pe = 4.0) {
  return make_problem_1d(Transport1DConfig{n, pe}, InitialProfile{});
}

double count_brute(int n, int domain) {
  const auto all = enumerate_strings(n, [&](const PauliString& p) {
    if (y_parity(p) != Parity::odd) return false;
    const auto s = p.support();
    return s.back() - s.front() < domain;
  });
  return static_cast<double>(all.size());
}

}  // namespace

TEST(QitePool, Sizes) {
  EXPECT_EQ(QitePool::full(4).size(), 120u);
  EXPECT_EQ(QitePool::full(2).size(), 6u);
  for (int d = 1; d <= 4; ++d) {
    EXPECT_EQ(static_cast<double>(QitePool::with_domain(4, d).size()), count_brute(4, d));
  }
  const auto pool = QitePool::full(3);
  EXPECT_TRUE(std::is_sorted(pool.strings.begin(), pool.strings.end()));
}

TEST(QitePool, Validation) {
  QitePool bad;
  EXPECT_THROW(bad.validate(2), ConfigError);
  bad.strings = {PauliString("XZ")};
  EXPECT_THROW(bad.validate(2), ConfigError);
  bad.strings = {PauliString("IY"), PauliString("IY")};
  EXPECT_THROW(bad.validate(2), ConfigError);
  bad.strings = {PauliString("IY")};
  EXPECT_THROW(bad.validate(3), Error);
  EXPECT_NO_THROW(bad.validate(2));
}

TEST(QiteStep, SIsSymmetricUnitDiagonalPsd) {
  const Problem p = small_problem();
  const auto pool = QitePool::full(3);
  const Eigen::MatrixXd s = build_s(p.initial_state(), pool);
  EXPECT_LT((s - s.transpose()).norm(), 1e-14);
  for (Eigen::Index i = 0; i < s.rows(); ++i) EXPECT_DOUBLE_EQ(s(i, i), 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
}

TEST(QiteStep, SparseAndPauliRhsAgree) {
  const Problem p = small_problem();
  const auto pool = QitePool::full(3);
  const Transport1DConfig cfg{3, 4.0};
  const auto b1 = build_b(p.initial_state(), pool, p.hamiltonian(), 1e-3);
  const auto b2 = build_b(p.initial_state(), pool, hamiltonian_1d(cfg), 1e-3);
  EXPECT_LT((b1 - b2).norm(), 1e-10 * b1.norm());
}

TEST(QiteStep, ZeroStepIsIdentity) {
  const Problem p = small_problem();
  const auto [out, rec] = qite_step(p.initial_state(), QitePool::full(3), p.hamiltonian(), 0.0);
  EXPECT_EQ(out.amplitudes(), p.initial_state().amplitudes());
  EXPECT_DOUBLE_EQ(rec.norm_factor, 1.0);
}

TEST(QiteStep, ConvergesToExactImaginaryStep) {
  const Problem p = small_problem();
  const auto pool = QitePool::full(3);
  const CMatrix h(p.hamiltonian());
  const StateVector psi = p.initial_state();
  std::vector<double> err;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    CVector exact = (-dt * h).exp() * psi.amplitudes();
    exact.normalize();
    const auto [out, rec] = qite_step(psi, pool, p.hamiltonian(), dt);
    EXPECT_NEAR(out.norm(), 1.0, 1e-12);
    EXPECT_LT(out.max_imag(), 1e-12);
    err.push_back(1.0 - fidelity(out, StateVector(3, exact)));
  }
  EXPECT_LT(err[1], err[0] / 4);
  EXPECT_LT(err[2], err[1] / 4);
}

TEST(QiteStep, RadicandGuard) {
  const Problem p = small_problem(3, 4.0);
  EXPECT_THROW(qite_step(p.initial_state(), QitePool::full(3), p.hamiltonian(), 10.0),
               StepSizeError);
}

TEST(QiteRun, ShortRunTracksReference) {
  const Problem p = small_problem();
  const RunRecord rec = qite_run(p, QitePool::full(3), 1e-3, 0.02);
  ASSERT_EQ(rec.rows.size(), 21u);
  EXPECT_LT(rec.rows.front().infidelity, 1e-14);
  EXPECT_LT(rec.final_row().infidelity, 5e-5);
  for (std::size_t k = 1; k < rec.rows.size(); ++k) EXPECT_GT(rec.rows[k].t, rec.rows[k - 1].t);
  EXPECT_FALSE(rec.trace.empty());
  EXPECT_LT(rec.summary.at("max_imag"), 1e-8);
}
