#include <gtest/gtest.h>

#include "advq/dns.hpp"
#include "advq/hamiltonian.hpp"
#include "advq/transport.hpp"

using namespace advq;

namespace {
Eigen::MatrixXd headline_operator() { return operator_matrix_1d(Transport1DConfig{4, 32.0}); }
Eigen::VectorXd headline_initial() { return build_profile(InitialProfile{}, 4, 1); }
}  // namespace

TEST(Dns, ExpmMatchesRk4) {
  const auto a = headline_operator();
  const auto c0 = headline_initial();
  const Eigen::VectorXd e = evolve_expm(a, c0, 1.0);
  const Eigen::VectorXd r = evolve_rk4(a, c0, 1.0, 100000);
  EXPECT_LT((e - r).norm() / e.norm(), 1e-8);
}

TEST(Dns, ConservesMass) {
  const auto a = headline_operator();
  const auto c0 = headline_initial();
  EXPECT_NEAR(evolve_expm(a, c0, 1.0).sum(), c0.sum(), 1e-8);
}

TEST(Dns, Semigroup) {
  const auto a = headline_operator();
  const auto c0 = headline_initial();
  const Eigen::VectorXd once = evolve_expm(a, c0, 0.7);
  const Eigen::VectorXd twice = evolve_expm(a, evolve_expm(a, c0, 0.3), 0.4);
  EXPECT_LT((once - twice).norm(), 1e-9 * once.norm());
}

TEST(Dns, ZeroTimeIsIdentity) {
  const auto c0 = headline_initial();
  EXPECT_EQ(evolve_expm(headline_operator(), c0, 0.0), c0);
  const auto s = reference_series(headline_operator(), c0, {0.0});
  EXPECT_DOUBLE_EQ(s[0].norm, c0.norm());
  EXPECT_LT((s[0].state - c0.normalized()).norm(), 1e-15);
}

TEST(Dns, DiffusionNormNonIncreasing) {
  const Eigen::MatrixXd full = headline_operator();
  const Eigen::MatrixXd a = 0.5 * (full + full.transpose());
  const auto s = reference_series(a, headline_initial(), uniform_times(0.01, 50));
  for (std::size_t k = 1; k < s.size(); ++k) EXPECT_LE(s[k].norm, s[k - 1].norm + 1e-14);
}

TEST(Dns, Fidelity) {
  const StateVector a = StateVector::basis(1, 0);
  const StateVector b = StateVector::basis(1, 1);
  EXPECT_DOUBLE_EQ(fidelity(a, a), 1.0);
  EXPECT_DOUBLE_EQ(fidelity(a, b), 0.0);
  const StateVector h(1, CVector::Constant(2, Complex(M_SQRT1_2)));
  EXPECT_NEAR(fidelity(a, h), 0.5, 1e-15);
}

TEST(Dns, UniformTimes) {
  const auto t = uniform_times(0.25, 4);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_DOUBLE_EQ(t.back(), 1.0);
}
