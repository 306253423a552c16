#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "advq/errors.hpp"
#include "advq/transport.hpp"

using namespace advq;

TEST(Interleave, WorkedExamples) {
  EXPECT_EQ(interleave(3, 6, 4), 45u);
  const auto [i, j] = deinterleave(211, 4);
  EXPECT_EQ(i, 13u);
  EXPECT_EQ(j, 9u);
}

TEST(Interleave, Bijective) {
  for (int n = 1; n <= 5; ++n) {
    const std::uint64_t side = std::uint64_t{1} << n;
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < side; ++i)
      for (std::uint64_t j = 0; j < side; ++j) {
        const auto k = interleave(i, j, n);
        ASSERT_LT(k, side * side);
        ASSERT_EQ(deinterleave(k, n), std::make_pair(i, j));
        seen.insert(k);
      }
    EXPECT_EQ(seen.size(), side * side);
  }
}

TEST(Operator2D, Row211Neighbours) {
  const Transport2DConfig cfg{4, 0.01, 1.0, 1.0};
  const RealSparse a = operator_matrix_2d(cfg);
  std::vector<Eigen::Index> cols;
  for (RealSparse::InnerIterator it(a, 211); it; ++it) {
    if (it.col() != 211 && it.value() != 0.0) cols.push_back(it.col());
  }
  std::sort(cols.begin(), cols.end());
  EXPECT_EQ(cols, (std::vector<Eigen::Index>{209, 210, 214, 217}));
}

TEST(Operator2D, DiffusionOnlyConservesMassAndIsSymmetric) {
  const Transport2DConfig cfg{3, 0.05, 1.0, 1.0};
  const Eigen::MatrixXd d(operator_matrix_2d(cfg, StencilParts::diffusion));
  EXPECT_LT((d - d.transpose()).norm(), 1e-12);
  EXPECT_LT(d.colwise().sum().cwiseAbs().maxCoeff(), 1e-10);
  const Eigen::MatrixXd all(operator_matrix_2d(cfg));
  const Eigen::MatrixXd adv(operator_matrix_2d(cfg, StencilParts::advection));
  EXPECT_LT((all - adv - d).norm(), 1e-12);
}

TEST(Profile, TrapezoidOneD) {
  InitialProfile p;
  const Eigen::VectorXd v = build_profile(p, 4, 1);
  ASSERT_EQ(v.size(), 16);
  EXPECT_DOUBLE_EQ(v[0], 0.0);
  EXPECT_DOUBLE_EQ(v[4], 0.0);
  EXPECT_DOUBLE_EQ(v[5], 0.5);
  EXPECT_DOUBLE_EQ(v[8], 1.0);
  EXPECT_DOUBLE_EQ(v[12], 0.0);
  EXPECT_GE(v.minCoeff(), 0.0);
}

TEST(Profile, LShapeTwoD) {
  InitialProfile p;
  p.kind = InitialProfile::Kind::l_shape;
  const Eigen::VectorXd v = build_profile(p, 4, 2);
  ASSERT_EQ(v.size(), 256);
  EXPECT_GT(v.sum(), 0.0);
  EXPECT_LT(v.sum(), 256.0);
  EXPECT_THROW(build_profile(p, 4, 1), ConfigError);
}

TEST(Profile, CustomSamples) {
  InitialProfile p;
  p.kind = InitialProfile::Kind::custom_samples;
  p.samples = {1, 2, 3, 4};
  EXPECT_EQ(build_profile(p, 2, 1), Eigen::Vector4d(1, 2, 3, 4));
  p.samples = {0, 0, 0, 0};
  EXPECT_THROW(build_profile(p, 2, 1), ConfigError);
}

TEST(Embed, Normalises) {
  EXPECT_EQ(amplitude_embed(Eigen::Vector4d(1, 0, 0, 0))[0], Complex(1));
  const StateVector u = amplitude_embed(Eigen::Vector4d(1, 1, 1, 1));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(u[k].real(), 0.5);
  EXPECT_NEAR(amplitude_embed(build_profile(InitialProfile{}, 4, 1)).norm(), 1.0, 1e-15);
  EXPECT_THROW(amplitude_embed(Eigen::Vector4d::Zero()), ConfigError);
  EXPECT_THROW(amplitude_embed(Eigen::Vector3d(1, 1, 1)), Error);
}

TEST(Problem, HermitianSplitRecombines) {
  const Problem p = make_problem_1d(Transport1DConfig{3, 5.0}, InitialProfile{});
  const auto [h1, h2] = p.hermitian_split();
  const CMatrix h(p.hamiltonian());
  const CMatrix d1(h1), d2(h2);
  EXPECT_LT((d1 + kI * d2 - h).norm(), 1e-12);
  EXPECT_LT((d1 - d1.adjoint()).norm(), 1e-12);
  EXPECT_LT((d2 - d2.adjoint()).norm(), 1e-12);
}
