#include <gtest/gtest.h>

#include <random>

#include "advq/avqds.hpp"
#include "advq/errors.hpp"
#include "advq/transport.hpp"
#include "helpers.hpp"

using namespace advq;

TEST(Pool, AllToAllSizesOnEightQubits) {
  EXPECT_EQ(pool_generate(8, 2).size(), 120u);
  EXPECT_EQ(pool_generate(8, 3).size(), 848u);
  EXPECT_EQ(pool_generate(8, 4).size(), 3648u);
  EXPECT_EQ(pool_generate(8, 8).size(), 32640u);
}

TEST(Pool, OddYAndWeightBound) {
  const auto pool = pool_generate(4, 2);
  for (const auto& p : pool.candidates) {
    EXPECT_EQ(y_parity(p), Parity::odd);
    EXPECT_LE(p.weight(), 2);
  }
  EXPECT_TRUE(std::is_sorted(pool.candidates.begin(), pool.candidates.end()));
}

TEST(Pool, LinearChainKeepsContiguousSupport) {
  const auto lin = pool_generate(4, 3, Connectivity::linear_chain);
  const auto all = pool_generate(4, 3, Connectivity::all_to_all);
  EXPECT_LT(lin.size(), all.size());
  for (const auto& p : lin.candidates) {
    const auto s = p.support();
    EXPECT_EQ(s.back() - s.front() + 1, static_cast<int>(s.size())) << p.str();
  }
  EXPECT_THROW(pool_generate(4, 0), ConfigError);
  EXPECT_THROW(pool_generate(4, 5), ConfigError);
}

namespace {

struct Fixture {
  Problem problem = make_problem_1d(Transport1DConfig{3, 4.0}, InitialProfile{});
  StateVector initial = problem.initial_state();
  std::pair<CSparse, CSparse> split = problem.hermitian_split();
  AdaptContext ctx{initial, split.first, split.second};
};

}  // namespace

TEST(Adapt, ScoresMatchActualDistances) {
  Fixture f;
  const auto pool = pool_generate(3, 3);
  AdaptiveAnsatz ansatz;
  ansatz.generators = {PauliString("IIY"), PauliString("IYZ")};
  ansatz.theta = {0.3, -0.2};
  const double cutoff = 1e-8;
  const DistanceSolve cur = solve_distance(ansatz, f.ctx, cutoff);
  const CandidateScores scores = score_candidates(cur, pool, f.ctx, cutoff);
  EXPECT_NEAR(scores.current, cur.distance, 1e-9);
  for (std::size_t k = 0; k < pool.size(); k += 3) {
    AdaptiveAnsatz grown = ansatz;
    grown.generators.push_back(pool.candidates[k]);
    grown.theta.push_back(0.0);
    const double actual = solve_distance(grown, f.ctx, cutoff).distance;
    EXPECT_NEAR(scores.distances[k], actual, 1e-7) << pool.candidates[k].str();
  }
}

TEST(Adapt, GrowsUntilBelowThreshold) {
  Fixture f;
  const auto pool = pool_generate(3, 3);
  AdaptiveAnsatz ansatz;
  AvqdsConfig cfg;
  cfg.d_max = 1e-3;
  cfg.max_adds_per_step = 20;
  const auto res = adapt(ansatz, pool, f.ctx, cfg, solve_distance(ansatz, f.ctx, cfg.rel_cutoff));
  EXPECT_FALSE(res.additions.empty());
  EXPECT_LT(res.solve.distance, cfg.d_max);
  EXPECT_EQ(ansatz.size(), res.additions.size());
  for (double t : ansatz.theta) EXPECT_EQ(t, 0.0);
}

TEST(Adapt, StagnatesWhenPoolAddsNothing) {
  Fixture f;
  OperatorPool pool;
  pool.candidates = {PauliString("IIY")};
  pool.max_weight = 1;
  AdaptiveAnsatz ansatz;
  ansatz.generators = {PauliString("IIY")};
  ansatz.theta = {0.1};
  AvqdsConfig cfg;
  cfg.d_max = 1e-12;
  EXPECT_THROW(adapt(ansatz, pool, f.ctx, cfg, solve_distance(ansatz, f.ctx, cfg.rel_cutoff)),
               StagnationError);
}

TEST(Adapt, AnsatzValidation) {
  AdaptiveAnsatz a;
  a.generators = {PauliString("IY")};
  EXPECT_THROW(a.validate(2), Error);
  a.theta = {0.0};
  EXPECT_NO_THROW(a.validate(2));
  EXPECT_THROW(a.validate(3), Error);
}

TEST(AvqdsRun, ShortRunRecordsAdditions) {
  Fixture f;
  const RunRecord rec = avqds_run(f.problem, pool_generate(3, 3), AvqdsConfig{}, 1e-3, 0.02);
  ASSERT_EQ(rec.rows.size(), 21u);
  EXPECT_LT(rec.final_row().infidelity, 1e-5);
  EXPECT_FALSE(rec.rows[1].added_ops.empty());
  std::size_t total = 0;
  for (const auto& r : rec.rows) total += r.added_ops.size();
  EXPECT_EQ(static_cast<long>(total), rec.final_row().n_params);
  EXPECT_EQ(rec.trace.size(), total);
}
