#include <benchmark/benchmark.h>

#include "advq/avqds.hpp"
#include "advq/qite.hpp"
#include "advq/transport.hpp"
#include "advq/varqte.hpp"

using namespace advq;

static void BM_ApplyRotation(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  PauliString p(n);
  for (int q = 0; q < n; q += 2) p.set(q, q % 4 ? Pauli::X : Pauli::Y);
  CVector psi = CVector::Constant(Eigen::Index{1} << n, Complex(1.0));
  for (auto _ : st) {
    apply_rotation_inplace(psi, p, 1e-3);
    benchmark::DoNotOptimize(psi.data());
  }
  st.SetItemsProcessed(st.iterations() * psi.size());
}
BENCHMARK(BM_ApplyRotation)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

static void BM_QiteBuildS(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Problem prob = make_problem_1d(Transport1DConfig{n, 32.0}, InitialProfile{});
  const StateVector psi = prob.initial_state();
  const QitePool pool = QitePool::full(n);
  for (auto _ : st) benchmark::DoNotOptimize(build_s(psi, pool).data());
  st.counters["pool"] = static_cast<double>(pool.size());
}
BENCHMARK(BM_QiteBuildS)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_QiteStep(benchmark::State& st) {
  const Problem prob = make_problem_1d(Transport1DConfig{4, 32.0}, InitialProfile{});
  const StateVector psi = prob.initial_state();
  const QitePool pool = QitePool::full(4);
  const CSparse h = prob.hamiltonian();
  for (auto _ : st) benchmark::DoNotOptimize(qite_step(psi, pool, h, 0.002).first.norm());
}
BENCHMARK(BM_QiteStep)->Unit(benchmark::kMillisecond);

static void BM_ScoreCandidates(benchmark::State& st) {
  const int w = static_cast<int>(st.range(0));
  Transport2DConfig cfg;
  cfg.qubits_per_axis = 3;
  InitialProfile prof;
  prof.kind = InitialProfile::Kind::l_shape;
  const Problem prob = make_problem_2d(cfg, prof);
  const StateVector init = prob.initial_state();
  const auto [h1, h2] = prob.hermitian_split();
  const AdaptContext ctx{init, h1, h2};
  const OperatorPool pool = pool_generate(prob.qubits, w);
  AdaptiveAnsatz ansatz;
  const DistanceSolve cur = solve_distance(ansatz, ctx, 1e-4);
  for (auto _ : st) {
    benchmark::DoNotOptimize(score_candidates(cur, pool, ctx, 1e-4).distances.data());
  }
  st.counters["pool"] = static_cast<double>(pool.size());
}
BENCHMARK(BM_ScoreCandidates)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_McLachlanSystem(benchmark::State& st) {
  const int layers = static_cast<int>(st.range(0));
  const Problem prob = make_problem_1d(Transport1DConfig{4, 32.0}, InitialProfile{});
  const auto [h1, h2] = prob.hermitian_split();
  const HardwareEfficientAnsatz a{4, layers};
  const Eigen::VectorXd th = Eigen::VectorXd::LinSpaced(
      static_cast<Eigen::Index>(a.parameter_count()), -1.0, 1.0);
  for (auto _ : st) {
    StateVector s;
    const auto d = circuit_derivatives(a.circuit(), th, StateVector(4), &s);
    benchmark::DoNotOptimize(mclachlan_system(d, s, h1, h2).a.data());
  }
}
BENCHMARK(BM_McLachlanSystem)->Arg(5)->Arg(10)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
