#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "advq/errors.hpp"
#include "advq/runner.hpp"

using namespace advq;

namespace {

RunConfig short_config(Method m) {
  RunConfig c;
  c.problem_1d.qubits = 3;
  c.problem_1d.peclet = 4.0;
  c.method = m;
  c.dt = 1e-3;
  c.total_time = 0.01;
  c.varqte.layers = 3;
  return c;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("advq_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  RunConfig c = short_config(Method::avqds);
  c.avqds.pool_weight = 2;
  c.seed = 42;
  const std::string text = config_to_json(c);
  EXPECT_EQ(config_to_json(config_from_json(text)), text);
}

TEST(Config, Rejections) {
  EXPECT_THROW(config_from_json("{\"bogus\": 1}"), ConfigError);
  EXPECT_THROW(config_from_json("{\"dt\": 0.003}"), ConfigError);
  EXPECT_THROW(config_from_json("{\"dt\": -1}"), ConfigError);
  EXPECT_THROW(config_from_json("{\"method\": \"euler\"}"), ConfigError);
  EXPECT_THROW(config_from_json("not json"), ConfigError);
  EXPECT_THROW(config_from_json("{\"problem\": {\"dims\": 3}}"), ConfigError);
  EXPECT_THROW(config_from_json("{\"avqds\": {\"pool_weight\": 9}}"), ConfigError);
}

TEST(Config, TwoDimensionalDefaultsToLShape) {
  const RunConfig c = config_from_json("{\"problem\": {\"dims\": 2, \"qubits_per_axis\": 3}}");
  EXPECT_EQ(c.profile.kind, InitialProfile::Kind::l_shape);
  EXPECT_EQ(c.qubits(), 6);
}

TEST(StepCount, WholeSteps) {
  EXPECT_EQ(step_count(0.002, 1.0), 500);
  EXPECT_EQ(step_count(0.1, 0.0), 0);
  EXPECT_THROW(step_count(0.0, 1.0), ConfigError);
  EXPECT_THROW(step_count(0.3, 1.0), ConfigError);
}

TEST(Run, DnsHasZeroInfidelity) {
  const RunRecord rec = run(short_config(Method::dns));
  ASSERT_EQ(rec.rows.size(), 11u);
  for (const auto& r : rec.rows) EXPECT_EQ(r.infidelity, 0.0);
}

TEST(Run, DeterministicAcrossMethods) {
  for (Method m : {Method::dns, Method::qite, Method::varqte, Method::avqds}) {
    const RunConfig c = short_config(m);
    const RunRecord a = run(c);
    const RunRecord b = run(c);
    EXPECT_EQ(series_csv(a), series_csv(b)) << to_string(m);
    EXPECT_EQ(manifest_json(a), manifest_json(b)) << to_string(m);
  }
}

TEST(Run, ManifestRoundTripsByteForByte) {
  for (Method m : {Method::qite, Method::avqds, Method::varqte}) {
    const std::string text = manifest_json(run(short_config(m)));
    EXPECT_EQ(manifest_json(record_from_manifest(text)), text) << to_string(m);
  }
}

TEST(Run, PersistsRunDirectory) {
  RunConfig c = short_config(Method::qite);
  c.output = temp_dir("persist").string();
  const RunRecord rec = run(c);
  for (const char* f : {"config.json", "series.csv", "resources.json", "manifest.json"}) {
    EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(c.output) / f)) << f;
  }
  const RunRecord back = load_run(c.output);
  EXPECT_EQ(manifest_json(back), manifest_json(rec));
  EXPECT_EQ(back.resources, rec.resources);
  std::filesystem::remove_all(c.output);
}

TEST(Run, SeriesCsvHeaderAndPrecision) {
  const std::string csv = series_csv(run(short_config(Method::qite)));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "step,t,infidelity,c_k,cum_norm,a_max,solve_residual");
  EXPECT_NE(csv.find("0.0040000000000000001"), std::string::npos);
}

TEST(Shots, BasisStateAndDeterminism) {
  const auto c = sample_shots(StateVector(2), 1000, 1);
  EXPECT_EQ(c[0], 1000);
  EXPECT_EQ(c[1] + c[2] + c[3], 0);
  const StateVector u(2, CVector::Constant(4, Complex(0.5)));
  EXPECT_EQ(sample_shots(u, 5000, 7), sample_shots(u, 5000, 7));
  EXPECT_THROW(sample_shots(u, 0, 1), ConfigError);
}

TEST(Shots, UniformWithinFiveSigma) {
  const StateVector u(2, CVector::Constant(4, Complex(0.5)));
  const auto c = sample_shots(u, 1000000, 12345);
  const double sigma = std::sqrt(1e6 * 0.25 * 0.75);
  for (auto v : c) EXPECT_LT(std::abs(static_cast<double>(v) - 250000.0), 5 * sigma);
}

TEST(Sweep, EmptyGridRunsNothing) {
  SweepSpec spec;
  spec.base_config = "{}";
  EXPECT_TRUE(sweep(spec).empty());
  spec.axes.push_back({"/varqte/layers", {}});
  EXPECT_TRUE(sweep(spec).empty());
}

TEST(Sweep, RecordsFailuresAndContinues) {
  SweepSpec spec;
  spec.base_config = config_to_json(short_config(Method::qite));
  spec.axes.push_back({"/dt", {"0.001", "0.003"}});
  spec.axes.push_back({"/method", {"\"qite\"", "\"dns\""}});
  spec.workers = 2;
  const auto entries = sweep(spec);
  ASSERT_EQ(entries.size(), 4u);
  EXPECT_TRUE(entries[0].record.has_value());
  EXPECT_TRUE(entries[1].record.has_value());
  EXPECT_FALSE(entries[2].record.has_value());
  EXPECT_FALSE(entries[2].error.empty());
  EXPECT_EQ(entries[1].record->method, Method::dns);
  const std::string csv = sweep_summary_csv(spec, entries);
  EXPECT_NE(csv.find("failed"), std::string::npos);
}

TEST(Hash, StableHex) {
  EXPECT_EQ(config_hash(""), "cbf29ce484222325");
  EXPECT_EQ(config_hash("a"), "af63dc4c8601ec8c");
}
