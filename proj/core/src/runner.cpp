#include "advq/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "advq/dns.hpp"
#include "advq/errors.hpp"
#include "run_support.hpp"

#ifndef ADVQ_VERSION
#define ADVQ_VERSION "unknown"
#endif

namespace advq {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

json profile_to_json(const InitialProfile& p) {
  json j;
  j["kind"] = to_string(p.kind);
  j["height"] = p.height;
  j["trapezoid"] = {{"start", p.trapezoid.start},
                    {"top_start", p.trapezoid.top_start},
                    {"top_end", p.trapezoid.top_end},
                    {"end", p.trapezoid.end}};
  j["l_shape"] = {{"corner_x", p.l_shape.corner_x},
                  {"corner_y", p.l_shape.corner_y},
                  {"arm_length", p.l_shape.arm_length},
                  {"thickness", p.l_shape.thickness}};
  j["samples"] = p.samples;
  return j;
}

void profile_from_json(const json& j, InitialProfile& p) {
  check_keys(j, {"kind", "height", "trapezoid", "l_shape", "samples"}, "profile");
  if (j.contains("kind")) p.kind = profile_kind_from_string(j.at("kind").get<std::string>());
  read(j, "height", p.height);
  if (j.contains("trapezoid")) {
    const auto& t = j.at("trapezoid");
    check_keys(t, {"start", "top_start", "top_end", "end"}, "profile.trapezoid");
    read(t, "start", p.trapezoid.start);
    read(t, "top_start", p.trapezoid.top_start);
    read(t, "top_end", p.trapezoid.top_end);
    read(t, "end", p.trapezoid.end);
  }
  if (j.contains("l_shape")) {
    const auto& l = j.at("l_shape");
    check_keys(l, {"corner_x", "corner_y", "arm_length", "thickness"}, "profile.l_shape");
    read(l, "corner_x", p.l_shape.corner_x);
    read(l, "corner_y", p.l_shape.corner_y);
    read(l, "arm_length", p.l_shape.arm_length);
    read(l, "thickness", p.l_shape.thickness);
  }
  read(j, "samples", p.samples);
}

std::string integrator_name(Integrator i) { return i == Integrator::euler ? "euler" : "rk4"; }

Integrator integrator_from(const std::string& s) {
  if (s == "euler") return Integrator::euler;
  if (s == "rk4") return Integrator::rk4;
  throw ConfigError("unknown integrator '" + s + "'");
}

json config_to_tree(const RunConfig& c) {
  json j;
  if (c.dims == 1) {
    j["problem"] = {{"dims", 1}, {"qubits", c.problem_1d.qubits},
                    {"peclet", c.problem_1d.peclet}};
  } else {
    j["problem"] = {{"dims", 2},
                    {"qubits_per_axis", c.problem_2d.qubits_per_axis},
                    {"gamma", c.problem_2d.gamma},
                    {"lx", c.problem_2d.lx},
                    {"ly", c.problem_2d.ly}};
  }
  j["profile"] = profile_to_json(c.profile);
  j["method"] = to_string(c.method);
  j["dt"] = c.dt;
  j["T"] = c.total_time;
  j["seed"] = c.seed;
  j["output"] = c.output;
  j["qite"] = {{"domain", c.qite.domain},
               {"rel_cutoff", c.qite.solve.rel_cutoff},
               {"exact_norm", c.qite.solve.exact_norm}};
  j["varqte"] = {{"layers", c.varqte.layers},
                 {"rel_cutoff", c.varqte.rel_cutoff},
                 {"integrator", integrator_name(c.varqte.integrator)},
                 {"fit", {{"restarts", c.varqte.fit.restarts},
                          {"tol", c.varqte.fit.tol},
                          {"accept", c.varqte.fit.accept}}}};
  j["avqds"] = {{"pool_weight", c.avqds.pool_weight},
                {"pool_connectivity", to_string(c.avqds.pool_connectivity)},
                {"d_max", c.avqds.solver.d_max},
                {"max_adds_per_step", c.avqds.solver.max_adds_per_step},
                {"rel_cutoff", c.avqds.solver.rel_cutoff},
                {"raise_on_stagnation", c.avqds.solver.raise_on_stagnation}};
  j["resources"] = {{"connectivity", to_string(c.resource_connectivity)}};
  j["workers"] = c.workers;
  return j;
}

RunConfig config_from_tree(const json& j) {
  RunConfig c;
  check_keys(j, {"problem", "profile", "method", "dt", "T", "seed", "output", "qite",
                 "varqte", "avqds", "resources", "workers"},
             "config");
  if (j.contains("problem")) {
    const auto& p = j.at("problem");
    read(p, "dims", c.dims);
    if (c.dims == 1) {
      check_keys(p, {"dims", "qubits", "peclet"}, "problem");
      read(p, "qubits", c.problem_1d.qubits);
      read(p, "peclet", c.problem_1d.peclet);
    } else if (c.dims == 2) {
      check_keys(p, {"dims", "qubits_per_axis", "gamma", "lx", "ly"}, "problem");
      read(p, "qubits_per_axis", c.problem_2d.qubits_per_axis);
      read(p, "gamma", c.problem_2d.gamma);
      read(p, "lx", c.problem_2d.lx);
      read(p, "ly", c.problem_2d.ly);
    } else {
      throw ConfigError("problem.dims must be 1 or 2");
    }
  }
  if (c.dims == 2) c.profile.kind = InitialProfile::Kind::l_shape;
  if (j.contains("profile")) profile_from_json(j.at("profile"), c.profile);
  if (j.contains("method")) c.method = method_from_string(j.at("method").get<std::string>());
  read(j, "dt", c.dt);
  read(j, "T", c.total_time);
  read(j, "seed", c.seed);
  read(j, "output", c.output);
  read(j, "workers", c.workers);
  if (j.contains("qite")) {
    const auto& q = j.at("qite");
    check_keys(q, {"domain", "rel_cutoff", "exact_norm"}, "qite");
    read(q, "domain", c.qite.domain);
    read(q, "rel_cutoff", c.qite.solve.rel_cutoff);
    read(q, "exact_norm", c.qite.solve.exact_norm);
  }
  if (j.contains("varqte")) {
    const auto& v = j.at("varqte");
    check_keys(v, {"layers", "rel_cutoff", "integrator", "fit"}, "varqte");
    read(v, "layers", c.varqte.layers);
    read(v, "rel_cutoff", c.varqte.rel_cutoff);
    if (v.contains("integrator")) {
      c.varqte.integrator = integrator_from(v.at("integrator").get<std::string>());
    }
    if (v.contains("fit")) {
      const auto& f = v.at("fit");
      check_keys(f, {"restarts", "tol", "accept"}, "varqte.fit");
      read(f, "restarts", c.varqte.fit.restarts);
      read(f, "tol", c.varqte.fit.tol);
      read(f, "accept", c.varqte.fit.accept);
    }
  }
  if (j.contains("avqds")) {
    const auto& a = j.at("avqds");
    check_keys(a, {"pool_weight", "pool_connectivity", "d_max", "max_adds_per_step",
                   "rel_cutoff", "raise_on_stagnation"},
               "avqds");
    read(a, "pool_weight", c.avqds.pool_weight);
    if (a.contains("pool_connectivity")) {
      c.avqds.pool_connectivity =
          connectivity_from_string(a.at("pool_connectivity").get<std::string>());
    }
    read(a, "d_max", c.avqds.solver.d_max);
    read(a, "max_adds_per_step", c.avqds.solver.max_adds_per_step);
    read(a, "rel_cutoff", c.avqds.solver.rel_cutoff);
    read(a, "raise_on_stagnation", c.avqds.solver.raise_on_stagnation);
  }
  if (j.contains("resources")) {
    const auto& r = j.at("resources");
    check_keys(r, {"connectivity"}, "resources");
    if (r.contains("connectivity")) {
      c.resource_connectivity = connectivity_from_string(r.at("connectivity").get<std::string>());
    }
  }
  c.varqte.fit.seed = c.seed;
  return c;
}

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }
double number_from(const json& j) { return j.is_null() ? kNotApplicable : j.get<double>(); }

json count_to_json(const ResourceCount& c) {
  return {{"x", c.x},         {"sx", c.sx},
          {"rz", c.rz},       {"cz", c.cz},
          {"total", c.total()}, {"depth", c.depth},
          {"two_qubit_count", c.two_qubit_count}};
}

ResourceCount count_from_json(const json& j) {
  ResourceCount c;
  c.x = j.at("x").get<std::int64_t>();
  c.sx = j.at("sx").get<std::int64_t>();
  c.rz = j.at("rz").get<std::int64_t>();
  c.cz = j.at("cz").get<std::int64_t>();
  c.depth = j.at("depth").get<std::int64_t>();
  c.two_qubit_count = j.at("two_qubit_count").get<std::int64_t>();
  return c;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  out << text;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunRecord dns_run(const Problem& problem, double dt, double total_time,
                  const RowObserver& observer) {
  const long steps = step_count(dt, total_time);
  const auto ref = detail::reference_for(problem, dt, steps);
  RunRecord rec;
  rec.method = Method::dns;
  rec.qubits = problem.qubits;
  const double n0 = problem.initial.norm();
  for (long k = 0; k <= steps; ++k) {
    RunRow row;
    row.step = k;
    row.t = ref[static_cast<std::size_t>(k)].t;
    row.infidelity = 0.0;
    row.norm = ref[static_cast<std::size_t>(k)].norm / n0;
    if (observer) observer(row);
    rec.rows.push_back(row);
  }
  rec.summary["final_norm_ratio"] = rec.rows.back().norm;
  return rec;
}

}  // namespace

int RunConfig::qubits() const {
  return dims == 1 ? problem_1d.qubits : problem_2d.total_qubits();
}

void RunConfig::validate() const {
  if (dims == 1) {
    problem_1d.validate();
  } else if (dims == 2) {
    problem_2d.validate();
  } else {
    throw ConfigError("problem.dims must be 1 or 2");
  }
  step_count(dt, total_time);
  if (workers < 1) throw ConfigError("workers must be at least 1");
  const int n = qubits();
  if (qite.domain < 0 || qite.domain > n) throw ConfigError("qite.domain out of range");
  if (!(qite.solve.rel_cutoff >= 0.0)) throw ConfigError("qite.rel_cutoff must be >= 0");
  if (varqte.layers < 0) throw ConfigError("varqte.layers must be >= 0");
  if (!(varqte.rel_cutoff >= 0.0)) throw ConfigError("varqte.rel_cutoff must be >= 0");
  if (varqte.fit.restarts < 1) throw ConfigError("varqte.fit.restarts must be >= 1");
  if (avqds.pool_weight < 0 || avqds.pool_weight > n) {
    throw ConfigError("avqds.pool_weight out of range");
  }
  if (!(avqds.solver.d_max > 0.0)) throw ConfigError("avqds.d_max must be positive");
  if (avqds.solver.max_adds_per_step < 1) {
    throw ConfigError("avqds.max_adds_per_step must be positive");
  }
  if (!(avqds.solver.rel_cutoff >= 0.0)) throw ConfigError("avqds.rel_cutoff must be >= 0");
}

RunConfig config_from_json(const std::string& text) {
  try {
    RunConfig c = config_from_tree(json::parse(text));
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

std::string config_to_json(const RunConfig& cfg, int indent) {
  return config_to_tree(cfg).dump(indent);
}

Problem make_problem(const RunConfig& cfg) {
  cfg.validate();
  return cfg.dims == 1 ? make_problem_1d(cfg.problem_1d, cfg.profile)
                       : make_problem_2d(cfg.problem_2d, cfg.profile);
}

std::string code_version() { return ADVQ_VERSION; }

std::string config_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunRecord run(const RunConfig& cfg, const RowObserver& observer) {
  const Problem problem = make_problem(cfg);
  const int n = problem.qubits;
  RunRecord rec;
  switch (cfg.method) {
    case Method::dns:
      rec = dns_run(problem, cfg.dt, cfg.total_time, observer);
      break;
    case Method::qite: {
      const QitePool pool = QitePool::with_domain(n, cfg.qite.domain == 0 ? n : cfg.qite.domain);
      rec = qite_run(problem, pool, cfg.dt, cfg.total_time, cfg.qite.solve, observer);
      break;
    }
    case Method::varqte: {
      VarqteConfig v = cfg.varqte;
      v.fit.seed = cfg.seed;
      rec = varqte_run(problem, v, cfg.dt, cfg.total_time, observer);
      break;
    }
    case Method::avqds: {
      const OperatorPool pool = pool_generate(
          n, cfg.avqds.pool_weight == 0 ? n : cfg.avqds.pool_weight,
          cfg.avqds.pool_connectivity);
      rec = avqds_run(problem, pool, cfg.avqds.solver, cfg.dt, cfg.total_time, observer);
      break;
    }
  }
  rec.resources = count_run(rec.trace, n, cfg.resource_connectivity);
  rec.summary["structural_depth"] = static_cast<double>(structural_depth(rec.trace, n));
  rec.config_json = config_to_json(cfg);
  rec.code_version = code_version();
  if (!cfg.output.empty()) save_run(rec, cfg.output);
  return rec;
}

std::string series_csv(const RunRecord& rec) {
  std::ostringstream out;
  switch (rec.method) {
    case Method::dns: out << "step,t,infidelity,norm\n"; break;
    case Method::qite: out << "step,t,infidelity,c_k,cum_norm,a_max,solve_residual\n"; break;
    case Method::varqte: out << "step,t,infidelity,D,n_params,solve_residual\n"; break;
    case Method::avqds: out << "step,t,infidelity,D,n_params,added_ops,solve_residual\n"; break;
  }
  for (const auto& r : rec.rows) {
    out << r.step << ',' << fmt17(r.t) << ',' << fmt17(r.infidelity);
    switch (rec.method) {
      case Method::dns: out << ',' << fmt17(r.norm); break;
      case Method::qite:
        out << ',' << fmt17(r.norm) << ',' << fmt17(r.cum_norm) << ',' << fmt17(r.a_max)
            << ',' << fmt17(r.residual);
        break;
      case Method::varqte:
        out << ',' << fmt17(r.distance) << ',' << r.n_params << ',' << fmt17(r.residual);
        break;
      case Method::avqds: {
        out << ',' << fmt17(r.distance) << ',' << r.n_params << ',';
        for (std::size_t i = 0; i < r.added_ops.size(); ++i) {
          out << (i ? ";" : "") << r.added_ops[i];
        }
        out << ',' << fmt17(r.residual);
        break;
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string resources_json(const ResourceCount& count, int indent) {
  return count_to_json(count).dump(indent);
}

std::string manifest_json(const RunRecord& rec, int indent) {
  json j;
  j["code_version"] = rec.code_version;
  j["config_hash"] = config_hash(rec.config_json);
  j["config"] = rec.config_json.empty() ? json(nullptr) : json::parse(rec.config_json);
  j["method"] = to_string(rec.method);
  j["qubits"] = rec.qubits;
  json rows = json::array();
  for (const auto& r : rec.rows) {
    rows.push_back({{"step", r.step},
                    {"t", r.t},
                    {"infidelity", r.infidelity},
                    {"norm", number_or_null(r.norm)},
                    {"cum_norm", number_or_null(r.cum_norm)},
                    {"distance", number_or_null(r.distance)},
                    {"n_params", r.n_params},
                    {"a_max", number_or_null(r.a_max)},
                    {"residual", number_or_null(r.residual)},
                    {"added_ops", r.added_ops}});
  }
  j["rows"] = std::move(rows);
  json trace = json::array();
  for (const auto& e : rec.trace) trace.push_back(e.str());
  j["trace"] = std::move(trace);
  j["resources"] = count_to_json(rec.resources);
  json summary = json::object();
  for (const auto& [k, v] : rec.summary) summary[k] = number_or_null(v);
  j["summary"] = std::move(summary);
  j["final_parameters"] = rec.final_parameters;
  return j.dump(indent);
}

RunRecord record_from_manifest(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunRecord rec;
    rec.code_version = j.at("code_version").get<std::string>();
    if (!j.at("config").is_null()) rec.config_json = j.at("config").dump(2);
    rec.method = method_from_string(j.at("method").get<std::string>());
    rec.qubits = j.at("qubits").get<int>();
    for (const auto& r : j.at("rows")) {
      RunRow row;
      row.step = r.at("step").get<long>();
      row.t = r.at("t").get<double>();
      row.infidelity = r.at("infidelity").get<double>();
      row.norm = number_from(r.at("norm"));
      row.cum_norm = number_from(r.at("cum_norm"));
      row.distance = number_from(r.at("distance"));
      row.n_params = r.at("n_params").get<long>();
      row.a_max = number_from(r.at("a_max"));
      row.residual = number_from(r.at("residual"));
      row.added_ops = r.at("added_ops").get<std::vector<std::string>>();
      rec.rows.push_back(std::move(row));
    }
    for (const auto& e : j.at("trace")) rec.trace.push_back(CircuitElement::parse(e.get<std::string>()));
    rec.resources = count_from_json(j.at("resources"));
    for (const auto& item : j.at("summary").items()) {
      rec.summary[item.key()] = number_from(item.value());
    }
    rec.final_parameters = j.at("final_parameters").get<std::vector<double>>();
    return rec;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
}

void save_run(const RunRecord& rec, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "config.json", rec.config_json + "\n");
  write_file(dir / "series.csv", series_csv(rec));
  write_file(dir / "resources.json", resources_json(rec.resources) + "\n");
  write_file(dir / "manifest.json", manifest_json(rec) + "\n");
}

RunRecord load_run(const std::filesystem::path& dir) {
  const auto p = std::filesystem::is_directory(dir) ? dir / "manifest.json" : dir;
  return record_from_manifest(read_file(p));
}

std::vector<std::int64_t> sample_shots(const StateVector& state, std::int64_t shots,
                                       std::uint64_t seed) {
  if (shots < 1) throw ConfigError("shots must be at least 1");
  std::vector<double> cum(state.dim());
  double total = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    total += std::norm(state[i]);
    cum[i] = total;
  }
  if (!(total > 0.0)) throw NumericalError("cannot sample the zero state");
  std::vector<std::int64_t> counts(state.dim(), 0);
  std::mt19937_64 rng(seed);
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    ++counts[static_cast<std::size_t>(it - cum.begin())];
  }
  return counts;
}

std::vector<SweepEntry> sweep(const SweepSpec& spec) {
  if (spec.workers < 1) throw ConfigError("sweep workers must be at least 1");
  json base;
  try {
    base = json::parse(spec.base_config);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed sweep base config: ") + e.what());
  }
  std::size_t total = spec.axes.empty() ? 0 : 1;
  for (const auto& a : spec.axes) total *= a.values.size();

  std::vector<SweepEntry> entries(total);
  const std::string base_output = base.value("output", std::string());
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto& e = entries[idx];
    json cfg = base;
    std::size_t rem = idx;
    e.values.resize(spec.axes.size());
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const auto& axis = spec.axes[a];
      const std::size_t pick = rem % axis.values.size();
      rem /= axis.values.size();
      e.values[a] = axis.values[pick];
      try {
        cfg[json::json_pointer(axis.path)] = json::parse(axis.values[pick]);
      } catch (const json::exception& ex) {
        e.error = std::string("bad sweep override: ") + ex.what();
      }
    }
    if (!base_output.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "run_%04zu", idx);
      cfg["output"] = (std::filesystem::path(base_output) / name).string();
    }
    e.config = cfg.dump(2);
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      auto& e = entries[idx];
      if (!e.error.empty()) continue;
      try {
        e.record = run(config_from_json(e.config));
      } catch (const std::exception& ex) {
        e.error = ex.what();
      }
    }
  };
  const int threads = std::min<int>(spec.workers, static_cast<int>(std::max<std::size_t>(total, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return entries;
}

std::string sweep_summary_csv(const SweepSpec& spec, const std::vector<SweepEntry>& entries) {
  std::ostringstream out;
  const auto quote = [](std::string s) {
    const json j = json::parse(s, nullptr, false);
    if (j.is_string()) s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (const auto& a : spec.axes) out << quote(a.path) << ',';
  out << "status,final_infidelity,n_params,total_gates,error\n";
  for (const auto& e : entries) {
    for (const auto& v : e.values) out << quote(v) << ',';
    if (e.record) {
      const auto& last = e.record->final_row();
      out << "ok," << fmt17(last.infidelity) << ',' << last.n_params << ','
          << e.record->resources.total() << ",\n";
    } else {
      out << "failed,nan,0,0," << quote(e.error) << '\n';
    }
  }
  return out.str();
}

}  // namespace advq
