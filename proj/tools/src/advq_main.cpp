#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "advq/dns.hpp"
#include "advq/errors.hpp"
#include "advq/hamiltonian.hpp"
#include "advq/resources.hpp"
#include "advq/runner.hpp"
#include "advq/transport.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw advq::ConfigError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Command-line overrides layered on top of an optional JSON config file.
struct ConfigFlags {
  std::string file;
  std::optional<int> dims, qubits, layers, restarts, qite_domain, pool_weight, max_adds,
      workers;
  std::optional<double> pe, gamma, lx, ly, dt, total_time, dmax, rel_cutoff, height;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> profile, method, output, pool_connectivity, connectivity,
      integrator;
  bool exact_norm = false;
  bool no_raise = false;

  void attach(CLI::App* app, bool with_method) {
    app->add_option("--config", file, "JSON run config")->check(CLI::ExistingFile);
    app->add_option("--dims", dims, "1 or 2 spatial dimensions");
    app->add_option("--qubits,--n", qubits, "qubits (1D) or qubits per axis (2D)");
    app->add_option("--pe", pe, "Peclet number (1D)");
    app->add_option("--gamma", gamma, "diffusivity (2D)");
    app->add_option("--lx", lx, "box width (2D)");
    app->add_option("--ly", ly, "box height (2D)");
    app->add_option("--profile", profile, "trapezoid | l_shape");
    app->add_option("--height", height, "profile height");
    app->add_option("--dt", dt, "time step");
    app->add_option("--T", total_time, "final time");
    app->add_option("--seed", seed, "64-bit seed");
    app->add_option("--output,-o", output, "run output directory");
    if (with_method) app->add_option("--method", method, "dns | qite | varqte | avqds");
    app->add_option("--qite-domain", qite_domain, "QITE pool window width (0 = full)");
    app->add_flag("--exact-norm", exact_norm, "QITE: exact norm factor");
    app->add_option("--layers", layers, "VarQTE ansatz layers");
    app->add_option("--restarts", restarts, "VarQTE fit restarts");
    app->add_option("--integrator", integrator, "VarQTE integrator: euler | rk4");
    app->add_option("--pool-weight", pool_weight, "AVQDS max Pauli weight (0 = full)");
    app->add_option("--pool-connectivity", pool_connectivity, "all_to_all | linear_chain");
    app->add_option("--dmax", dmax, "AVQDS McLachlan distance threshold");
    app->add_option("--max-adds", max_adds, "AVQDS additions per step");
    app->add_option("--rel-cutoff", rel_cutoff, "relative eigenvalue cutoff of the method");
    app->add_flag("--no-raise-on-stagnation", no_raise, "AVQDS: continue past stagnation");
    app->add_option("--connectivity", connectivity, "resource connectivity");
    app->add_option("--workers", workers, "sweep worker threads");
  }

  json tree() const {
    json j = file.empty() ? json::object() : json::parse(slurp(file));
    if (!j.is_object()) throw advq::ConfigError("config must be a JSON object");
    const auto put = [&j](const char* ptr, const auto& opt) {
      if (opt) j[json::json_pointer(ptr)] = *opt;
    };
    put("/problem/dims", dims);
    const int d = j.contains("problem") ? j["problem"].value("dims", 1) : 1;
    if (d == 2) {
      put("/problem/qubits_per_axis", qubits);
      put("/problem/gamma", gamma);
      put("/problem/lx", lx);
      put("/problem/ly", ly);
    } else {
      put("/problem/qubits", qubits);
      put("/problem/peclet", pe);
    }
    put("/profile/kind", profile);
    put("/profile/height", height);
    put("/dt", dt);
    put("/T", total_time);
    put("/seed", seed);
    put("/output", output);
    put("/method", method);
    put("/qite/domain", qite_domain);
    if (exact_norm) j["qite"]["exact_norm"] = true;
    put("/varqte/layers", layers);
    put("/varqte/fit/restarts", restarts);
    put("/varqte/integrator", integrator);
    put("/avqds/pool_weight", pool_weight);
    put("/avqds/pool_connectivity", pool_connectivity);
    put("/avqds/d_max", dmax);
    put("/avqds/max_adds_per_step", max_adds);
    if (no_raise) j["avqds"]["raise_on_stagnation"] = false;
    put("/resources/connectivity", connectivity);
    put("/workers", workers);
    if (rel_cutoff) {
      const std::string m = j.value("method", std::string("qite"));
      if (m == "dns") throw advq::ConfigError("--rel-cutoff has no effect for dns");
      j[m]["rel_cutoff"] = *rel_cutoff;
    }
    return j;
  }

  advq::RunConfig config() const { return advq::config_from_json(tree().dump()); }
};

/// Parses "a..b" or "a..b:step" into the inclusive integer list.
std::vector<std::string> int_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw advq::ConfigError("range must read a..b[:step]: " + text);
  const auto colon = text.find(':', dots);
  try {
    const long lo = std::stol(text.substr(0, dots));
    const long hi = std::stol(text.substr(dots + 2, colon == std::string::npos
                                                        ? std::string::npos
                                                        : colon - dots - 2));
    const long step = colon == std::string::npos ? 1 : std::stol(text.substr(colon + 1));
    if (step < 1 || hi < lo) throw advq::ConfigError("empty or reversed range: " + text);
    std::vector<std::string> out;
    for (long v = lo; v <= hi; v += step) out.push_back(std::to_string(v));
    return out;
  } catch (const std::logic_error&) {
    throw advq::ConfigError("bad range: " + text);
  }
}

void print_dns(const advq::RunConfig& cfg) {
  const advq::Problem problem = advq::make_problem(cfg);
  const long steps = advq::step_count(cfg.dt, cfg.total_time);
  const auto series = advq::reference_series(problem.dense_generator(), problem.initial,
                                             advq::uniform_times(cfg.dt, steps));
  std::cout << "t,norm";
  for (std::size_t k = 0; k < problem.dim(); ++k) std::cout << ",c" << k;
  std::cout << '\n';
  for (const auto& p : series) {
    std::cout << g17(p.t) << ',' << g17(p.norm);
    for (Eigen::Index k = 0; k < p.state.size(); ++k) std::cout << ',' << g17(p.state[k] * p.norm);
    std::cout << '\n';
  }
}

void print_grid(const advq::RunConfig& cfg) {
  const advq::Problem problem = advq::make_problem(cfg);
  if (cfg.dims == 1) {
    std::cout << "x,C\n";
    const double dx = cfg.problem_1d.dx();
    for (Eigen::Index i = 0; i < problem.initial.size(); ++i) {
      std::cout << g17(static_cast<double>(i) * dx) << ',' << g17(problem.initial[i]) << '\n';
    }
    return;
  }
  const auto& p2 = cfg.problem_2d;
  std::cout << "x,y,C\n";
  for (std::int64_t i = 0; i < p2.cells_per_axis(); ++i) {
    for (std::int64_t j = 0; j < p2.cells_per_axis(); ++j) {
      const auto k = advq::interleave(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j),
                                      p2.qubits_per_axis);
      std::cout << g17(p2.x(i)) << ',' << g17(p2.y(j)) << ','
                << g17(problem.initial[static_cast<Eigen::Index>(k)]) << '\n';
    }
  }
}

void print_decompose(int n, double pe) {
  advq::Transport1DConfig cfg{n, pe};
  cfg.validate();
  const advq::PauliSum h = advq::hamiltonian_1d(cfg);
  json out;
  out["hamiltonian"] = json::parse(advq::to_json(h));
  out["term_count"] = {{"measured", h.size()}, {"formula", advq::term_count_formula(n)}};
  json rows = json::array();
  for (const auto& r : advq::term_count_table(cfg)) {
    rows.push_back({{"label", r.label}, {"measured", r.measured}, {"expected", r.expected}});
  }
  out["components"] = std::move(rows);
  std::cout << out.dump(2) << '\n';
}

void print_resources(const std::string& manifest, const std::optional<std::string>& conn) {
  const advq::RunRecord rec = advq::load_run(manifest);
  advq::Connectivity c = advq::Connectivity::linear_chain;
  if (conn) {
    c = advq::connectivity_from_string(*conn);
  } else if (!rec.config_json.empty()) {
    c = advq::config_from_json(rec.config_json).resource_connectivity;
  }
  const advq::ResourceCount count = advq::count_run(rec.trace, rec.qubits, c);
  json out = json::parse(advq::resources_json(count));
  out["connectivity"] = advq::to_string(c);
  out["method"] = advq::to_string(rec.method);
  out["structural_depth"] = advq::structural_depth(rec.trace, rec.qubits);
  std::cout << out.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-algorithm simulator for advection-diffusion transport", "advq"};
  app.require_subcommand(1);

  int dec_n = 4;
  double dec_pe = 32.0;
  auto* decompose = app.add_subcommand("decompose", "Pauli expansion of the 1D Hamiltonian");
  decompose->add_option("--n,--qubits", dec_n, "qubits")->capture_default_str();
  decompose->add_option("--pe", dec_pe, "Peclet number")->capture_default_str();

  ConfigFlags dns_flags, sim_flags, sweep_flags, grid_flags;
  auto* dns = app.add_subcommand("dns", "exact reference evolution as CSV");
  dns_flags.attach(dns, false);

  auto* simulate = app.add_subcommand("simulate", "run one method and print its series CSV");
  sim_flags.attach(simulate, true);
  bool quiet = false;
  simulate->add_flag("--quiet,-q", quiet, "suppress the summary on stderr");

  std::vector<std::string> axes;
  std::string layer_range, qubit_range;
  auto* sweep = app.add_subcommand("sweep", "cartesian product of config overrides");
  sweep_flags.attach(sweep, true);
  sweep->add_option("--layers-range", layer_range, "VarQTE layers a..b[:step]");
  sweep->add_option("--qubits-range", qubit_range, "qubits a..b[:step]");
  sweep->add_option("--axis", axes, "POINTER=v1,v2,... with JSON values")->take_all();

  std::string manifest;
  std::optional<std::string> res_conn;
  auto* resources = app.add_subcommand("resources", "native-gate counts of a saved run");
  resources->add_option("manifest", manifest, "run directory or manifest.json")->required();
  resources->add_option("--connectivity", res_conn, "all_to_all | linear_chain");

  auto* grid = app.add_subcommand("grid", "grid utilities");
  auto* grid_dump = grid->add_subcommand("dump", "initial profile as CSV");
  grid->require_subcommand(1);
  grid_flags.attach(grid_dump, false);

  // In sweep, --layers/--qubits followed by a..b select the range options.
  std::vector<std::string> args(argv + 1, argv + argc);
  bool in_sweep = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "sweep") in_sweep = true;
    if (in_sweep && i + 1 < args.size() && args[i + 1].find("..") != std::string::npos) {
      if (args[i] == "--layers") args[i] = "--layers-range";
      if (args[i] == "--qubits" || args[i] == "--n") args[i] = "--qubits-range";
    }
  }
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*decompose) {
      print_decompose(dec_n, dec_pe);
    } else if (*dns) {
      advq::RunConfig cfg = dns_flags.config();
      cfg.method = advq::Method::dns;
      print_dns(cfg);
      if (!cfg.output.empty()) advq::run(cfg);
    } else if (*simulate) {
      const advq::RunConfig cfg = sim_flags.config();
      const advq::RunRecord rec = advq::run(cfg);
      std::cout << advq::series_csv(rec);
      if (!quiet) {
        const auto& last = rec.final_row();
        std::cerr << advq::to_string(rec.method) << ": final infidelity " << g17(last.infidelity)
                  << ", params " << last.n_params << ", native gates " << rec.resources.total()
                  << ", depth " << rec.resources.depth << '\n';
      }
    } else if (*sweep) {
      json base = sweep_flags.tree();
      advq::SweepSpec spec;
      if (!layer_range.empty()) {
        if (!base.contains("method")) base["method"] = "varqte";
        spec.axes.push_back({"/varqte/layers", int_range(layer_range)});
      }
      if (!qubit_range.empty()) {
        const int d = base.contains("problem") ? base["problem"].value("dims", 1) : 1;
        spec.axes.push_back({d == 2 ? "/problem/qubits_per_axis" : "/problem/qubits",
                             int_range(qubit_range)});
      }
      for (const auto& a : axes) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0) throw advq::ConfigError("axis must read POINTER=v1,...");
        advq::SweepAxis axis{a.substr(0, eq), {}};
        std::stringstream vals(a.substr(eq + 1));
        for (std::string v; std::getline(vals, v, ',');) {
          const bool is_json = json::accept(v);
          axis.values.push_back(is_json ? v : json(v).dump());
        }
        spec.axes.push_back(std::move(axis));
      }
      spec.workers = base.value("workers", 1);
      spec.base_config = base.dump();
      advq::config_from_json(spec.base_config);
      const auto entries = advq::sweep(spec);
      const std::string summary = advq::sweep_summary_csv(spec, entries);
      std::cout << summary;
      const std::string out = base.value("output", std::string());
      if (!out.empty()) {
        std::ofstream(std::filesystem::path(out) / "summary.csv") << summary;
      }
    } else if (*resources) {
      print_resources(manifest, res_conn);
    } else if (*grid_dump) {
      print_grid(grid_flags.config());
    }
  } catch (const advq::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const advq::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
