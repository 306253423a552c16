#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "advq/resources.hpp"

namespace advq {

enum class Method { dns, qite, varqte, avqds };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

inline constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

/// One time step of a run. Columns a method does not produce stay NaN / empty.
struct RunRow {
  long step = 0;
  double t = 0.0;
  double infidelity = 0.0;
  double norm = kNotApplicable;      ///< QITE c_k, or the DNS norm
  double cum_norm = kNotApplicable;  ///< running product of c_k
  double distance = kNotApplicable;  ///< McLachlan distance
  long n_params = 0;
  double a_max = kNotApplicable;     ///< QITE max |a_j|
  double residual = kNotApplicable;  ///< least-squares residual of the step solve
  std::vector<std::string> added_ops;
};

struct RunRecord {
  Method method = Method::dns;
  int qubits = 0;
  std::vector<RunRow> rows;
  /// Every circuit element the method applied (or the final ansatz).
  std::vector<CircuitElement> trace;
  ResourceCount resources;
  /// Scalar extras: fit infidelity, structural depth, final parameter count...
  std::map<std::string, double> summary;
  std::vector<double> final_parameters;
  std::string config_json;
  std::string code_version;

  const RunRow& final_row() const { return rows.back(); }
};

using RowObserver = std::function<void(const RunRow&)>;

/// Whole number of steps in [0, T]; throws ConfigError unless T/dt is an
/// integer within 1e-9.
long step_count(double dt, double total_time);

/// Infidelity 1 - f clamped to [0, 1] against rounding.
inline double infidelity_from(double fid) {
  return std::min(1.0, std::max(0.0, 1.0 - fid));
}

}  // namespace advq
