#include "advq/record.hpp"

#include <cmath>

#include "advq/errors.hpp"

namespace advq {

std::string to_string(Method m) {
  switch (m) {
    case Method::dns: return "dns";
    case Method::qite: return "qite";
    case Method::varqte: return "varqte";
    case Method::avqds: return "avqds";
  }
  return {};
}

Method method_from_string(const std::string& s) {
  if (s == "dns") return Method::dns;
  if (s == "qite") return Method::qite;
  if (s == "varqte") return Method::varqte;
  if (s == "avqds") return Method::avqds;
  throw ConfigError("unknown method '" + s + "'");
}

long step_count(double dt, double total_time) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(total_time >= 0.0) || !std::isfinite(total_time)) {
    throw ConfigError("T must be non-negative");
  }
  const double ratio = total_time / dt;
  const double whole = std::round(ratio);
  if (std::abs(ratio - whole) > 1e-9 * std::max(1.0, whole)) {
    throw ConfigError("T / dt = " + std::to_string(ratio) + " is not a whole step count");
  }
  return static_cast<long>(whole);
}

}  // namespace advq
