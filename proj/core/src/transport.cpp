#include "advq/transport.hpp"

#include <algorithm>

#include "advq/errors.hpp"

namespace advq {

void Transport2DConfig::validate() const {
  if (qubits_per_axis < 2) throw ConfigError("2D problem needs at least 2 qubits per axis");
  if (qubits_per_axis > kMax2DQubitsPerAxis) {
    throw ResourceError("2D problem limited to " +
                        std::to_string(kMax2DQubitsPerAxis) + " qubits per axis");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be positive");
  if (!(lx > 0.0) || !(ly > 0.0)) throw ConfigError("box lengths must be positive");
}

std::uint64_t interleave(std::uint64_t i, std::uint64_t j, int qubits_per_axis) {
  const std::uint64_t n = std::uint64_t{1} << qubits_per_axis;
  if (qubits_per_axis < 0 || qubits_per_axis > 31 || i >= n || j >= n) {
    throw DimensionError("grid index out of range for interleave");
  }
  std::uint64_t k = 0;
  for (int p = 0; p < qubits_per_axis; ++p) {
    k |= ((i >> p) & 1U) << (2 * p);
    k |= ((j >> p) & 1U) << (2 * p + 1);
  }
  return k;
}

std::pair<std::uint64_t, std::uint64_t> deinterleave(std::uint64_t k,
                                                     int qubits_per_axis) {
  if (qubits_per_axis < 0 || qubits_per_axis > 31 ||
      k >= (std::uint64_t{1} << (2 * qubits_per_axis))) {
    throw DimensionError("flat index out of range for deinterleave");
  }
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  for (int p = 0; p < qubits_per_axis; ++p) {
    i |= ((k >> (2 * p)) & 1U) << p;
    j |= ((k >> (2 * p + 1)) & 1U) << p;
  }
  return {i, j};
}

RealSparse operator_matrix_2d(const Transport2DConfig& cfg, StencilParts parts) {
  cfg.validate();
  const int nq = cfg.qubits_per_axis;
  const std::int64_t n = cfg.cells_per_axis();
  const double dx = cfg.dx();
  const double dy = cfg.dy();
  const double g = cfg.gamma;
  const bool adv = parts != StencilParts::diffusion;
  const bool dif = parts != StencilParts::advection;
  const auto radius = [&](std::int64_t i, std::int64_t j) {
    return std::hypot(cfg.x(i), cfg.y(j));
  };

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(5 * n * n));
  const auto size = static_cast<std::uint64_t>(n * n);
  for (std::uint64_t k = 0; k < size; ++k) {
    const auto [iu, ju] = deinterleave(k, nq);
    const auto i = static_cast<std::int64_t>(iu);
    const auto j = static_cast<std::int64_t>(ju);
    const auto wrap = [n](std::int64_t v) { return static_cast<std::uint64_t>((v + n) % n); };
    const auto col = [&](std::int64_t ii, std::int64_t jj) {
      return static_cast<Eigen::Index>(interleave(wrap(ii), wrap(jj), nq));
    };
    const auto row = static_cast<Eigen::Index>(k);
    const double xi = cfg.x(i);
    const double yj = cfg.y(j);

    double east = 0, west = 0, north = 0, south = 0, centre = 0;
    if (adv) {
      // d/dt C = d/dx (y C / r) - d/dy (x C / r)
      east += yj / (2 * dx * radius(i + 1, j));
      west -= yj / (2 * dx * radius(i - 1, j));
      north -= xi / (2 * dy * radius(i, j + 1));
      south += xi / (2 * dy * radius(i, j - 1));
    }
    if (dif) {
      east += g / (dx * dx);
      west += g / (dx * dx);
      north += g / (dy * dy);
      south += g / (dy * dy);
      centre -= 2 * g * (1 / (dx * dx) + 1 / (dy * dy));
    }
    trips.emplace_back(row, col(i + 1, j), east);
    trips.emplace_back(row, col(i - 1, j), west);
    trips.emplace_back(row, col(i, j + 1), north);
    trips.emplace_back(row, col(i, j - 1), south);
    if (centre != 0.0) trips.emplace_back(row, row, centre);
  }
  RealSparse a(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  a.setFromTriplets(trips.begin(), trips.end());
  a.prune(0.0);
  return a;
}

std::string to_string(InitialProfile::Kind kind) {
  switch (kind) {
    case InitialProfile::Kind::trapezoid: return "trapezoid";
    case InitialProfile::Kind::l_shape: return "l_shape";
    case InitialProfile::Kind::custom_samples: return "custom_samples";
  }
  return "unknown";
}

InitialProfile::Kind profile_kind_from_string(const std::string& s) {
  if (s == "trapezoid") return InitialProfile::Kind::trapezoid;
  if (s == "l_shape") return InitialProfile::Kind::l_shape;
  if (s == "custom_samples") return InitialProfile::Kind::custom_samples;
  throw ConfigError("unknown profile kind '" + s + "'");
}

namespace {

double trapezoid_at(const TrapezoidGeometry& t, double x) {
  if (x <= t.start || x >= t.end) return 0.0;
  if (x < t.top_start) return (x - t.start) / (t.top_start - t.start);
  if (x <= t.top_end) return 1.0;
  return (t.end - x) / (t.end - t.top_end);
}

bool in_l_shape(const LShapeGeometry& l, double fx, double fy) {
  const bool vertical = fx >= l.corner_x && fx < l.corner_x + l.thickness &&
                        fy >= l.corner_y && fy < l.corner_y + l.arm_length;
  const bool horizontal = fx >= l.corner_x && fx < l.corner_x + l.arm_length &&
                          fy >= l.corner_y && fy < l.corner_y + l.thickness;
  return vertical || horizontal;
}

}  // namespace

Eigen::VectorXd build_profile(const InitialProfile& profile, int qubits_per_axis,
                              int dims) {
  if (dims != 1 && dims != 2) throw ConfigError("profiles are 1D or 2D");
  const std::int64_t n = std::int64_t{1} << qubits_per_axis;
  const std::int64_t size = dims == 1 ? n : n * n;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size);

  switch (profile.kind) {
    case InitialProfile::Kind::trapezoid: {
      if (dims != 1) throw ConfigError("trapezoid profile is one-dimensional");
      const auto& t = profile.trapezoid;
      if (!(t.start < t.top_start && t.top_start <= t.top_end && t.top_end < t.end)) {
        throw ConfigError("trapezoid breakpoints must be increasing");
      }
      for (std::int64_t i = 0; i < n; ++i) {
        out[i] = profile.height * trapezoid_at(t, static_cast<double>(i) / static_cast<double>(n));
      }
      break;
    }
    case InitialProfile::Kind::l_shape: {
      if (dims != 2) throw ConfigError("l_shape profile is two-dimensional");
      for (std::int64_t j = 0; j < n; ++j) {
        for (std::int64_t i = 0; i < n; ++i) {
          const double fx = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
          const double fy = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
          if (in_l_shape(profile.l_shape, fx, fy)) {
            const auto k = interleave(static_cast<std::uint64_t>(i),
                                      static_cast<std::uint64_t>(j), qubits_per_axis);
            out[static_cast<Eigen::Index>(k)] = profile.height;
          }
        }
      }
      break;
    }
    case InitialProfile::Kind::custom_samples: {
      if (static_cast<std::int64_t>(profile.samples.size()) != size) {
        throw ConfigError("custom profile needs " + std::to_string(size) +
                          " samples, got " + std::to_string(profile.samples.size()));
      }
      out = Eigen::Map<const Eigen::VectorXd>(profile.samples.data(), size);
      break;
    }
  }
  if ((out.array() < 0.0).any()) throw ConfigError("profile samples must be non-negative");
  if (out.cwiseAbs().maxCoeff() == 0.0) throw ConfigError("profile is identically zero");
  return out;
}

StateVector amplitude_embed(const Eigen::VectorXd& samples) {
  const auto n = samples.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw ConfigError("amplitude embedding needs a power-of-two length, got " +
                      std::to_string(n));
  }
  const double norm = samples.norm();
  if (norm == 0.0) throw ConfigError("cannot embed the zero vector");
  int qubits = 0;
  while ((Eigen::Index{1} << qubits) < n) ++qubits;
  return StateVector(qubits, (samples / norm).cast<Complex>());
}

CSparse Problem::hamiltonian() const {
  return CSparse((-generator).cast<Complex>());
}

std::pair<CSparse, CSparse> Problem::hermitian_split() const {
  const CSparse h = hamiltonian();
  const CSparse hd = CSparse(h.adjoint());
  CSparse h1 = 0.5 * (h + hd);
  CSparse h2 = (h - hd) * Complex{0.0, -0.5};
  h1.prune(Complex{0.0});
  h2.prune(Complex{0.0});
  return {h1, h2};
}

Problem make_problem_1d(const Transport1DConfig& cfg, const InitialProfile& profile) {
  cfg.validate();
  Problem p;
  p.dims = 1;
  p.qubits = cfg.qubits;
  p.generator = operator_matrix_1d(cfg).sparseView();
  p.initial = build_profile(profile, cfg.qubits, 1);
  p.label = "1d N=" + std::to_string(cfg.qubits);
  return p;
}

Problem make_problem_2d(const Transport2DConfig& cfg, const InitialProfile& profile) {
  cfg.validate();
  Problem p;
  p.dims = 2;
  p.qubits = cfg.total_qubits();
  p.generator = operator_matrix_2d(cfg);
  p.initial = build_profile(profile, cfg.qubits_per_axis, 2);
  p.label = "2d N=" + std::to_string(cfg.qubits_per_axis) + "x" +
            std::to_string(cfg.qubits_per_axis);
  return p;
}

}  // namespace advq
