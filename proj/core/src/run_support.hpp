#pragma once

#include <vector>

#include "advq/dns.hpp"
#include "advq/record.hpp"
#include "advq/transport.hpp"

namespace advq::detail {

/// Exact normalised solution at t_k = k dt, k = 0..steps.
inline std::vector<ReferencePoint> reference_for(const Problem& problem, double dt,
                                                 long steps) {
  return reference_series(problem.dense_generator(), problem.initial,
                          uniform_times(dt, steps));
}

inline double infidelity_against(const ReferencePoint& ref, const CVector& psi) {
  const Complex overlap = ref.state.cast<Complex>().dot(psi);
  return infidelity_from(std::norm(overlap));
}

}  // namespace advq::detail
