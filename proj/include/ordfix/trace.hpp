#ifndef ORDFIX_TRACE_HPP
#define ORDFIX_TRACE_HPP

#include "ordfix/core.hpp"

#include <optional>

namespace ordfix {

enum class Termination { converged, max_iter, order_violation, h1_violation };

inline std::string_view to_string(Termination t) {
  switch (t) {
  case Termination::converged: return "converged";
  case Termination::max_iter: return "max_iter";
  case Termination::order_violation: return "order_violation";
  case Termination::h1_violation: return "h1_violation";
  }
  return "unknown";
}

/// Record of one engine run.
///
/// `residuals` and `sandwich_widths` are per step, so step k (iterate k to
/// iterate k+1) lives at index k. `order_certified` is per iterate: entry k
/// says whether iterate k passed its order check against the iterates it is
/// compared with (entry 0 is the start point). `bound_certified` is only
/// filled by `track_arbitrary_start`.
struct IterationTrace {
  std::vector<Vector> iterates;
  std::vector<double> residuals;
  std::vector<bool> order_certified;
  std::vector<double> sandwich_widths;
  std::vector<bool> bound_certified;
  Termination terminated_by = Termination::max_iter;
  std::optional<std::size_t> violation_index;

  std::size_t steps() const noexcept { return residuals.size(); }
  const Vector &last() const { return iterates.back(); }

  bool all_certified() const {
    return std::all_of(order_certified.begin(), order_certified.end(),
                       [](bool b) { return b; });
  }
};

struct FixedPointResult {
  Vector point;
  IterationTrace trace;
  double residual = 0.0;
  bool above_start = false;
};

/// Outcome of the alternating orbit x_n = F^n(theta) of a decreasing map.
/// `even_limit` is the last even iterate (u), `odd_limit` the last odd one
/// (v); u <= v always holds on a certified run.
struct DecreasingResult {
  Vector point;
  Vector even_limit;
  Vector odd_limit;
  double h1_gap = 0.0;
  double tolerance = 0.0;
  Norm norm_kind = Norm::sup;
  IterationTrace trace;
};

} // namespace ordfix

#endif // ORDFIX_TRACE_HPP
