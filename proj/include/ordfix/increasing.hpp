#ifndef ORDFIX_INCREASING_HPP
#define ORDFIX_INCREASING_HPP

#include "ordfix/order.hpp"
#include "ordfix/trace.hpp"

#include <concepts>

namespace ordfix {

template <class F>
concept VectorMap = std::invocable<F &, const Vector &> &&
                    std::convertible_to<std::invoke_result_t<F &, const Vector &>, Vector>;

inline void require_iteration_params(double tol, std::size_t max_iter) {
  if (!(tol >= 0.0) || !std::isfinite(tol))
    throw Error(ErrorCode::invalid_argument, "tolerance must be finite and >= 0");
  if (max_iter < 1) throw Error(ErrorCode::invalid_argument, "max_iter must be >= 1");
}

/// Monotone iteration x_{n+1} = F(x_n) from a start with x0 <= F(x0).
///
/// Each step certifies x_n <= x_{n+1}; a failed certificate stops the run with
/// order_violation and the offending iterate index. The run converges once
/// ||x_{n+1} - x_n|| <= tol; the last iterate is returned, and the reported
/// residual is ||F(point) - point|| from one further evaluation.
template <VectorMap F>
FixedPointResult iterate_increasing(F &&map, const Vector &x0, const ConeOrder &cone,
                                    double tol, std::size_t max_iter,
                                    Norm norm_kind = Norm::sup) {
  require_iteration_params(tol, max_iter);
  if (x0.size() != cone.dimension())
    throw Error(ErrorCode::dimension_mismatch, "iterate_increasing: start point");

  Vector next = map(x0);
  require_same_dimension(x0, next, "iterate_increasing: F(x0)");
  if (!leq(x0, next, cone))
    throw Error(ErrorCode::precondition_failed, "iterate_increasing: x0 <= F(x0) fails");

  FixedPointResult out;
  IterationTrace &tr = out.trace;
  tr.iterates.push_back(x0);
  tr.order_certified.push_back(true);

  for (std::size_t step = 0; step < max_iter; ++step) {
    const Vector &cur = tr.iterates.back();
    if (step > 0) next = map(cur);
    bool ok = leq(cur, next, cone);
    double r = distance(next, cur, norm_kind);
    tr.iterates.push_back(std::move(next));
    tr.residuals.push_back(r);
    tr.order_certified.push_back(ok);
    if (!ok) {
      tr.terminated_by = Termination::order_violation;
      tr.violation_index = tr.iterates.size() - 1;
      break;
    }
    if (r <= tol) {
      tr.terminated_by = Termination::converged;
      break;
    }
  }

  // On order_violation the best iterate is the last certified one.
  out.point = tr.terminated_by == Termination::order_violation
                  ? tr.iterates[tr.iterates.size() - 2]
                  : tr.iterates.back();
  out.residual = distance(map(out.point), out.point, norm_kind);
  out.above_start = leq(x0, out.point, cone);
  return out;
}

} // namespace ordfix

#endif // ORDFIX_INCREASING_HPP
