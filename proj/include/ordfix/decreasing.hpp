#ifndef ORDFIX_DECREASING_HPP
#define ORDFIX_DECREASING_HPP

#include "ordfix/delta.hpp"
#include "ordfix/increasing.hpp"

#include <map>
#include <string>
#include <utility>

namespace ordfix {

namespace detail {

template <class F>
Vector eval_in_cone(F &map, const Vector &x, const ConeOrder &cone, const char *where) {
  Vector y = map(x);
  if (y.size() != cone.dimension())
    throw Error(ErrorCode::dimension_mismatch, std::string(where) + ": F changed dimension");
  if (!cone.contains(y))
    throw Error(ErrorCode::cone_exit, std::string(where) + ": F(x) left the cone");
  return y;
}

// Sandwich check for the newest iterate x_k of the orbit from theta:
// even k needs x_{k-2} <= x_k <= x_{k-1}, odd k needs x_{k-1} <= x_k <= x_{k-2}.
// Applied at every k this is the full chain
//   x_0 <= x_2 <= x_4 <= ... <= x_5 <= x_3 <= x_1.
inline bool sandwich_step_ok(const std::vector<Vector> &xs, std::size_t k,
                             const ConeOrder &cone) {
  if (k == 0) return true;
  if (k == 1) return leq(xs[0], xs[1], cone);
  if (k % 2 == 0) return leq(xs[k - 2], xs[k], cone) && leq(xs[k], xs[k - 1], cone);
  return leq(xs[k - 1], xs[k], cone) && leq(xs[k], xs[k - 2], cone);
}

} // namespace detail

/// True iff every stored iterate triple of an orbit from theta obeys the
/// sandwich ordering. Independent of the engine's own per-step flags.
inline bool satisfies_sandwich(const std::vector<Vector> &xs, const ConeOrder &cone) {
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (!detail::sandwich_step_ok(xs, k, cone)) return false;
  return true;
}

/// Orbit x_n = F^n(theta) of a cone-decreasing map F : K -> K.
///
/// Even iterates increase, odd iterates decrease, and the fixed point is
/// enclosed between the last two; the run converges when that enclosure is
/// at most tol wide. F(theta) = theta returns theta after one step. A run
/// that ends with a gap wider than tol, or an orbit that repeats a period-2
/// pattern exactly, is reported as h1_violation.
template <VectorMap F>
DecreasingResult iterate_decreasing(F &&map, const ConeOrder &cone, double tol,
                                    std::size_t max_iter, Norm norm_kind = Norm::sup) {
  require_iteration_params(tol, max_iter);
  DecreasingResult out;
  out.tolerance = tol;
  out.norm_kind = norm_kind;
  IterationTrace &tr = out.trace;
  auto &xs = tr.iterates;

  xs.emplace_back(cone.dimension(), 0.0);
  tr.order_certified.push_back(true);

  auto finish = [&](Termination why) {
    tr.terminated_by = why;
    std::size_t k = xs.size() - 1;
    out.even_limit = xs[k % 2 == 0 ? k : k - 1];
    out.odd_limit = xs[k % 2 == 1 ? k : k - 1];
    out.h1_gap = distance(out.even_limit, out.odd_limit, norm_kind);
    out.point = out.even_limit;
    return out;
  };

  for (std::size_t step = 0; step < max_iter; ++step) {
    Vector next = detail::eval_in_cone(map, xs.back(), cone, "iterate_decreasing");
    double width = distance(next, xs.back(), norm_kind);
    xs.push_back(std::move(next));
    std::size_t k = xs.size() - 1;
    bool ok = detail::sandwich_step_ok(xs, k, cone);
    tr.residuals.push_back(width);
    tr.sandwich_widths.push_back(width);
    tr.order_certified.push_back(ok);

    if (!ok) {
      tr.violation_index = k;
      return finish(Termination::order_violation);
    }
    if (width <= tol) return finish(Termination::converged);
    // x_k == x_{k-2} with a wide gap: the orbit is an exact 2-cycle.
    if (k >= 3 && xs[k] == xs[k - 2] && xs[k - 1] == xs[k - 3])
      return finish(Termination::h1_violation);
  }
  return finish(Termination::h1_violation);
}

/// Orbit y_n = F^{n+1}(z) from an arbitrary z in K, checked against the
/// reference orbit from theta. Each y_n must interlace the reference
///   even n:  x_n <= y_n <= x_{n+1},    odd n:  x_{n+1} <= y_n <= x_n,
/// and satisfy the normality bound ||y_n - x_n|| <= lambda ||x_{n+1} - x_n||
/// (odd n measures from x_{n+1}). The reference orbit is extended with F
/// when the tracked orbit outruns it.
template <VectorMap F>
IterationTrace track_arbitrary_start(F &&map, const Vector &z,
                                     const DecreasingResult &reference,
                                     const ConeOrder &cone, double lambda,
                                     std::size_t max_iter) {
  const double tol = reference.tolerance;
  const Norm nk = reference.norm_kind;
  require_iteration_params(tol, max_iter);
  if (!(lambda >= 1.0))
    throw Error(ErrorCode::invalid_argument, "track_arbitrary_start: lambda must be >= 1");
  if (z.size() != cone.dimension())
    throw Error(ErrorCode::dimension_mismatch, "track_arbitrary_start: start point");
  if (!cone.contains(z))
    throw Error(ErrorCode::cone_exit, "track_arbitrary_start: z is not in the cone");
  if (reference.trace.iterates.empty())
    throw Error(ErrorCode::invalid_argument, "track_arbitrary_start: empty reference");

  std::vector<Vector> xs = reference.trace.iterates;
  auto ref = [&](std::size_t i) -> const Vector & {
    while (xs.size() <= i)
      xs.push_back(detail::eval_in_cone(map, xs.back(), cone, "track_arbitrary_start"));
    return xs[i];
  };

  IterationTrace tr;
  auto certify = [&](std::size_t n) {
    ref(n + 1);  // extend first so the references below stay valid
    const Vector &y = tr.iterates[n];
    const Vector &lo = n % 2 == 0 ? ref(n) : ref(n + 1);
    const Vector &hi = n % 2 == 0 ? ref(n + 1) : ref(n);
    bool order = leq(lo, y, cone) && leq(y, hi, cone);
    double width = distance(hi, lo, nk);
    bool bound = distance(y, ref(n % 2 == 0 ? n : n + 1), nk) <= lambda * width;
    tr.order_certified.push_back(order);
    tr.bound_certified.push_back(bound);
    return std::pair{order && bound, width};
  };

  tr.iterates.push_back(detail::eval_in_cone(map, z, cone, "track_arbitrary_start"));
  if (!certify(0).first) {
    tr.terminated_by = Termination::order_violation;
    tr.violation_index = 0;
    return tr;
  }
  tr.terminated_by = Termination::max_iter;
  for (std::size_t step = 0; step < max_iter; ++step) {
    Vector next = detail::eval_in_cone(map, tr.iterates.back(), cone, "track_arbitrary_start");
    double r = distance(next, tr.iterates.back(), nk);
    tr.iterates.push_back(std::move(next));
    tr.residuals.push_back(r);
    auto [ok, width] = certify(tr.iterates.size() - 1);
    tr.sandwich_widths.push_back(width);
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
  return tr;
}

struct H1Check {
  bool holds = true;
  std::optional<std::pair<Vector, Vector>> witness;
};

/// Searches the candidates for a 2-cycle F(u) = v, F(v) = u with u != v,
/// all three comparisons taken up to tol.
template <VectorMap F>
H1Check check_h1(F &&map, const PointSet &candidates, double tol) {
  if (!(tol >= 0.0))
    throw Error(ErrorCode::invalid_argument, "check_h1: tolerance must be >= 0");
  const Norm nk = candidates.norm_kind();
  std::vector<Vector> images;
  images.reserve(candidates.size());
  for (const auto &c : candidates) images.push_back(map(c));

  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      const Vector &u = candidates[i], &v = candidates[j];
      if (distance(images[i], v, nk) <= tol && distance(images[j], u, nk) <= tol &&
          distance(u, v, nk) > tol)
        return H1Check{false, std::pair{u, v}};
    }
  return {};
}

/// Exhaustive comparison of Fix(F) and Fix(F o F) for a self-map of
/// {0, ..., n-1}, given as its image table.
struct H2Report {
  std::vector<std::size_t> fixed;          // Fix(F)
  std::vector<std::size_t> fixed_squared;  // Fix(F o F)
  std::vector<std::pair<std::size_t, std::size_t>> two_cycles;  // a < b
  bool h1_holds = true;
  bool h2_holds = true;
  bool equivalence_holds = true;
};

inline H2Report check_h2_equivalence(std::span<const std::size_t> image) {
  const std::size_t n = image.size();
  for (std::size_t a = 0; a < n; ++a)
    if (image[a] >= n)
      throw Error(ErrorCode::not_closed, "check_h2_equivalence: F(" + std::to_string(a) +
                                             ") = " + std::to_string(image[a]) +
                                             " is outside the domain");
  H2Report r;
  for (std::size_t a = 0; a < n; ++a) {
    if (image[a] == a) r.fixed.push_back(a);
    if (image[image[a]] == a) r.fixed_squared.push_back(a);
    std::size_t b = image[a];
    if (a < b && image[b] == a) r.two_cycles.emplace_back(a, b);
  }
  r.h1_holds = r.two_cycles.empty();
  r.h2_holds = r.fixed == r.fixed_squared;
  r.equivalence_holds = r.h1_holds == r.h2_holds;
  return r;
}

/// Labelled variant: each (from, to) pair is one entry of the map. Labels
/// are numbered in order of first appearance as a `from`.
struct LabelledH2Report {
  std::vector<std::string> labels;
  H2Report report;
};

inline LabelledH2Report
check_h2_equivalence(std::span<const std::pair<std::string, std::string>> entries) {
  LabelledH2Report out;
  std::map<std::string, std::size_t> index;
  for (const auto &[from, to] : entries) {
    if (!index.emplace(from, out.labels.size()).second)
      throw Error(ErrorCode::invalid_argument,
                  "check_h2_equivalence: '" + from + "' mapped twice");
    out.labels.push_back(from);
  }
  std::vector<std::size_t> image;
  image.reserve(entries.size());
  for (const auto &[from, to] : entries) {
    auto it = index.find(to);
    if (it == index.end())
      throw Error(ErrorCode::not_closed,
                  "check_h2_equivalence: F(" + from + ") = " + to + " is outside the domain");
    image.push_back(it->second);
  }
  out.report = check_h2_equivalence(std::span<const std::size_t>(image));
  return out;
}

} // namespace ordfix

#endif // ORDFIX_DECREASING_HPP
