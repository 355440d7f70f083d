#ifndef ORDFIX_DELTA_HPP
#define ORDFIX_DELTA_HPP

#include "ordfix/core.hpp"

#include <limits>
#include <utility>

namespace ordfix {

/// A nonempty finite subset of R^n together with the norm its distances use.
/// Finite sets are closed and bounded, so they are their own closures.
class PointSet {
public:
  explicit PointSet(std::vector<Vector> points, Norm norm_kind = Norm::sup)
      : points_(std::move(points)), norm_(norm_kind) {
    if (points_.empty())
      throw Error(ErrorCode::invalid_argument, "point set must be nonempty");
    for (const auto &p : points_)
      if (p.size() != points_.front().size())
        throw Error(ErrorCode::dimension_mismatch,
                    "point set: mixed dimensions " + std::to_string(p.size()) +
                        " and " + std::to_string(points_.front().size()));
  }

  static PointSet singleton(Vector x, Norm norm_kind = Norm::sup) {
    return PointSet({std::move(x)}, norm_kind);
  }

  std::size_t dimension() const noexcept { return points_.front().size(); }
  std::size_t size() const noexcept { return points_.size(); }
  Norm norm_kind() const noexcept { return norm_; }
  const std::vector<Vector> &points() const noexcept { return points_; }
  const Vector &operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  bool contains(std::span<const double> x) const {
    for (const auto &p : points_)
      if (std::equal(p.begin(), p.end(), x.begin(), x.end())) return true;
    return false;
  }

  /// Sorted, duplicate-free copy. Equality of coordinates is exact.
  PointSet deduplicated() const {
    std::vector<Vector> pts = points_;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return PointSet(std::move(pts), norm_);
  }

  /// Set equality after deduplication.
  friend bool same_points(const PointSet &a, const PointSet &b) {
    return a.deduplicated().points_ == b.deduplicated().points_;
  }

private:
  std::vector<Vector> points_;
  Norm norm_;
};

inline void require_compatible(const PointSet &a, const PointSet &b,
                               std::string_view where) {
  if (a.dimension() != b.dimension())
    throw Error(ErrorCode::dimension_mismatch,
                std::string(where) + ": dimensions " + std::to_string(a.dimension()) +
                    " and " + std::to_string(b.dimension()));
  if (a.norm_kind() != b.norm_kind())
    throw Error(ErrorCode::invalid_argument,
                std::string(where) + ": norms " + std::string(to_string(a.norm_kind())) +
                    " and " + std::string(to_string(b.norm_kind())));
}

/// inf over s in S of ||x - s||; zero exactly when x is one of the points.
inline double membership_residual(std::span<const double> x, const PointSet &s) {
  if (x.size() != s.dimension())
    throw Error(ErrorCode::dimension_mismatch,
                "membership_residual: point has " + std::to_string(x.size()) +
                    " coordinates, set has " + std::to_string(s.dimension()));
  double best = std::numeric_limits<double>::infinity();
  for (const auto &p : s) best = std::min(best, distance(x, p, s.norm_kind()));
  return best;
}

/// sup over a in A of inf over b in B of ||a - b||.
inline double directed_delta(const PointSet &a, const PointSet &b) {
  require_compatible(a, b, "directed_delta");
  double worst = 0.0;
  for (const auto &p : a) worst = std::max(worst, membership_residual(p, b));
  return worst;
}

/// The delta-distance: max of the two directed sup-inf distances, by double
/// enumeration. On finite sets this is the Hausdorff distance.
inline double delta(const PointSet &a, const PointSet &b) {
  require_compatible(a, b, "delta");
  return std::max(directed_delta(a, b), directed_delta(b, a));
}

/// delta(T x_n, T x) for each x_n of a sequence converging to x. The last
/// element must lie within `convergence_tol` of the limit.
template <class SetMap>
std::vector<double> delta_continuity_probe(SetMap &&map,
                                           std::span<const Vector> sequence,
                                           std::span<const double> limit,
                                           double convergence_tol,
                                           Norm norm_kind = Norm::sup) {
  if (sequence.empty())
    throw Error(ErrorCode::invalid_argument, "delta_continuity_probe: empty sequence");
  if (distance(sequence.back(), limit, norm_kind) > convergence_tol)
    throw Error(ErrorCode::precondition_failed,
                "delta_continuity_probe: sequence does not reach its limit");
  const PointSet at_limit = map(Vector(limit.begin(), limit.end()));
  std::vector<double> out;
  out.reserve(sequence.size());
  for (const auto &x : sequence) out.push_back(delta(map(x), at_limit));
  return out;
}

} // namespace ordfix

#endif // ORDFIX_DELTA_HPP
