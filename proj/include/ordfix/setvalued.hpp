#ifndef ORDFIX_SETVALUED_HPP
#define ORDFIX_SETVALUED_HPP

#include "ordfix/delta.hpp"
#include "ordfix/increasing.hpp"

#include <map>

namespace ordfix {

/// All integer points of the box prod_i {0, ..., extents[i]-1}, in
/// lexicographic order.
inline std::vector<Vector> make_box_lattice(std::span<const std::size_t> extents) {
  if (extents.empty())
    throw Error(ErrorCode::invalid_argument, "box lattice: no extents");
  std::size_t total = 1;
  for (auto e : extents) {
    if (e == 0) throw Error(ErrorCode::invalid_argument, "box lattice: zero extent");
    total *= e;
  }
  std::vector<Vector> pts;
  pts.reserve(total);
  Vector p(extents.size(), 0.0);
  for (std::size_t k = 0; k < total; ++k) {
    pts.push_back(p);
    for (std::size_t i = extents.size(); i-- > 0;) {
      p[i] += 1.0;
      if (p[i] < static_cast<double>(extents[i])) break;
      p[i] = 0.0;
    }
  }
  return pts;
}

/// T : D -> 2^D \ {empty} on an explicit finite domain D.
class FiniteSetValuedMap {
public:
  FiniteSetValuedMap(std::vector<Vector> domain, std::vector<PointSet> values)
      : domain_(std::move(domain)), values_(std::move(values)) {
    if (domain_.empty())
      throw Error(ErrorCode::invalid_argument, "set-valued map: empty domain");
    if (domain_.size() != values_.size())
      throw Error(ErrorCode::invalid_argument,
                  "set-valued map: " + std::to_string(domain_.size()) +
                      " domain points but " + std::to_string(values_.size()) + " values");
    for (std::size_t i = 0; i < domain_.size(); ++i) {
      if (domain_[i].size() != domain_.front().size())
        throw Error(ErrorCode::dimension_mismatch, "set-valued map: mixed domain dimensions");
      if (!index_.emplace(domain_[i], i).second)
        throw Error(ErrorCode::invalid_argument, "set-valued map: repeated domain point");
    }
    for (std::size_t i = 0; i < values_.size(); ++i)
      for (const auto &p : values_[i])
        if (!index_.contains(p))
          throw Error(ErrorCode::not_closed,
                      "set-valued map: value of domain point " + std::to_string(i) +
                          " leaves the domain");
  }

  std::size_t dimension() const noexcept { return domain_.front().size(); }
  std::size_t size() const noexcept { return domain_.size(); }
  const std::vector<Vector> &domain() const noexcept { return domain_; }
  const std::vector<PointSet> &values() const noexcept { return values_; }

  std::optional<std::size_t> index_of(const Vector &x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const PointSet &operator()(const Vector &x) const {
    auto i = index_of(x);
    if (!i) throw Error(ErrorCode::invalid_argument, "set-valued map: point outside the domain");
    return values_[*i];
  }

private:
  std::vector<Vector> domain_;
  std::vector<PointSet> values_;
  std::map<Vector, std::size_t> index_;
};

/// How the set-valued engine picks x_{n+1} among the upper candidates
/// {w in T(x_n) : x_n <= w}. Ties always fall back to lexicographic order.
enum class Selector { least_upper_candidate, min_norm_step, lexicographic };

inline std::string_view to_string(Selector s) {
  switch (s) {
  case Selector::least_upper_candidate: return "least_upper_candidate";
  case Selector::min_norm_step: return "min_norm_step";
  case Selector::lexicographic: return "lexicographic";
  }
  return "unknown";
}

inline Selector parse_selector(std::string_view s) {
  if (s == "least_upper_candidate") return Selector::least_upper_candidate;
  if (s == "min_norm_step") return Selector::min_norm_step;
  if (s == "lexicographic") return Selector::lexicographic;
  throw Error(ErrorCode::invalid_argument, "unknown selector '" + std::string(s) + "'");
}

namespace detail {

inline std::optional<Vector> select_upper(const Vector &x, const PointSet &values,
                                          const ConeOrder &cone, Selector sel) {
  std::vector<const Vector *> upper;
  for (const auto &w : values)
    if (leq(x, w, cone)) upper.push_back(&w);
  if (upper.empty()) return std::nullopt;

  auto lex = [](const Vector *a, const Vector *b) { return *a < *b; };
  switch (sel) {
  case Selector::lexicographic:
    return **std::min_element(upper.begin(), upper.end(), lex);
  case Selector::min_norm_step: {
    auto key = [&](const Vector *w) { return distance(*w, x, values.norm_kind()); };
    return **std::min_element(upper.begin(), upper.end(), [&](auto *a, auto *b) {
      double ka = key(a), kb = key(b);
      return ka < kb || (ka == kb && *a < *b);
    });
  }
  case Selector::least_upper_candidate: {
    // Keep the order-minimal candidates; a least one, if any, is the only
    // survivor.
    std::vector<const Vector *> minimal;
    for (auto *w : upper) {
      bool dominated = false;
      for (auto *o : upper)
        if (*o != *w && leq(*o, *w, cone)) { dominated = true; break; }
      if (!dominated) minimal.push_back(w);
    }
    return **std::min_element(minimal.begin(), minimal.end(), lex);
  }
  }
  return std::nullopt;
}

} // namespace detail

/// Monotone iteration for a set-valued map: x_{n+1} in T(x_n) with
/// x_n <= x_{n+1}. Stops as soon as the distance from x_n to T(x_n) is at
/// most tol, so a start that already lies in its own value returns at once.
template <class SetMap>
  requires std::invocable<SetMap &, const Vector &>
FixedPointResult iterate_setvalued(SetMap &&map, const Vector &x0, const ConeOrder &cone,
                                   double tol, std::size_t max_iter,
                                   Selector selector = Selector::lexicographic) {
  require_iteration_params(tol, max_iter);
  if (x0.size() != cone.dimension())
    throw Error(ErrorCode::dimension_mismatch, "iterate_setvalued: start point");

  auto values_at = [&](const Vector &x) -> PointSet { return map(x); };

  PointSet current_values = values_at(x0);
  if (!std::any_of(current_values.begin(), current_values.end(),
                   [&](const Vector &w) { return leq(x0, w, cone); }))
    throw Error(ErrorCode::precondition_failed,
                "iterate_setvalued: T(x0) has no point above x0");

  FixedPointResult out;
  IterationTrace &tr = out.trace;
  tr.iterates.push_back(x0);
  tr.order_certified.push_back(true);
  double residual = membership_residual(x0, current_values);

  if (residual <= tol) {
    tr.terminated_by = Termination::converged;
  } else {
    for (std::size_t step = 0; step < max_iter; ++step) {
      const Vector &cur = tr.iterates.back();
      auto next = detail::select_upper(cur, current_values, cone, selector);
      if (!next) {
        tr.terminated_by = Termination::order_violation;
        tr.violation_index = tr.iterates.size() - 1;
        break;
      }
      current_values = values_at(*next);
      residual = membership_residual(*next, current_values);
      tr.iterates.push_back(std::move(*next));
      tr.residuals.push_back(residual);
      tr.order_certified.push_back(true);
      if (residual <= tol) {
        tr.terminated_by = Termination::converged;
        break;
      }
    }
  }

  out.point = tr.iterates.back();
  out.residual = residual;
  out.above_start = leq(x0, out.point, cone);
  return out;
}

/// Fixed-point set of a finite set-valued map, with its order-maximal and
/// order-minimal elements. Exhaustive, so it serves as the oracle for the
/// set-valued engine.
struct PosetAnalysis {
  std::vector<Vector> fixed_points;
  std::vector<Vector> maximal;
  std::vector<Vector> minimal;
  bool is_nonempty = false;
};

inline PosetAnalysis enumerate_fixed_points(const FiniteSetValuedMap &map,
                                            const ConeOrder &cone) {
  PosetAnalysis out;
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map.values()[i].contains(map.domain()[i]))
      out.fixed_points.push_back(map.domain()[i]);
  out.is_nonempty = !out.fixed_points.empty();

  const auto &fp = out.fixed_points;
  for (const auto &x : fp) {
    bool has_above = false, has_below = false;
    for (const auto &y : fp) {
      if (y == x) continue;
      if (leq(x, y, cone)) has_above = true;
      if (leq(y, x, cone)) has_below = true;
    }
    if (!has_above) out.maximal.push_back(x);
    if (!has_below) out.minimal.push_back(x);
  }
  return out;
}

} // namespace ordfix

#endif // ORDFIX_SETVALUED_HPP
