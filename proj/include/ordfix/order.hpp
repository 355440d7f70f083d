#ifndef ORDFIX_ORDER_HPP
#define ORDFIX_ORDER_HPP

#include "ordfix/core.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <utility>

namespace ordfix {

/// A closed convex pointed cone K in R^n, and with it the order
/// x <= y  iff  y - x in K.
///
/// Orthant cones are lattices; custom cones are opaque predicates whose cone
/// axioms can only be spot-checked (see `sample_cone_axioms`).
class ConeOrder {
public:
  enum class Kind { orthant, weighted_orthant, custom };
  using Predicate = std::function<bool(std::span<const double>)>;

  static ConeOrder orthant(std::size_t dimension) {
    return ConeOrder(Kind::orthant, dimension, {}, {});
  }

  /// {x : w_i x_i >= 0} with w_i > 0. Same set as the orthant, kept as its
  /// own kind so configs round-trip what the user wrote.
  static ConeOrder weighted_orthant(Vector weights) {
    if (weights.empty())
      throw Error(ErrorCode::invalid_argument, "weighted_orthant: no weights");
    for (double w : weights)
      if (!(w > 0.0) || !std::isfinite(w))
        throw Error(ErrorCode::invalid_argument,
                    "weighted_orthant: weights must be positive and finite");
    std::size_t n = weights.size();
    return ConeOrder(Kind::weighted_orthant, n, std::move(weights), {});
  }

  static ConeOrder custom(std::size_t dimension, Predicate member) {
    if (!member)
      throw Error(ErrorCode::invalid_argument, "custom cone: empty predicate");
    return ConeOrder(Kind::custom, dimension, {}, std::move(member));
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dimension_; }
  bool is_lattice() const noexcept { return kind_ != Kind::custom; }
  const Vector &weights() const noexcept { return weights_; }

  bool contains(std::span<const double> x) const {
    if (x.size() != dimension_)
      throw Error(ErrorCode::dimension_mismatch,
                  "cone membership: expected " + std::to_string(dimension_) +
                      " coordinates, got " + std::to_string(x.size()));
    switch (kind_) {
    case Kind::orthant:
      return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0; });
    case Kind::weighted_orthant:
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!(weights_[i] * x[i] >= 0.0)) return false;
      return true;
    case Kind::custom:
      return (*member_)(x);
    }
    return false;
  }

private:
  ConeOrder(Kind kind, std::size_t dimension, Vector weights, Predicate member)
      : kind_(kind), dimension_(dimension), weights_(std::move(weights)),
        member_(member ? std::make_shared<const Predicate>(std::move(member))
                       : nullptr) {
    if (dimension_ == 0)
      throw Error(ErrorCode::invalid_argument, "cone dimension must be positive");
  }

  Kind kind_;
  std::size_t dimension_;
  Vector weights_;
  std::shared_ptr<const Predicate> member_;
};

inline std::string_view to_string(ConeOrder::Kind k) {
  switch (k) {
  case ConeOrder::Kind::orthant: return "orthant";
  case ConeOrder::Kind::weighted_orthant: return "weighted_orthant";
  case ConeOrder::Kind::custom: return "custom";
  }
  return "unknown";
}

/// x <= y under the cone order. Exact: no tolerance enters the predicate.
inline bool leq(std::span<const double> x, std::span<const double> y,
                const ConeOrder &cone) {
  require_same_dimension(x, y, "leq");
  if (x.size() != cone.dimension())
    throw Error(ErrorCode::dimension_mismatch,
                "leq: vectors have " + std::to_string(x.size()) +
                    " coordinates, cone has " + std::to_string(cone.dimension()));
  if (cone.kind() != ConeOrder::Kind::custom) {
    // y - x >= 0 coordinatewise; compare directly so no rounding is involved.
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!(x[i] <= y[i])) return false;
    return true;
  }
  return cone.contains(subtract(y, x));
}

/// [lower, upper] = {x : lower <= x <= upper}.
class OrderInterval {
public:
  OrderInterval(Vector lower, Vector upper, ConeOrder cone)
      : lower_(std::move(lower)), upper_(std::move(upper)), cone_(std::move(cone)) {
    if (!leq(lower_, upper_, cone_))
      throw Error(ErrorCode::invalid_argument, "order interval: lower is not <= upper");
  }

  const Vector &lower() const noexcept { return lower_; }
  const Vector &upper() const noexcept { return upper_; }
  const ConeOrder &cone() const noexcept { return cone_; }

private:
  Vector lower_, upper_;
  ConeOrder cone_;
};

inline bool interval_contains(const OrderInterval &interval,
                              std::span<const double> x) {
  return leq(interval.lower(), x, interval.cone()) &&
         leq(x, interval.upper(), interval.cone());
}

/// Supremum of a finite chain, i.e. its top element. Throws not_a_chain
/// naming the first incomparable pair (by index).
inline Vector chain_sup(std::span<const Vector> chain, const ConeOrder &cone) {
  if (chain.empty())
    throw Error(ErrorCode::invalid_argument, "chain_sup: empty chain");
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i + 1; j < chain.size(); ++j)
      if (!leq(chain[i], chain[j], cone) && !leq(chain[j], chain[i], cone))
        throw Error(ErrorCode::not_a_chain,
                    "elements " + std::to_string(i) + " and " +
                        std::to_string(j) + " are incomparable");
  std::size_t top = 0;
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (leq(chain[top], chain[i], cone)) top = i;
  return chain[top];
}

struct NormalityEstimate {
  double lambda_lower_bound = 0.0;
  std::size_t samples_used = 0;
  std::optional<double> analytic_value;
};

namespace detail {

// Uniform draw from K intersected with the box [-1, 1]^n, by rejection for
// custom cones.
inline Vector sample_cone_member(const ConeOrder &cone, std::mt19937_64 &rng) {
  std::size_t n = cone.dimension();
  Vector x(n);
  if (cone.kind() != ConeOrder::Kind::custom) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto &v : x) v = unit(rng);
    return x;
  }
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (auto &v : x) v = box(rng);
    if (cone.contains(x)) return x;
  }
  throw Error(ErrorCode::invalid_argument,
              "custom cone: no member found by rejection sampling in [-1,1]^n");
}

inline Vector add(std::span<const double> a, std::span<const double> b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

} // namespace detail

/// Lower bound on the normal constant: the largest ||x|| / ||y|| seen over
/// random pairs 0 <= x <= y. For orthant cones the sup, euclidean and l1
/// norms are monotone, so the constant is exactly 1.
inline NormalityEstimate estimate_normality_constant(const ConeOrder &cone,
                                                     Norm norm_kind,
                                                     std::size_t samples,
                                                     std::uint64_t seed) {
  if (samples < 1)
    throw Error(ErrorCode::invalid_argument, "estimate_normality_constant: samples < 1");
  std::mt19937_64 rng(seed);
  NormalityEstimate est;
  for (std::size_t s = 0; s < samples; ++s) {
    Vector x = detail::sample_cone_member(cone, rng);
    Vector d = detail::sample_cone_member(cone, rng);
    Vector y = detail::add(x, d);
    double ny = norm(y, norm_kind);
    if (ny > 0.0)
      est.lambda_lower_bound = std::max(est.lambda_lower_bound, norm(x, norm_kind) / ny);
    ++est.samples_used;
  }
  if (cone.kind() != ConeOrder::Kind::custom) est.analytic_value = 1.0;
  return est;
}

struct ConeAxiomViolation {
  std::string axiom;
  Vector x, y;
};

/// Spot-checks the cone axioms (0 in K, closure under + and nonnegative
/// scaling, pointedness) on random draws. Returns the first violation found.
inline std::optional<ConeAxiomViolation>
sample_cone_axioms(const ConeOrder &cone, std::size_t samples, std::uint64_t seed) {
  std::size_t n = cone.dimension();
  Vector zero(n, 0.0);
  if (!cone.contains(zero)) return ConeAxiomViolation{"zero", zero, zero};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(0.0, 10.0);
  for (std::size_t s = 0; s < samples; ++s) {
    Vector x = detail::sample_cone_member(cone, rng);
    Vector y = detail::sample_cone_member(cone, rng);
    if (!cone.contains(detail::add(x, y)))
      return ConeAxiomViolation{"additivity", x, y};
    double t = scale(rng);
    Vector tx(x);
    for (auto &v : tx) v *= t;
    if (!cone.contains(tx)) return ConeAxiomViolation{"scaling", x, tx};
    Vector neg(x);
    for (auto &v : neg) v = -v;
    if (norm(x) > 0.0 && cone.contains(neg))
      return ConeAxiomViolation{"pointedness", x, neg};
    // A random probe anywhere in the box checks pointedness from outside K too.
    Vector z(n);
    for (auto &v : z) v = box(rng);
    Vector negz(z);
    for (auto &v : negz) v = -v;
    if (norm(z) > 0.0 && cone.contains(z) && cone.contains(negz))
      return ConeAxiomViolation{"pointedness", z, negz};
  }
  // Random probes almost never land on a lineality space, so also try the
  // sign patterns {-1,0,1}^n, where lines through coordinate faces show up.
  if (n <= 8) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    Vector v(n), negv(n);
    for (std::size_t code = 1; code < total; ++code) {
      for (std::size_t i = 0, c = code; i < n; ++i, c /= 3) {
        v[i] = static_cast<double>(c % 3) - 1.0;
        negv[i] = -v[i];
      }
      if (norm(v) > 0.0 && cone.contains(v) && cone.contains(negv))
        return ConeAxiomViolation{"pointedness", v, negv};
    }
  }
  return std::nullopt;
}

} // namespace ordfix

#endif // ORDFIX_ORDER_HPP
