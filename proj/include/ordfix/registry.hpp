#ifndef ORDFIX_REGISTRY_HPP
#define ORDFIX_REGISTRY_HPP

#include "ordfix/integral.hpp"
#include "ordfix/setvalued.hpp"

#include <functional>

namespace ordfix::registry {

// Named maps used by the command-line tool and the test suites.

using Map = std::function<Vector(const Vector &)>;
using SetMap = std::function<PointSet(const Vector &)>;

struct NamedMap {
  Map map;
  std::size_t dimension;  // 0 = any
};

/// x -> (x + 2) / 2 on R, fixed point 2.
inline Vector affine_halfway(const Vector &x) { return {(x.at(0) + 2.0) / 2.0}; }

/// (x, y) -> (min(x + 0.5, 3), min(y + 0.5, 2)); reaches (3, 2) in six steps.
inline Vector capped_increment(const Vector &x) {
  return {std::min(x.at(0) + 0.5, 3.0), std::min(x.at(1) + 0.5, 2.0)};
}

/// x -> c / (1 + x) coordinatewise; decreasing on the nonnegative cone with
/// fixed point (sqrt(1 + 4c) - 1) / 2.
inline Map c_over_1px(double c) {
  return [c](const Vector &x) {
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = c / (1.0 + x[i]);
    return y;
  };
}

/// 1/x with 0 sent to 2: the orbit from 0 is 0, 2, 1/2, 2, 1/2, ...
inline Vector designed_two_cycle(const Vector &x) {
  double v = x.at(0);
  return {v == 0.0 ? 2.0 : 1.0 / v};
}

inline std::optional<NamedMap> increasing_map(std::string_view name) {
  if (name == "affine_halfway") return NamedMap{affine_halfway, 1};
  if (name == "identity") return NamedMap{[](const Vector &x) { return x; }, 0};
  if (name == "capped_increment") return NamedMap{capped_increment, 2};
  return std::nullopt;
}

inline std::optional<NamedMap> decreasing_map(std::string_view name, double c = 2.0) {
  if (name == "c_over_1px") return NamedMap{c_over_1px(c), 0};
  if (name == "zero") return NamedMap{[](const Vector &x) { return Vector(x.size(), 0.0); }, 0};
  if (name == "designed_two_cycle") return NamedMap{designed_two_cycle, 1};
  return std::nullopt;
}

/// On {0,1,2}^2: T(x) = {x, x + (1,0), x + (0,1)}, each step capped at 2.
inline FiniteSetValuedMap grid_steps() {
  const std::size_t extents[] = {3, 3};
  auto domain = make_box_lattice(extents);
  std::vector<PointSet> values;
  for (const auto &p : domain) {
    Vector right{std::min(p[0] + 1.0, 2.0), p[1]};
    Vector up{p[0], std::min(p[1] + 1.0, 2.0)};
    values.emplace_back(std::vector<Vector>{p, right, up});
  }
  return FiniteSetValuedMap(std::move(domain), std::move(values));
}

/// On {0,1,2}^2: T(x) holds the unit steps right and up that stay in the
/// box, and T(2,2) = {(2,2)}. Only the top lies in its own value.
inline FiniteSetValuedMap grid_climb() {
  const std::size_t extents[] = {3, 3};
  auto domain = make_box_lattice(extents);
  std::vector<PointSet> values;
  for (const auto &p : domain) {
    std::vector<Vector> next;
    if (p[0] < 2.0) next.push_back({p[0] + 1.0, p[1]});
    if (p[1] < 2.0) next.push_back({p[0], p[1] + 1.0});
    if (next.empty()) next.push_back(p);
    values.emplace_back(std::move(next));
  }
  return FiniteSetValuedMap(std::move(domain), std::move(values));
}

inline std::optional<FiniteSetValuedMap> setvalued_map(std::string_view name) {
  if (name == "grid_steps") return grid_steps();
  if (name == "grid_climb") return grid_climb();
  return std::nullopt;
}

struct NamedKernel {
  Kernel kernel;
  double nu, M;
  std::function<double(double)> diagonal_limit;
  bool has_oracle;  // integrand is free of y, so the quadrature is exact
};

inline std::optional<NamedKernel> kernel(std::string_view name) {
  if (name == "zero") return NamedKernel{kernels::zero, 1.0, 1.0, [](double) { return 0.0; }, true};
  if (name == "separable_unit")
    return NamedKernel{kernels::separable_unit, 1.0, 2.0, [](double) { return 1.0; }, true};
  if (name == "separable_linear")
    return NamedKernel{kernels::separable_linear, 1.0, 2.0, [](double x) { return x; }, true};
  if (name == "constant_one")
    return NamedKernel{kernels::constant_one, 1.0, 1.0, nullptr, false};
  return std::nullopt;
}

} // namespace ordfix::registry

#endif // ORDFIX_REGISTRY_HPP
