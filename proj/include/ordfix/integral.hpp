#ifndef ORDFIX_INTEGRAL_HPP
#define ORDFIX_INTEGRAL_HPP

#include "ordfix/decreasing.hpp"

#include <functional>
#include <random>

namespace ordfix {

/*
 * Nonlinear singular integral equation on [0, 1]
 *
 *   psi(x) = int_0^1  R(x, y) / (x^2 - y^2)  dy  *  1 / (1 + psi(x)),
 *
 * equivalently 1 = Psi(x) + Psi(x)^2 * g(x) with Psi = 1 / (1 + psi) and
 * g(x) the inner integral. The right-hand side is a decreasing map of the
 * nonnegative cone into itself when R(x, y) has the sign of x - y, so the
 * alternating-orbit engine applies.
 *
 * Discretization: uniform grid x_i = i / (n - 1); the y-integral uses the
 * same nodes with cell weights (h/2 at the ends, h inside). The diagonal
 * node y = x is singular in the formula and is either skipped, with its cell
 * filled by linear interpolation of the neighbouring integrand values
 * (extrapolation at the two ends), or replaced by a caller-supplied diagonal
 * limit.
 */

/// Samples of a function on the uniform grid over [0, 1].
struct GridFunction {
  Vector values;

  std::size_t size() const noexcept { return values.size(); }
  double node(std::size_t i) const {
    return static_cast<double>(i) / static_cast<double>(values.size() - 1);
  }
  double operator[](std::size_t i) const { return values[i]; }
};

inline double grid_node(std::size_t i, std::size_t n) {
  return static_cast<double>(i) / static_cast<double>(n - 1);
}

enum class Quadrature { midpoint_diagonal_skip, diagonal_limit_substitution };

inline std::string_view to_string(Quadrature q) {
  return q == Quadrature::midpoint_diagonal_skip ? "midpoint_diagonal_skip"
                                                 : "diagonal_limit_substitution";
}

inline Quadrature parse_quadrature(std::string_view s) {
  if (s == "midpoint_diagonal_skip") return Quadrature::midpoint_diagonal_skip;
  if (s == "diagonal_limit_substitution") return Quadrature::diagonal_limit_substitution;
  throw Error(ErrorCode::invalid_argument, "unknown quadrature '" + std::string(s) + "'");
}

using Kernel = std::function<double(double, double)>;

struct IntegralProblem {
  Kernel kernel;
  double nu = 1.0;           // growth exponent in |R| <= M |x - y|^nu S
  double M = 1.0;            // growth constant
  std::size_t grid_size = 257;
  Quadrature quadrature = Quadrature::midpoint_diagonal_skip;
  /// lim_{y -> x} R(x, y) / (x^2 - y^2); required by diagonal_limit_substitution.
  std::function<double(double)> diagonal_limit;
  /// Bound assumed for the bounded factor S(x, y) when checking growth.
  double s_bound = 1.0;

  void validate() const {
    if (!kernel) throw Error(ErrorCode::invalid_argument, "integral problem: no kernel");
    if (grid_size < 3)
      throw Error(ErrorCode::invalid_argument, "integral problem: grid_size must be >= 3");
    if (!(nu > 0.0)) throw Error(ErrorCode::invalid_argument, "integral problem: nu must be > 0");
    if (!(M > 0.0)) throw Error(ErrorCode::invalid_argument, "integral problem: M must be > 0");
    if (!(s_bound >= 0.0))
      throw Error(ErrorCode::invalid_argument, "integral problem: s_bound must be >= 0");
  }
};

namespace kernels {

inline double zero(double, double) { return 0.0; }
/// (x - y)(x + y); the integrand R / (x^2 - y^2) is identically 1.
inline double separable_unit(double x, double y) { return (x - y) * (x + y); }
/// x (x - y)(x + y); the integrand is identically x.
inline double separable_linear(double x, double y) { return x * (x - y) * (x + y); }
/// Violates the sign condition wherever x < y.
inline double constant_one(double, double) { return 1.0; }

} // namespace kernels

/// Kernel given on a rectangular table, bilinear in between.
/// Nodes must be strictly increasing and cover [0, 1].
class TabulatedKernel {
public:
  TabulatedKernel(Vector xs, Vector ys, std::vector<Vector> table)
      : xs_(std::move(xs)), ys_(std::move(ys)), table_(std::move(table)) {
    auto check_axis = [](const Vector &a, const char *name) {
      if (a.size() < 2)
        throw Error(ErrorCode::invalid_argument, std::string("tabulated kernel: ") + name +
                                                     " axis needs at least two nodes");
      for (std::size_t i = 1; i < a.size(); ++i)
        if (!(a[i] > a[i - 1]))
          throw Error(ErrorCode::invalid_argument,
                      std::string("tabulated kernel: ") + name + " axis not increasing");
      if (a.front() > 0.0 || a.back() < 1.0)
        throw Error(ErrorCode::invalid_argument,
                    std::string("tabulated kernel: ") + name + " axis does not cover [0,1]");
    };
    check_axis(xs_, "x");
    check_axis(ys_, "y");
    if (table_.size() != xs_.size())
      throw Error(ErrorCode::dimension_mismatch, "tabulated kernel: row count");
    for (const auto &row : table_)
      if (row.size() != ys_.size())
        throw Error(ErrorCode::dimension_mismatch, "tabulated kernel: column count");
  }

  double operator()(double x, double y) const {
    auto [i, s] = locate(xs_, x);
    auto [j, t] = locate(ys_, y);
    double a = table_[i][j], b = table_[i][j + 1];
    double c = table_[i + 1][j], d = table_[i + 1][j + 1];
    // Exact at nodes so sign information in the table survives.
    if (t == 0.0 && s == 0.0) return a;
    return (1 - s) * ((1 - t) * a + t * b) + s * ((1 - t) * c + t * d);
  }

private:
  static std::pair<std::size_t, double> locate(const Vector &axis, double v) {
    auto it = std::upper_bound(axis.begin(), axis.end(), v);
    std::size_t hi = static_cast<std::size_t>(it - axis.begin());
    hi = std::clamp<std::size_t>(hi, 1, axis.size() - 1);
    std::size_t lo = hi - 1;
    double t = (v - axis[lo]) / (axis[hi] - axis[lo]);
    return {lo, std::clamp(t, 0.0, 1.0)};
  }

  Vector xs_, ys_;
  std::vector<Vector> table_;
};

struct KernelSample {
  double x, y, value;
};

struct KernelReport {
  std::vector<KernelSample> sign_violations;
  std::vector<KernelSample> growth_violations;
  /// Largest |R| / (M |x - y|^nu) seen off the diagonal: the sampled bound on S.
  double observed_s_bound = 0.0;
  std::size_t samples = 0;

  bool ok() const { return sign_violations.empty() && growth_violations.empty(); }
};

/// Samples (x, y) in [0, 1]^2 (the four corners first) and checks
///   sign:   R >= 0 for x >= y, R <= 0 for x < y
///   growth: |R| <= M |x - y|^nu s_bound.
inline KernelReport validate_kernel(const IntegralProblem &problem, std::size_t samples,
                                    std::uint64_t seed) {
  problem.validate();
  if (samples < 1) throw Error(ErrorCode::invalid_argument, "validate_kernel: samples < 1");
  KernelReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::pair<double, double> corners[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};

  for (std::size_t s = 0; s < samples; ++s) {
    double x, y;
    if (s < 4) {
      std::tie(x, y) = corners[s];
    } else {
      x = unit(rng);
      y = unit(rng);
    }
    double r = problem.kernel(x, y);
    ++rep.samples;
    if (!std::isfinite(r) || (x >= y && r < 0.0) || (x < y && r > 0.0))
      rep.sign_violations.push_back({x, y, r});
    double bound = problem.M * std::pow(std::abs(x - y), problem.nu);
    if (bound > 0.0) rep.observed_s_bound = std::max(rep.observed_s_bound, std::abs(r) / bound);
    // Relative slack absorbs rounding in products like (x - y)(x + y).
    if (!(std::abs(r) <= bound * problem.s_bound * (1.0 + 1e-12)))
      rep.growth_violations.push_back({x, y, r});
  }
  return rep;
}

/// g(x_i) = int_0^1 R(x_i, y) / (x_i^2 - y^2) dy on the grid. Values in
/// (-clamp_tol, 0) are rounding noise and are clamped to 0.
inline GridFunction compute_g(const IntegralProblem &problem, double clamp_tol = 1e-10) {
  problem.validate();
  const std::size_t n = problem.grid_size;
  const double h = 1.0 / static_cast<double>(n - 1);
  if (problem.quadrature == Quadrature::diagonal_limit_substitution && !problem.diagonal_limit)
    throw Error(ErrorCode::invalid_argument,
                "compute_g: diagonal_limit_substitution needs a diagonal limit");

  auto integrand = [&](std::size_t i, std::size_t j) {
    double x = grid_node(i, n), y = grid_node(j, n);
    // (x - y)(x + y) instead of x*x - y*y: no cancellation near the diagonal.
    double v = problem.kernel(x, y) / ((x - y) * (x + y));
    if (!std::isfinite(v))
      throw Error(ErrorCode::non_finite, "compute_g: integrand at node (x=" +
                                             std::to_string(x) + ", y=" + std::to_string(y) +
                                             ") is not finite");
    return v;
  };

  GridFunction g{Vector(n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double w = (j == 0 || j == n - 1) ? 0.5 * h : h;
      double v;
      if (j != i) {
        v = integrand(i, j);
      } else if (problem.quadrature == Quadrature::diagonal_limit_substitution) {
        v = problem.diagonal_limit(grid_node(i, n));
      } else if (i == 0) {
        v = 2.0 * integrand(i, 1) - integrand(i, 2);
      } else if (i == n - 1) {
        v = 2.0 * integrand(i, n - 2) - integrand(i, n - 3);
      } else {
        v = 0.5 * (integrand(i, i - 1) + integrand(i, i + 1));
      }
      sum += w * v;
    }
    if (sum < 0.0 && sum > -clamp_tol) sum = 0.0;
    g.values[i] = sum;
  }
  return g;
}

/// (F psi)(x) = g(x) / (1 + psi(x)). Decreasing in psi, pointwise.
inline GridFunction apply_operator(const GridFunction &psi, const GridFunction &g) {
  if (psi.size() != g.size())
    throw Error(ErrorCode::dimension_mismatch, "apply_operator: grid sizes differ");
  GridFunction out{Vector(psi.size())};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (!(psi[i] >= 0.0))
      throw Error(ErrorCode::invalid_argument,
                  "apply_operator: psi is negative at node " + std::to_string(i));
    out.values[i] = g[i] / (1.0 + psi[i]);
  }
  return out;
}

/// Root of psi (1 + psi) = g, the pointwise fixed-point identity.
inline double quadratic_root(double g) { return (std::sqrt(1.0 + 4.0 * g) - 1.0) / 2.0; }

struct IntegralSolution {
  GridFunction psi;
  GridFunction Psi;  // 1 / (1 + psi)
  GridFunction g;
  double residual = 0.0;      // ||F psi - psi||_sup
  double analytic_gap = 0.0;  // max |psi - quadratic_root(g)|
  KernelReport kernel_report;
  DecreasingResult engine;
};

struct SolveOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  bool skip_kernel_validation = false;
  std::size_t validation_samples = 2000;
  std::uint64_t seed = 0;
};

inline std::function<Vector(const Vector &)> integral_operator(const GridFunction &g) {
  return [g](const Vector &psi) { return apply_operator(GridFunction{psi}, g).values; };
}

/// Full pipeline: validate the kernel, build g, run the decreasing engine
/// from psi = 0, and recover Psi. Throws precondition_failed when the kernel
/// fails validation and `skip_kernel_validation` is off.
inline IntegralSolution solve(const IntegralProblem &problem, const SolveOptions &opts = {}) {
  problem.validate();
  IntegralSolution sol;
  sol.kernel_report = validate_kernel(problem, opts.validation_samples, opts.seed);
  if (!sol.kernel_report.ok() && !opts.skip_kernel_validation)
    throw Error(ErrorCode::precondition_failed,
                "kernel validation: " + std::to_string(sol.kernel_report.sign_violations.size()) +
                    " sign and " + std::to_string(sol.kernel_report.growth_violations.size()) +
                    " growth violations");

  sol.g = compute_g(problem, opts.tol);
  const std::size_t n = problem.grid_size;
  auto cone = ConeOrder::orthant(n);
  sol.engine = iterate_decreasing(integral_operator(sol.g), cone, opts.tol, opts.max_iter);

  sol.psi = GridFunction{sol.engine.point};
  sol.Psi = GridFunction{Vector(n)};
  for (std::size_t i = 0; i < n; ++i) {
    sol.Psi.values[i] = 1.0 / (1.0 + sol.psi[i]);
    sol.analytic_gap =
        std::max(sol.analytic_gap, std::abs(sol.psi[i] - quadratic_root(sol.g[i])));
  }
  sol.residual = distance(apply_operator(sol.psi, sol.g).values, sol.psi.values);
  return sol;
}

} // namespace ordfix

#endif // ORDFIX_INTEGRAL_HPP
