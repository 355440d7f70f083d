#include "ordfix/order.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ordfix;

namespace {

Vector random_vector(std::mt19937_64 &rng, std::size_t n, int lo = -3, int hi = 3) {
  // Small integers make equal coordinates (and comparable pairs) common.
  std::uniform_int_distribution<int> d(lo, hi);
  Vector v(n);
  for (auto &x : v) x = d(rng);
  return v;
}

// Second-order cone {x : x_n >= ||(x_1..x_{n-1})||_2}.
ConeOrder lorentz(std::size_t n) {
  return ConeOrder::custom(n, [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) s += x[i] * x[i];
    return x.back() >= std::sqrt(s);
  });
}

} // namespace

TEST(Leq, OrthantExamples) {
  auto k = ConeOrder::orthant(2);
  EXPECT_TRUE(leq(Vector{1, 1}, Vector{2, 3}, k));
  EXPECT_FALSE(leq(Vector{1, 3}, Vector{2, 2}, k));
  EXPECT_FALSE(leq(Vector{2, 2}, Vector{1, 3}, k));
}

TEST(Leq, ReflexiveForEveryCone) {
  Vector x{0.3, -1.2, 4.0};
  EXPECT_TRUE(leq(x, x, ConeOrder::orthant(3)));
  EXPECT_TRUE(leq(x, x, ConeOrder::weighted_orthant({1.0, 2.0, 0.5})));
  EXPECT_TRUE(leq(x, x, lorentz(3)));
}

TEST(Leq, DimensionMismatch) {
  auto k = ConeOrder::orthant(2);
  try {
    leq(Vector{1, 2}, Vector{1, 2, 3}, k);
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
  EXPECT_THROW(leq(Vector{1, 2, 3}, Vector{1, 2, 3}, k), Error);
}

TEST(Leq, CustomConeUsesMembership) {
  auto k = lorentz(3);
  EXPECT_TRUE(leq(Vector{0, 0, 0}, Vector{1, 0, 2}, k));
  EXPECT_FALSE(leq(Vector{0, 0, 0}, Vector{3, 0, 2}, k));
}

TEST(Leq, PartialOrderLawsOnRandomTriples) {
  std::mt19937_64 rng(7);
  auto k = ConeOrder::orthant(3);
  for (int t = 0; t < 2000; ++t) {
    auto x = random_vector(rng, 3), y = random_vector(rng, 3), z = random_vector(rng, 3);
    EXPECT_TRUE(leq(x, x, k));
    if (leq(x, y, k) && leq(y, x, k)) { EXPECT_EQ(x, y); }
    if (leq(x, y, k) && leq(y, z, k)) { EXPECT_TRUE(leq(x, z, k)); }
    bool coordinatewise = true;
    for (std::size_t i = 0; i < 3; ++i) coordinatewise &= x[i] <= y[i];
    EXPECT_EQ(leq(x, y, k), coordinatewise);
  }
}

TEST(ConeOrder, RejectsBadConstruction) {
  EXPECT_THROW(ConeOrder::orthant(0), Error);
  EXPECT_THROW(ConeOrder::weighted_orthant({1.0, 0.0}), Error);
  EXPECT_THROW(ConeOrder::weighted_orthant({}), Error);
  EXPECT_THROW(ConeOrder::custom(2, nullptr), Error);
}

TEST(ConeOrder, AxiomsHoldOnSamples) {
  EXPECT_FALSE(sample_cone_axioms(ConeOrder::orthant(4), 500, 1));
  EXPECT_FALSE(sample_cone_axioms(ConeOrder::weighted_orthant({2, 3}), 500, 2));
  EXPECT_FALSE(sample_cone_axioms(lorentz(3), 500, 3));
}

TEST(ConeOrder, AxiomSamplerCatchesAHalfSpace) {
  // {x : x_0 >= 0} is a convex cone but not pointed.
  auto half = ConeOrder::custom(2, [](std::span<const double> x) { return x[0] >= 0.0; });
  auto v = sample_cone_axioms(half, 500, 4);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->axiom, "pointedness");
}

TEST(OrderInterval, Contains) {
  auto k = ConeOrder::orthant(2);
  OrderInterval box({0, 0}, {1, 1}, k);
  EXPECT_TRUE(interval_contains(box, Vector{0.5, 0.5}));
  EXPECT_FALSE(interval_contains(box, Vector{1.5, 0.5}));
  OrderInterval point({2, 3}, {2, 3}, k);
  EXPECT_TRUE(interval_contains(point, Vector{2, 3}));
  EXPECT_THROW(interval_contains(box, Vector{0.5}), Error);
}

TEST(OrderInterval, LowerMustBeBelowUpper) {
  EXPECT_THROW(OrderInterval({1, 0}, {0, 1}, ConeOrder::orthant(2)), Error);
}

TEST(ChainSup, Examples) {
  auto k = ConeOrder::orthant(2);
  std::vector<Vector> chain{{0, 0}, {1, 1}, {2, 2}};
  EXPECT_EQ(chain_sup(chain, k), (Vector{2, 2}));
  std::vector<Vector> single{{4, -1}};
  EXPECT_EQ(chain_sup(single, k), (Vector{4, -1}));
  std::vector<Vector> bad{{0, 0}, {1, 0}, {0, 1}};
  try {
    chain_sup(bad, k);
    FAIL() << "expected not_a_chain";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::not_a_chain);
    EXPECT_NE(std::string(e.what()).find("1 and 2"), std::string::npos);
  }
}

TEST(ChainSup, TopBoundsEveryElementAndBelongsToChain) {
  std::mt19937_64 rng(11);
  auto k = ConeOrder::orthant(3);
  for (int t = 0; t < 200; ++t) {
    // Build a chain by adding nonnegative increments, then shuffle it.
    std::vector<Vector> chain{random_vector(rng, 3)};
    for (int i = 0; i < 6; ++i) {
      auto step = random_vector(rng, 3, 0, 2);
      Vector next = chain.back();
      for (std::size_t j = 0; j < 3; ++j) next[j] += step[j];
      chain.push_back(next);
    }
    std::shuffle(chain.begin(), chain.end(), rng);
    auto top = chain_sup(chain, k);
    EXPECT_NE(std::find(chain.begin(), chain.end(), top), chain.end());
    for (const auto &c : chain) EXPECT_TRUE(leq(c, top, k));
  }
}

TEST(Normality, OrthantSupNormExhaustiveGrid) {
  // Oracle: every pair 0 <= x <= y on the grid {0, 0.5, 1}^3 has
  // ||x||_sup <= ||y||_sup.
  const double vals[] = {0.0, 0.5, 1.0};
  double worst = 0.0;
  for (int a = 0; a < 27; ++a)
    for (int b = 0; b < 27; ++b) {
      Vector x{vals[a % 3], vals[a / 3 % 3], vals[a / 9]};
      Vector y{vals[b % 3], vals[b / 3 % 3], vals[b / 9]};
      bool below = true;
      for (int i = 0; i < 3; ++i) below &= x[i] <= y[i];
      if (below && norm(y) > 0) worst = std::max(worst, norm(x) / norm(y));
    }
  EXPECT_EQ(worst, 1.0);

  auto est = estimate_normality_constant(ConeOrder::orthant(3), Norm::sup, 5000, 42);
  ASSERT_TRUE(est.analytic_value);
  EXPECT_EQ(*est.analytic_value, 1.0);
  EXPECT_LE(est.lambda_lower_bound, 1.0);
  EXPECT_GT(est.lambda_lower_bound, 0.5);
  EXPECT_EQ(est.samples_used, 5000u);
}

TEST(Normality, ScalarCaseEveryNorm) {
  for (Norm n : {Norm::sup, Norm::euclidean, Norm::l1}) {
    auto est = estimate_normality_constant(ConeOrder::orthant(1), n, 100, 3);
    ASSERT_TRUE(est.analytic_value);
    EXPECT_EQ(*est.analytic_value, 1.0);
    EXPECT_LE(est.lambda_lower_bound, 1.0);
  }
}

TEST(Normality, CustomConeHasNoClosedForm) {
  auto est = estimate_normality_constant(lorentz(3), Norm::euclidean, 500, 5);
  EXPECT_FALSE(est.analytic_value);
  EXPECT_GT(est.lambda_lower_bound, 0.0);
  EXPECT_THROW(estimate_normality_constant(lorentz(3), Norm::sup, 0, 5), Error);
}

TEST(Normality, NeverExceedsAnalyticValueAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    for (Norm n : {Norm::sup, Norm::euclidean, Norm::l1}) {
      auto est = estimate_normality_constant(ConeOrder::orthant(4), n, 200, seed);
      EXPECT_LE(est.lambda_lower_bound, *est.analytic_value);
    }
}
