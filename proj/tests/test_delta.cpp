#include "ordfix/delta.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ordfix;

namespace {

// Independent enumeration of the directed distance, for cross-checking.
double brute_directed(const std::vector<Vector> &a, const std::vector<Vector> &b, Norm n) {
  double sup = 0.0;
  for (const auto &x : a) {
    double inf = 1e300;
    for (const auto &y : b) {
      Vector d(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
      inf = std::min(inf, norm(d, n));
    }
    sup = std::max(sup, inf);
  }
  return sup;
}

} // namespace

TEST(Delta, SameSetIsZero) {
  PointSet a({{0, 1}, {2, 3}, {-1, 5}});
  EXPECT_EQ(delta(a, a), 0.0);
}

TEST(Delta, SingletonsReduceToNorm) {
  for (Norm n : {Norm::sup, Norm::euclidean, Norm::l1}) {
    auto a = PointSet::singleton({1, 2}, n), b = PointSet::singleton({4, -2}, n);
    EXPECT_EQ(delta(a, b), distance(Vector{1, 2}, Vector{4, -2}, n));
  }
  EXPECT_EQ(delta(PointSet::singleton({1, 2}, Norm::euclidean),
                  PointSet::singleton({4, -2}, Norm::euclidean)),
            5.0);
}

TEST(Delta, AsymmetricDirectedParts) {
  PointSet a({{0}}, Norm::euclidean), b({{1}, {3}}, Norm::euclidean);
  EXPECT_EQ(directed_delta(a, b), 1.0);
  EXPECT_EQ(directed_delta(b, a), 3.0);
  EXPECT_EQ(delta(a, b), 3.0);
}

TEST(Delta, MismatchErrors) {
  PointSet a(std::vector<Vector>{{0, 0}}), b(std::vector<Vector>{{0}});
  EXPECT_THROW(delta(a, b), Error);
  PointSet c({{0, 0}}, Norm::l1);
  EXPECT_THROW(delta(a, c), Error);
  EXPECT_THROW(PointSet(std::vector<Vector>{{0, 0}, {1}}), Error);
  EXPECT_THROW(PointSet(std::vector<Vector>{}), Error);
}

TEST(Delta, MatchesBruteForceAndLaws) {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<int> dim(1, 4), card(1, 8), coord(-4, 4);
  for (int t = 0; t < 300; ++t) {
    std::size_t d = dim(rng);
    auto make = [&] {
      std::vector<Vector> pts(card(rng), Vector(d));
      for (auto &p : pts)
        for (auto &x : p) x = 0.5 * coord(rng);
      return pts;
    };
    auto pa = make(), pb = make();
    for (Norm n : {Norm::sup, Norm::euclidean, Norm::l1}) {
      PointSet a(pa, n), b(pb, n);
      double expect = std::max(brute_directed(pa, pb, n), brute_directed(pb, pa, n));
      EXPECT_EQ(delta(a, b), expect);
      EXPECT_EQ(delta(a, b), delta(b, a));
      EXPECT_EQ(delta(a, b) == 0.0, same_points(a, b));
      double widest = 0.0;
      for (const auto &x : pa)
        for (const auto &y : pb) widest = std::max(widest, distance(x, y, n));
      EXPECT_LE(delta(a, b), widest);
    }
  }
}

TEST(Delta, DuplicatesDoNotMatter) {
  PointSet a({{1}, {2}}), b({{2}, {1}, {1}, {2}});
  EXPECT_EQ(delta(a, b), 0.0);
  EXPECT_TRUE(same_points(a, b));
  auto pts = a.points();
  pts.push_back(pts.front());
  EXPECT_EQ(delta(a, PointSet(pts)), 0.0);
}

TEST(MembershipResidual, Examples) {
  PointSet s({{0}, {5}}, Norm::euclidean);
  EXPECT_EQ(membership_residual(Vector{5}, s), 0.0);
  EXPECT_EQ(membership_residual(Vector{2}, s), 2.0);
  EXPECT_EQ(membership_residual(Vector{0, 0}, PointSet(std::vector<Vector>{{1, 3}}, Norm::sup)), 3.0);
  EXPECT_THROW(membership_residual(Vector{0, 0}, s), Error);
}

TEST(MembershipResidual, ZeroIffMember) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> coord(0, 3);
  for (int t = 0; t < 500; ++t) {
    std::vector<Vector> pts(3, Vector(2));
    for (auto &p : pts)
      for (auto &x : p) x = coord(rng);
    PointSet s(pts);
    Vector x{double(coord(rng)), double(coord(rng))};
    EXPECT_EQ(membership_residual(x, s) == 0.0, s.contains(x));
  }
}

TEST(DeltaContinuityProbe, ConstantMap) {
  PointSet s({{1, 1}, {2, 0}});
  std::vector<Vector> seq{{1, 0}, {0.5, 0}, {0.01, 0}};
  auto out = delta_continuity_probe([&](const Vector &) { return s; }, seq, Vector{0, 0}, 0.1);
  EXPECT_EQ(out, (std::vector<double>{0, 0, 0}));
}

TEST(DeltaContinuityProbe, SingletonMapGivesNormDistances) {
  std::vector<Vector> seq{{1.0}, {0.25}, {0.0625}};
  auto out = delta_continuity_probe([](const Vector &x) { return PointSet::singleton(x); },
                                    seq, Vector{0.0}, 0.1);
  EXPECT_EQ(out, (std::vector<double>{1.0, 0.25, 0.0625}));
}

TEST(DeltaContinuityProbe, TwoPointOffsetMap) {
  // T x = {x, x + c}: both directed parts reduce to |x_n - x| pointwise.
  const double c = 3.0;
  auto map = [&](const Vector &x) { return PointSet({x, {x[0] + c}}); };
  std::vector<Vector> seq{{0.5}, {0.125}, {0.03125}};
  auto out = delta_continuity_probe(map, seq, Vector{0.0}, 0.05);
  EXPECT_EQ(out, (std::vector<double>{0.5, 0.125, 0.03125}));
}

TEST(DeltaContinuityProbe, RejectsBadSequences) {
  auto map = [](const Vector &x) { return PointSet::singleton(x); };
  std::vector<Vector> empty;
  EXPECT_THROW(delta_continuity_probe(map, empty, Vector{0.0}, 0.1), Error);
  std::vector<Vector> far{{5.0}};
  EXPECT_THROW(delta_continuity_probe(map, far, Vector{0.0}, 0.1), Error);
}
