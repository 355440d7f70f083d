#include "ordfix/io.hpp"
#include "ordfix/registry.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ordfix;

TEST(PointSetCsv, ParsesWithAndWithoutHeader) {
  std::istringstream plain("0,1\n2.5,-3\n\n# comment\n4,5\n");
  auto a = io::read_point_set(plain);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[1], (Vector{2.5, -3}));
  std::istringstream headed("x,y\n1,2\n");
  auto b = io::read_point_set(headed);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], (Vector{1, 2}));
}

TEST(PointSetCsv, MalformedNamesRowAndColumn) {
  std::istringstream bad("1,2\n3,abc\n");
  try {
    io::read_point_set(bad, Norm::sup, "pts.csv");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
    EXPECT_NE(std::string(e.what()).find("pts.csv: row 2, column 2"), std::string::npos);
  }
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(io::read_point_set(ragged), Error);
  std::istringstream empty("");
  EXPECT_THROW(io::read_point_set(empty), Error);
}

TEST(PointSetCsv, RoundTripPreservesBits) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int t = 0; t < 50; ++t) {
    std::vector<Vector> pts(7, Vector(3));
    for (auto &p : pts)
      for (auto &x : p) x = u(rng) * std::pow(10.0, t % 9 - 4);
    PointSet s(pts);
    std::stringstream buf;
    io::write_point_set(buf, s);
    auto back = io::read_point_set(buf);
    EXPECT_EQ(back.points(), s.points());
    EXPECT_EQ(delta(s, back), 0.0);
  }
}

TEST(TraceCsv, LayoutAndColumns) {
  auto r = iterate_decreasing(registry::c_over_1px(2.0), ConeOrder::orthant(1), 1e-3, 100);
  std::stringstream buf;
  io::write_trace_csv(buf, r.trace);
  std::string header;
  std::getline(buf, header);
  EXPECT_EQ(header, "iteration,x0,residual,order_certified,sandwich_width");
  std::string row0, row1;
  std::getline(buf, row0);
  std::getline(buf, row1);
  EXPECT_EQ(row0, "0,0,,1,");
  EXPECT_EQ(row1, "1,2,2,1,2");
}

TEST(ResultJson, Fields) {
  auto r = iterate_decreasing(registry::designed_two_cycle, ConeOrder::orthant(1), 1e-10, 50);
  auto j = io::to_json(r);
  EXPECT_EQ(j["termination"], "h1_violation");
  EXPECT_EQ(j["h1_gap"], 1.5);
  EXPECT_EQ(j["point"], (std::vector<double>{0.5}));
}

TEST(KernelCsv, ReadsTable) {
  std::istringstream in("x\\y,0,1\n0,0,-1\n1,1,0\n");
  auto k = io::read_kernel_csv(in);
  EXPECT_EQ(k(0, 1), -1.0);
  EXPECT_EQ(k(1, 0), 1.0);
  EXPECT_EQ(k(0.5, 0.5), 0.0);
  std::istringstream bad("x,0,1\n0,0\n1,1,0\n");
  EXPECT_THROW(io::read_kernel_csv(bad), Error);
}

TEST(SetValuedJson, RoundTrip) {
  auto m = registry::grid_steps();
  auto back = io::read_setvalued_json(io::to_json(m));
  EXPECT_EQ(back.domain(), m.domain());
  for (std::size_t i = 0; i < m.size(); ++i)
    EXPECT_EQ(back.values()[i].points(), m.values()[i].points());
  EXPECT_THROW(io::read_setvalued_json(io::json{{"domain", 3}}), Error);
}

TEST(LabelledMap, HeaderAndErrors) {
  std::istringstream in("from,to\na,b\nb,a\n");
  auto m = io::read_labelled_map(in);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], (std::pair<std::string, std::string>{"a", "b"}));
  std::istringstream bad("a,b,c\n");
  EXPECT_THROW(io::read_labelled_map(bad), Error);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(io::format_double(3.0), "3");
  EXPECT_EQ(io::format_double(0.1), "0.1");
  double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  EXPECT_EQ(*io::parse_double(io::format_double(phi)), phi);
}
