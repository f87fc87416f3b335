#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zeroset/errors.hpp"
#include "zeroset/field.hpp"
#include "zeroset/grid.hpp"

using namespace zeroset;

TEST_CASE("make_grid point counts") {
  CHECK(make_grid(1, 0.5, 1).size() == 5);
  CHECK(make_grid(7, 1.0 / 64, 6).size() == 897);
  CHECK(make_grid(7, 1.0 / 3, 6).size() == 43);
  const GridSpec g = make_grid(3, 1.0 / 256, 6, 2);
  CHECK(g.size() == 2 * (768 + 2) + 1);
  CHECK(g.halfwidth() == doctest::Approx(3 + 2.0 / 256));
}

TEST_CASE("make_grid rejects invalid geometry") {
  CHECK_THROWS_AS(make_grid(7, 0.3, 6), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 0.3, 6), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 0, 6), ConfigError);
  CHECK_THROWS_AS(make_grid(4, -0.25, 6), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 0.75, 6), ConfigError);
  CHECK_THROWS_AS(make_grid(0.5, 0.25, 6), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 0.25, 0.3), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 0.25, 6, -1), ConfigError);
}

TEST_CASE("index round trip is exact on every grid point") {
  for (const double delta : {0.5, 0.25, 1.0 / 3, 1.0 / 64}) {
    const GridSpec g = make_grid(2, delta, 6, 2);
    for (int k = 0; k < g.size(); ++k)
      for (int l = 0; l < g.size(); ++l) {
        const LatticePoint p = g.lattice_of(k, l);
        const auto back = g.index_of(g.point(p));
        REQUIRE(back.has_value());
        CHECK(*back == p);
        CHECK(g.row_of(p) == k);
        CHECK(g.col_of(p) == l);
      }
  }
}

TEST_CASE("grid corner is -L-iL and points are symmetric") {
  const GridSpec g = make_grid(2, 0.25, 6);
  CHECK(g.point_at(0, 0) == Complex(-2, -2));
  CHECK(g.point_at(g.size() - 1, g.size() - 1) == Complex(2, 2));
  CHECK(g.point_at(8, 8) == Complex(0, 0));
  CHECK_FALSE(g.index_of({0.1, 0}).has_value());
  CHECK_FALSE(g.index_of({2.25, 0}).has_value());
}

TEST_CASE("boxes are closed") {
  const Box b = Box::centered(1);
  CHECK(b.contains({1, -1}));
  CHECK(b.contains({0, 0}));
  CHECK_FALSE(b.contains({1.0000001, 0}));
  CHECK(b.area() == 4);
  CHECK(Box{0, 0, 0, 1}.area() == 0);
}

TEST_CASE("sup distance and row-major order") {
  CHECK(sup_distance({0, 0}, {2, -1}) == 2);
  CHECK(sup_distance({-3, 4}, {-3, 4}) == 0);
  CHECK(LatticePoint{0, 5} < LatticePoint{1, -5});
  CHECK(LatticePoint{1, -5} < LatticePoint{1, -4});
}

TEST_CASE("method names round trip") {
  for (const Method m : {Method::AMN, Method::MGN, Method::ST, Method::TrueProxy,
                         Method::RawThreshold})
    CHECK(parse_method(method_name(m)) == m);
  CHECK(parse_method("amn") == Method::AMN);
  CHECK_THROWS_AS(parse_method("foo"), ConfigError);
}

TEST_CASE("point set counts and separation") {
  PointSet s{{{0, 0}, {5, 0}, {40, 40}}, Method::AMN, 0.25, 11};
  CHECK(s.count_in(Box::centered(1.25)) == 2);
  CHECK(s.count_in(Box::centered(1.0)) == 1);
  CHECK(s.min_separation() == 5);
  CHECK(PointSet{}.min_separation() > 1000000);
}

namespace {

WeightedField<double> index_field(const GridSpec& g) {
  WeightedField<double>::Values v(g.size(), g.size());
  for (int k = 0; k < g.size(); ++k)
    for (int l = 0; l < g.size(); ++l) v(k, l) = Complex(k + 10.0 * l, -k);
  return WeightedField<double>(g, v);
}

}  // namespace

TEST_CASE("subsample keeps values at even indices") {
  const GridSpec g = make_grid(1, 0.25, 1);  // 9 x 9
  const auto f = index_field(g);
  const auto s = subsample(f);
  REQUIRE(s.grid().size() == 5);
  CHECK(s.grid().delta() == 0.5);
  CHECK(s.grid().point_at(0, 0) == g.point_at(0, 0));
  for (int k = 0; k < 5; ++k)
    for (int l = 0; l < 5; ++l) CHECK(s.values()(k, l) == f.values()(2 * k, 2 * l));
}

TEST_CASE("subsample twice equals stride four") {
  const GridSpec g = make_grid(2, 0.125, 2);  // 33 x 33
  std::mt19937 rng(7);
  std::normal_distribution<double> n;
  WeightedField<double>::Values v(g.size(), g.size());
  for (int k = 0; k < g.size(); ++k)
    for (int l = 0; l < g.size(); ++l) v(k, l) = {n(rng), n(rng)};
  const WeightedField<double> f(g, v);
  const auto s2 = subsample(subsample(f));
  REQUIRE(s2.grid().size() == 9);
  for (int k = 0; k < 9; ++k)
    for (int l = 0; l < 9; ++l) CHECK(s2.values()(k, l) == v(4 * k, 4 * l));
  // every coarse point is the same plane location as its fine source
  for (int k = 0; k < 9; ++k) CHECK(s2.grid().point_at(k, k) == g.point_at(4 * k, 4 * k));
}

TEST_CASE("subsample of a 1025 grid keeps corners") {
  const GridSpec g = make_grid(4, 1.0 / 128, 6);
  REQUIRE(g.size() == 1025);
  const auto f = index_field(g);
  const auto s = subsample(f);
  CHECK(s.grid().size() == 513);
  CHECK(s.values()(0, 0) == f.values()(0, 0));
  CHECK(s.values()(512, 512) == f.values()(1024, 1024));
  CHECK(s.values()(0, 512) == f.values()(0, 1024));
}

TEST_CASE("subsample rejects indivisible grids") {
  CHECK_THROWS_AS(coarsened(make_grid(1, 0.5, 1)), SubsampleError);
  CHECK_THROWS_AS(coarsened(make_grid(3, 1.0 / 3, 1)), SubsampleError);  // 9 steps
  CHECK_THROWS_AS(coarsened(make_grid(2, 0.25, 2, 1)), SubsampleError);
  CHECK_NOTHROW(coarsened(make_grid(2, 0.25, 2, 2)));
}
