#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "steiner_ladder/geom.hpp"
#include "support.hpp"

using namespace steiner_ladder;

namespace {

double spoke_sum(const Point& x, const Point& a, const Point& b, const Point& c) {
  return distance(x, a) + distance(x, b) + distance(x, c);
}

// Coarse grid over the bounding box, then pattern search with shrinking step.
Point fermat_oracle(const Point& a, const Point& b, const Point& c) {
  const double x0 = std::min({a.x, b.x, c.x}), x1 = std::max({a.x, b.x, c.x});
  const double y0 = std::min({a.y, b.y, c.y}), y1 = std::max({a.y, b.y, c.y});
  Point best = a;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      const Point p{x0 + (x1 - x0) * i / 200.0, y0 + (y1 - y0) * j / 200.0};
      if (spoke_sum(p, a, b, c) < spoke_sum(best, a, b, c)) best = p;
    }
  double h = std::max(x1 - x0, y1 - y0) / 100.0;
  while (h > 1e-13) {
    bool moved = false;
    for (Point d : {Point{h, 0}, Point{-h, 0}, Point{0, h}, Point{0, -h}}) {
      if (spoke_sum(best + d, a, b, c) < spoke_sum(best, a, b, c)) {
        best = best + d;
        moved = true;
      }
    }
    if (!moved) h *= 0.5;
  }
  return best;
}

}  // namespace

TEST_CASE("equilateral third vertex on both sides") {
  const Point l = equilateral_third({0, 0}, {1, 0}, Side::left);
  const Point r = equilateral_third({0, 0}, {1, 0}, Side::right);
  CHECK(l.x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(l.y == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  CHECK(r.x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.y == doctest::Approx(-std::sqrt(3.0) / 2).epsilon(1e-15));

  const Point v = equilateral_third({0, 0}, {0, 2}, Side::left);
  CHECK(v.x == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
  CHECK(v.y == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(distance(v, {0, 0}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(distance(v, {0, 2}) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK_THROWS_AS(equilateral_third({1, 1}, {1, 1}, Side::left), DegenerateInput);
}

TEST_CASE("fermat point against a direct minimizer") {
  const Point a{0, 0}, b{1, 0}, c{0.5, std::sqrt(3.0) / 2};
  const FermatResult eq = fermat_point(a, b, c);
  CHECK(eq.kind == FermatKind::interior);
  CHECK(spoke_sum(eq.point, a, b, c) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(distance(eq.point, (a + b + c) / 3.0) < 1e-12);

  const Point tall{0.5, 10};
  const FermatResult f = fermat_point(a, b, tall);
  CHECK(f.kind == FermatKind::interior);
  CHECK(f.point.x == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(distance(f.point, fermat_oracle(a, b, tall)) < 1e-6);

  // 150 degrees at the origin.
  const Point p = unit_at(0.0), q = unit_at(5 * kPi / 6) * 2.0;
  const FermatResult v = fermat_point(p, Point{0, 0}, q);
  CHECK(v.kind == FermatKind::vertex);
  CHECK(v.vertex_index == 1);
  CHECK(v.point == Point{0, 0});

  std::mt19937_64 rng(test_support::seed());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const Point x{u(rng), u(rng)}, y{u(rng), u(rng)}, z{u(rng), u(rng)};
    if (std::abs(cross(y - x, z - x)) < 1e-3) continue;
    const FermatResult r = fermat_point(x, y, z);
    const Point o = fermat_oracle(x, y, z);
    CHECK(spoke_sum(r.point, x, y, z) <= spoke_sum(o, x, y, z) + 1e-10);
  }
}

TEST_CASE("angles") {
  CHECK(angle_at({0, 0}, {1, 0}, {0, 1}) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(angle_at({0, 0}, {1, 0}, {-1, 0}) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(angle_at({0, 0}, {1, 0}, unit_at(kTwoThirdsPi)) == doctest::Approx(kTwoThirdsPi).epsilon(1e-15));
}

TEST_CASE("hexagonal coordinates") {
  const HexFrame f = HexFrame::at_angle(0.0);
  f.validate();
  const HexCoord o = to_hex({0, 0}, f);
  CHECK(o.u == 0.0);
  CHECK(o.v == 0.0);
  CHECK(o.w == 0.0);
  const HexCoord e1 = to_hex(f.e1, f);
  CHECK(e1.u == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(e1.v) < 1e-15);
  CHECK(std::abs(e1.w) < 1e-15);

  // Independent 2x2 solve for e2 with v + w = 0: u e1 + v (e2 - e3) = e2.
  const Point d = f.e2 - f.e3;
  const double det = cross(f.e1, d);
  const double u = cross(f.e2, d) / det, v = cross(f.e1, f.e2) / det;
  const HexCoord e2 = to_hex(f.e2, f);
  CHECK(e2.u == doctest::Approx(u).epsilon(1e-14));
  CHECK(e2.v == doctest::Approx(v).epsilon(1e-14));
  CHECK(e2.w == doctest::Approx(-v).epsilon(1e-14));
  CHECK(u == doctest::Approx(-0.5).epsilon(1e-14));

  std::mt19937_64 rng(test_support::seed());
  std::uniform_real_distribution<double> c(-10.0, 10.0), th(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const HexFrame g = HexFrame::at_angle(th(rng), {c(rng), c(rng)});
    const Point p{c(rng), c(rng)};
    const HexCoord h = to_hex(p, g);
    CHECK(std::abs(h.v + h.w) < 1e-12);
    CHECK(distance(from_hex(h, g), p) < 1e-12 * (1.0 + p.norm()));
    const HexCoord shifted{h.u + 3.0, h.v + 3.0, h.w + 3.0};
    CHECK(distance(from_hex(shifted, g), p) < 1e-11 * (1.0 + p.norm()));
  }

  HexFrame bad = f;
  bad.e3 = f.e2;
  CHECK_THROWS_AS(bad.validate(), DegenerateInput);
}

TEST_CASE("small helpers") {
  Point x;
  CHECK(intersect_lines({0, 0}, {1, 1}, {1, 0}, {-1, 1}, x));
  CHECK(distance(x, {0.5, 0.5}) < 1e-15);
  CHECK_FALSE(intersect_lines({0, 0}, {1, 0}, {0, 1}, {2, 0}, x));
  CHECK(point_segment_distance({0.5, 2}, {0, 0}, {1, 0}) == doctest::Approx(2.0));
  CHECK(point_segment_distance({3, 0}, {0, 0}, {1, 0}) == doctest::Approx(2.0));
  CHECK(distance(reflect({1, 2}, {0, 0}, {1, 0}), {1, -2}) < 1e-15);
  CHECK_THROWS_AS(unit({0, 0}), DegenerateInput);
  CHECK_THROWS_AS(require_finite({std::nan(""), 0}, "p"), DegenerateInput);
}
