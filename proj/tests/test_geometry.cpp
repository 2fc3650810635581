#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "fixtures.hpp"
#include "vemnsch/geometry.hpp"

using namespace vemnsch;

namespace {
const std::vector<Vec2> unit_square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
// L-shaped hexagon whose kernel is exactly the unit square [0,1]^2.
const std::vector<Vec2> ell = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
// U-shaped polygon with empty kernel (not star-shaped).
const std::vector<Vec2> ushape = {{0, 0}, {3, 0}, {3, 3}, {2, 3},
                                  {2, 1}, {1, 1}, {1, 3}, {0, 3}};
}  // namespace

TEST_CASE("signed area and orientation") {
  CHECK(polygon_signed_area(unit_square) == doctest::Approx(1.0));
  std::vector<Vec2> cw(unit_square.rbegin(), unit_square.rend());
  CHECK(polygon_signed_area(cw) == doctest::Approx(-1.0));
  const std::vector<Vec2> tri = {{0, 0}, {2, 0}, {0, 3}};
  CHECK(polygon_signed_area(tri) == doctest::Approx(3.0));
  CHECK(polygon_signed_area(ell) == doctest::Approx(3.0));
}

TEST_CASE("centroid") {
  const Vec2 c = polygon_centroid(unit_square);
  CHECK(c.x() == doctest::Approx(0.5));
  CHECK(c.y() == doctest::Approx(0.5));
  const std::vector<Vec2> tri = {{0, 0}, {1, 0}, {0, 1}};
  const Vec2 ct = polygon_centroid(tri);
  CHECK(ct.x() == doctest::Approx(1.0 / 3));
  CHECK(ct.y() == doctest::Approx(1.0 / 3));
}

TEST_CASE("diameter") {
  CHECK(polygon_diameter(unit_square) == doctest::Approx(std::sqrt(2.0)));
  CHECK(polygon_diameter(ell) == doctest::Approx(std::hypot(2.0, 2.0)));
}

TEST_CASE("point in polygon") {
  CHECK(point_in_polygon({0.5, 0.5}, unit_square));
  CHECK_FALSE(point_in_polygon({1.5, 0.5}, unit_square));
  CHECK(point_in_polygon({0.5, 1.5}, ell));
  CHECK_FALSE(point_in_polygon({1.5, 1.5}, ell));  // inside the notch
  CHECK_FALSE(point_in_polygon({-0.1, 0.5}, ell));
}

TEST_CASE("star visibility") {
  CHECK(sees_all_edges({0.5, 0.5}, unit_square));
  CHECK(sees_all_edges({0.5, 0.5}, ell));
  CHECK_FALSE(sees_all_edges({1.5, 0.5}, ell));  // blocked by the reflex corner
  CHECK_FALSE(sees_all_edges({1.5, 2.0}, ushape));
}

TEST_CASE("kernel Chebyshev disc") {
  const InscribedDisc sq = kernel_chebyshev_disc(unit_square);
  CHECK(sq.radius == doctest::Approx(0.5));
  CHECK(sq.center.x() == doctest::Approx(0.5));
  CHECK(sq.center.y() == doctest::Approx(0.5));

  // Triangle kernel = triangle; Chebyshev disc = incircle, r = 2A/perimeter.
  const std::vector<Vec2> tri = {{0, 0}, {1, 0}, {0, 1}};
  const InscribedDisc dt = kernel_chebyshev_disc(tri);
  CHECK(dt.radius == doctest::Approx(1.0 / (2.0 + std::sqrt(2.0))));

  // L-shape kernel is the unit square, so the disc is its indisc.
  const InscribedDisc dl = kernel_chebyshev_disc(ell);
  CHECK(dl.radius == doctest::Approx(0.5));
  CHECK(dl.center.x() == doctest::Approx(0.5));
  CHECK(dl.center.y() == doctest::Approx(0.5));

  CHECK(kernel_chebyshev_disc(ushape).radius <= 0.0);
}

TEST_CASE("ear clipping covers the polygon") {
  for (const auto& poly : {ell, ushape}) {
    const auto tris = ear_clip(poly);
    CHECK(tris.size() == poly.size() - 2);
    double area = 0;
    for (const auto& t : tris) {
      const std::vector<Vec2> tv = {poly[t[0]], poly[t[1]], poly[t[2]]};
      const double a = polygon_signed_area(tv);
      CHECK(a > 0.0);  // CCW pieces
      area += a;
    }
    CHECK(area == doctest::Approx(polygon_signed_area(poly)));
  }
}
