#include <doctest.h>

#include "oracles.hpp"
#include "polyvem/geometry.hpp"

using namespace polyvem;

namespace {
const Polygon kUnitSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
const Polygon kLShape{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
// U-shaped octagon: the slot walls x=1 and x=2 face away from each other
// (their inner half-planes are x <= 1 and x >= 2), so the kernel is empty.
const Polygon kUShape{{0, 0}, {3, 0}, {3, 3}, {2, 3},
                      {2, 1}, {1, 1}, {1, 3}, {0, 3}};
}  // namespace

TEST_CASE("polygon area, centroid, diameter, perimeter") {
  CHECK(polygon_signed_area(kUnitSquare) == doctest::Approx(1.0));
  const Point2 c = polygon_centroid(kUnitSquare);
  CHECK(c.x == doctest::Approx(0.5));
  CHECK(c.y == doctest::Approx(0.5));
  CHECK(polygon_diameter(kUnitSquare) == doctest::Approx(std::sqrt(2.0)));
  CHECK(polygon_perimeter(kUnitSquare) == doctest::Approx(4.0));

  CHECK(polygon_signed_area(kLShape) == doctest::Approx(3.0));
  const Point2 cl = polygon_centroid(kLShape);
  // Union of [0,2]x[0,1] and [0,1]x[1,2]: centroid = (2*(1,.5)+1*(.5,1.5))/3.
  CHECK(cl.x == doctest::Approx(2.5 / 3.0));
  CHECK(cl.y == doctest::Approx(2.5 / 3.0));

  Polygon cw(kUnitSquare.rbegin(), kUnitSquare.rend());
  CHECK(polygon_signed_area(cw) == doctest::Approx(-1.0));
}

TEST_CASE("centroid and area against the monomial oracle on random cells") {
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const Polygon p = oracles::random_valid_cell(rng);
    const double a = oracles::polygon_monomial(p, 0, 0);
    CHECK(polygon_signed_area(p) == doctest::Approx(a).epsilon(1e-12));
    const Point2 c = polygon_centroid(p);
    CHECK(c.x * a == doctest::Approx(oracles::polygon_monomial(p, 1, 0)).epsilon(1e-12));
    CHECK(c.y * a == doctest::Approx(oracles::polygon_monomial(p, 0, 1)).epsilon(1e-12));
  }
}

TEST_CASE("polygon_is_simple") {
  CHECK(polygon_is_simple(kUnitSquare));
  CHECK(polygon_is_simple(kLShape));
  CHECK(polygon_is_simple(kUShape));
  // Bowtie crosses itself.
  CHECK_FALSE(polygon_is_simple({{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
  // Collinear inserted vertex stays simple (split cells do this).
  CHECK(polygon_is_simple({{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}}));
  // Fold-back spike is degenerate.
  CHECK_FALSE(polygon_is_simple({{0, 0}, {1, 0}, {0.5, 0}, {0.5, 1}}));
}

TEST_CASE("kernel distance and membership") {
  CHECK(kernel_distance(kUnitSquare, {0.5, 0.5}) == doctest::Approx(0.5));
  CHECK(kernel_distance(kUnitSquare, {0.25, 0.5}) == doctest::Approx(0.25));
  CHECK(point_in_kernel(kUnitSquare, {0.0, 0.0}));
  CHECK_FALSE(point_in_kernel(kUnitSquare, {1.1, 0.5}));
  // For the L-shape the kernel is the unit square at the inner corner.
  CHECK(point_in_kernel(kLShape, {0.5, 0.5}));
  CHECK_FALSE(point_in_kernel(kLShape, {1.5, 0.5}));
  CHECK(kernel_distance(kLShape, {1.5, 0.5}) == doctest::Approx(-0.5));
}

TEST_CASE("kernel Chebyshev disc on reference shapes") {
  SUBCASE("unit square") {
    const Disc d = kernel_chebyshev_disc(kUnitSquare);
    CHECK(d.radius == doctest::Approx(0.5));
    CHECK(d.center.x == doctest::Approx(0.5));
    CHECK(d.center.y == doctest::Approx(0.5));
  }
  SUBCASE("L-shape kernel is the square [0,1]^2") {
    const Disc d = kernel_chebyshev_disc(kLShape);
    CHECK(d.radius == doctest::Approx(0.5));
    CHECK(kernel_distance(kLShape, d.center) == doctest::Approx(d.radius));
  }
  SUBCASE("3-4-5 right triangle has inradius 1") {
    const Disc d = kernel_chebyshev_disc({{0, 0}, {4, 0}, {0, 3}});
    CHECK(d.radius == doctest::Approx(1.0));
    CHECK(d.center.x == doctest::Approx(1.0));
    CHECK(d.center.y == doctest::Approx(1.0));
  }
  SUBCASE("1 x 3 rectangle: antiparallel sides bind") {
    const Disc d = kernel_chebyshev_disc({{0, 0}, {3, 0}, {3, 1}, {0, 1}});
    CHECK(d.radius == doctest::Approx(0.5));
    CHECK(d.center.y == doctest::Approx(0.5));
  }
  SUBCASE("non-star polygon has empty kernel") {
    const Disc d = kernel_chebyshev_disc(kUShape);
    CHECK(d.radius == 0.0);
  }
}

TEST_CASE("Chebyshev disc matches brute-force grid search") {
  Rng rng(202);
  for (int trial = 0; trial < 30; ++trial) {
    const Polygon p = oracles::random_valid_cell(rng);
    const Disc d = kernel_chebyshev_disc(p);
    const auto gs = oracles::kernel_radius_grid(p, 160);
    CHECK(std::abs(d.radius - gs.radius) <= 2 * gs.spacing);
    // The reported centre must realise the reported radius.
    CHECK(kernel_distance(p, d.center) == doctest::Approx(d.radius).epsilon(1e-9));
  }
}

TEST_CASE("Rng determinism and range") {
  Rng a(7), b(7), c(8);
  bool identical = true, differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double va = a.uniform();
    identical = identical && (va == b.uniform());
    differs = differs || (va != c.uniform());
    CHECK(va >= 0.0);
    CHECK(va < 1.0);
  }
  CHECK(identical);
  CHECK(differs);
}
