#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cp3/errors.hpp"
#include "cp3/geometry.hpp"
#include "test_util.hpp"

using namespace cp3;
using test::random_rotation;
using test::random_vec;

TEST_CASE("right triangle side labels follow the opposite-atom convention") {
  const auto t = triangle_from_positions({0, 0, 0}, {3, 0, 0}, {0, 4, 0});
  CHECK(t.a == doctest::Approx(5.0).epsilon(1e-15));  // |B - C|
  CHECK(t.b == doctest::Approx(4.0).epsilon(1e-15));  // |C - A|
  CHECK(t.c == doctest::Approx(3.0).epsilon(1e-15));  // |B - A|
  CHECK(norm(t.a_vec() - (t.r_B - t.r_C)) < 1e-14);
  CHECK(norm(t.b_vec() - (t.r_C - t.r_A)) < 1e-14);
  CHECK(norm(t.c_vec() - (t.r_B - t.r_A)) < 1e-14);
}

TEST_CASE("side vectors close the triangle: c = b_vec reversed plus a reversed")
{
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 A = random_vec(rng, -2, 2), B = random_vec(rng, -2, 2),
               C = random_vec(rng, -2, 2);
    AtomTriangle t;
    try {
      t = triangle_from_positions(A, B, C);
    } catch (const CollinearAtoms&) {
      continue;
    }
    // (r_B - r_A) = (r_B - r_C) + (r_C - r_A)
    CHECK(norm(t.c_vec() - (t.a_vec() + t.b_vec())) < 1e-12);
    CHECK(std::abs(norm(t.a_hat) - 1.0) < 1e-14);
    CHECK(std::abs(norm(t.b_hat) - 1.0) < 1e-14);
    CHECK(std::abs(norm(t.c_hat) - 1.0) < 1e-14);
  }
}

TEST_CASE("side lengths are invariant under rigid motion") {
  std::mt19937 rng(11);
  const Vec3 A{0.2, -0.1, 0.4}, B{1.3, 0.8, -0.2}, C{-0.5, 1.1, 0.9};
  const auto t0 = triangle_from_positions(A, B, C);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat3 R = random_rotation(rng);
    const Vec3 d = random_vec(rng, -5, 5);
    const auto t1 = triangle_from_positions(R * A + d, R * B + d, R * C + d);
    CHECK(t1.a == doctest::Approx(t0.a).epsilon(1e-13));
    CHECK(t1.b == doctest::Approx(t0.b).epsilon(1e-13));
    CHECK(t1.c == doctest::Approx(t0.c).epsilon(1e-13));
    // hats co-rotate
    CHECK(norm(t1.a_hat - R * t0.a_hat) < 1e-12);
  }
}

TEST_CASE("coincident atoms are rejected") {
  CHECK_THROWS_AS(triangle_from_positions({0, 0, 0}, {0, 0, 0}, {1, 0, 0}),
                  CoincidentAtoms);
  CHECK_THROWS_AS(
      triangle_from_positions({0, 0, 0}, {1, 0, 0}, {1, 0, 1e-13}),
      CoincidentAtoms);
}

TEST_CASE("collinear atoms are rejected, near-collinear margin included") {
  CHECK_THROWS_AS(triangle_from_positions({0, 0, 0}, {1, 0, 0}, {2, 0, 0}),
                  CollinearAtoms);
  CHECK_THROWS_AS(
      triangle_from_positions({0, 0, 0}, {1, 0, 0}, {2, 1e-11, 0}),
      CollinearAtoms);
  // comfortably non-degenerate
  CHECK_NOTHROW(triangle_from_positions({0, 0, 0}, {1, 0, 0}, {0.5, 1e-3, 0}));
}

TEST_CASE("scale_triangle dilates sides and keeps directions") {
  const auto t = triangle_from_positions({0, 0, 0}, {3, 0, 0}, {0, 4, 0});
  const auto s = scale_triangle(t, 2.5);
  CHECK(s.a == doctest::Approx(2.5 * t.a).epsilon(1e-14));
  CHECK(s.b == doctest::Approx(2.5 * t.b).epsilon(1e-14));
  CHECK(s.c == doctest::Approx(2.5 * t.c).epsilon(1e-14));
  CHECK(norm(s.a_hat - t.a_hat) < 1e-14);
  CHECK(norm(s.r_A - t.r_A) < 1e-14);  // dilation centre
  CHECK_THROWS_AS(scale_triangle(t, 0.0), NonPositiveScale);
  CHECK_THROWS_AS(scale_triangle(t, -1.0), NonPositiveScale);
}

TEST_CASE("unit system maps physical quantities to internal ones") {
  UnitSystem u{2.0};
  CHECK(u.length_to_internal(3.0) == doctest::Approx(6.0));
  CHECK(u.wavenumber_to_internal(3.0) == doctest::Approx(1.5));
  // round trip: k*R is invariant
  CHECK(u.length_to_internal(3.0) * u.wavenumber_to_internal(5.0) ==
        doctest::Approx(15.0));
}
