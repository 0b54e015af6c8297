#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cayley/contracting.hpp"
#include "oracles.hpp"

using namespace cayley;

TEST_CASE("free-group axes certify at zero") {
  Space f2 = Space::free_group(2);
  Axis X = make_axis(f2, parse_word(f2, "a b"), 24);
  ContractingCertificate cert = certify_contracting(f2, X, 0, 10);
  REQUIRE(cert.certified);
  REQUIRE(cert.max_diameter == 0);
  REQUIRE_FALSE(cert.worst.has_value());
  REQUIRE(cert.balls_tested == 118076);  // |B(o,10)| minus the 21 axis vertices
}

TEST_CASE("tree specialization on translated axes") {
  Space f2 = Space::free_group(2);
  std::mt19937_64 rng(5150);
  std::vector<Word> roots = {parse_word(f2, "a b"), parse_word(f2, "a b^-1"),
                             parse_word(f2, "a^2 b")};
  for (const Word& f : roots) {
    Word h = oracle::random_word(f2, rng, 5);
    Axis X = make_axis(f2, h, f, 20);
    for (int i = 0; i < 60; ++i) {
      Word y = oracle::random_word(f2, rng, 6);
      ProjectionResult r = project(f2, X, y);
      REQUIRE(r.points.size() == 1);
      REQUIRE(r.diameter == 0);
    }
    ContractingCertificate cert = certify_contracting(f2, X, 0, 6);
    REQUIRE(cert.certified);
    REQUIRE(cert.max_diameter == 0);
  }
}

TEST_CASE("flat directions are not contracting") {
  Space z2 = Space::lattice(2);
  Axis X = make_axis(z2, parse_word(z2, "a"), 14);

  ContractingCertificate cert = certify_contracting(z2, X, 4, 12);
  REQUIRE_FALSE(cert.certified);
  REQUIRE(cert.max_diameter == 10);
  REQUIRE(cert.balls_tested == 288);
  REQUIRE(cert.worst.has_value());
  REQUIRE(format_word(z2, cert.worst->center) == "b^6");
  REQUIRE(cert.worst->radius == 5);
  REQUIRE(cert.worst->diameter == 10);

  REQUIRE(smallest_contracting_constant(z2, X, 12) == 10);
  REQUIRE(certify_contracting(z2, X, 10, 12).certified);
}

TEST_CASE("mixed free product certifies its tree direction") {
  Space zz = Space::free_product({2, 1}, {"a", "b", "t"});
  Axis X = make_axis(zz, parse_word(zz, "t"), 20);
  ContractingCertificate cert = certify_contracting(zz, X, 2, 8);
  REQUIRE(cert.certified);
  REQUIRE(cert.max_diameter <= 2);
}

TEST_CASE("certification is deterministic across thread counts") {
  Space z2 = Space::lattice(2);
  Axis X = make_axis(z2, parse_word(z2, "a"), 14);
  ContractingCertificate one = certify_contracting(z2, X, 4, 12, 1);
  ContractingCertificate three = certify_contracting(z2, X, 4, 12, 3);
  REQUIRE(one.certified == three.certified);
  REQUIRE(one.max_diameter == three.max_diameter);
  REQUIRE(one.balls_tested == three.balls_tested);
  REQUIRE(one.worst.has_value());
  REQUIRE(three.worst.has_value());
  REQUIRE(one.worst->center == three.worst->center);
  REQUIRE(one.worst->radius == three.worst->radius);
}

TEST_CASE("undersized windows are reported, not guessed") {
  Space z2 = Space::lattice(2);
  Axis X = make_axis(z2, parse_word(z2, "a"), 6);
  REQUIRE_THROWS_AS(certify_contracting(z2, X, 4, 12), SpaceError);
}

TEST_CASE("windowed neighborhood intersections") {
  Space f2 = Space::free_group(2);
  Axis X = make_axis(f2, parse_word(f2, "a b"), 10);

  SECTION("identical axes are rejected") {
    Axis Y = make_axis(f2, power(parse_word(f2, "a b"), 2), 10);
    REQUIRE_THROWS_AS(bounded_intersection(f2, X, Y, 1), SpaceError);
  }
  SECTION("translated axis shares one point") {
    Axis Y = translate_axis(f2, parse_word(f2, "b"), X);
    REQUIRE(bounded_intersection(f2, X, Y, 0) == 0);
  }
  SECTION("crossing axes overlap boundedly, stably in the window") {
    Axis Y10 = make_axis(f2, parse_word(f2, "a b^-1"), 10);
    REQUIRE(bounded_intersection(f2, X, Y10, 1) == 3);
    Axis X20 = make_axis(f2, parse_word(f2, "a b"), 20);
    Axis Y20 = make_axis(f2, parse_word(f2, "a b^-1"), 20);
    REQUIRE(bounded_intersection(f2, X20, Y20, 1) == 3);
  }
}

TEST_CASE("projection distance matches geodesic overlap") {
  SECTION("exactly, in the free group") {
    Space f2 = Space::free_group(2);
    Axis U = make_axis(f2, parse_word(f2, "a b"), 30);
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 150; ++i) {
      Word x = oracle::random_word(f2, rng, 10);
      Word y = oracle::random_word(f2, rng, 10);
      GeodesicPath g = geodesic(f2, x, y);
      Int dU = proj_distance(f2, U, x, y);
      NeighborhoodOverlap ov = axis_overlap(f2, U, g, 0);
      REQUIRE(dU == ov.diameter);
    }
  }
  SECTION("within four constants, in the mixed free product") {
    Space zz = Space::free_product({2, 1}, {"a", "b", "t"});
    Axis U = make_axis(zz, parse_word(zz, "t"), 30);
    const Int C = 2;
    std::mt19937_64 rng(2025);
    int crossings = 0;
    for (int i = 0; i < 120; ++i) {
      Word x = oracle::random_word(zz, rng, 5);
      Word y = oracle::random_word(zz, rng, 5);
      if (i % 2 == 0) {  // force half the samples across the axis
        Word t = parse_word(zz, "t");
        Int k = 2 + static_cast<Int>(i % 4);
        x = mul(power(t, -k), x);
        y = mul(power(t, k), y);
      }
      GeodesicPath g = geodesic(zz, x, y);
      Int dU = proj_distance(zz, U, x, y);
      NeighborhoodOverlap ov = axis_overlap(zz, U, g, C);
      Int gap = dU - ov.diameter;
      if (gap < 0) gap = -gap;
      REQUIRE(gap <= 4 * C);
      if (ov.nonempty && ov.diameter > 0) ++crossings;
    }
    REQUIRE(crossings >= 40);
  }
}

TEST_CASE("entry points shift boundedly between neighborhood radii") {
  struct Setup {
    Space sp;
    Word root;
    Word shuttle;  // powers of this force the path across the axis
    Int C;
    Int r;
  };
  std::vector<Setup> setups;
  {
    Space f2 = Space::free_group(2);
    setups.push_back({f2, parse_word(f2, "a b"), parse_word(f2, "a b"), 0, 2});
  }
  {
    Space zz = Space::free_product({2, 1}, {"a", "b", "t"});
    setups.push_back({zz, parse_word(zz, "t"), parse_word(zz, "t"), 2, 4});
  }
  for (const Setup& s : setups) {
    Axis U = make_axis(s.sp, s.root, 40);
    std::mt19937_64 rng(31337);
    int premise_hits = 0;
    for (int i = 0; i < 80; ++i) {
      Int k = 3 + static_cast<Int>(i % 5);
      Word x = mul(power(s.shuttle, -k), oracle::random_word(s.sp, rng, 4));
      Word y = mul(power(s.shuttle, k), oracle::random_word(s.sp, rng, 4));
      GeodesicPath g = geodesic(s.sp, x, y);
      NeighborhoodOverlap wide = axis_overlap(s.sp, U, g, s.r);
      if (!wide.nonempty || wide.diameter <= 3 * s.r) continue;
      ++premise_hits;
      NeighborhoodOverlap tight = axis_overlap(s.sp, U, g, s.C);
      REQUIRE(tight.nonempty);
      REQUIRE(tight.first >= wide.first);
      REQUIRE(tight.last <= wide.last);
      REQUIRE(2 * static_cast<Int>(tight.first - wide.first) <= 3 * s.r);
      REQUIRE(2 * static_cast<Int>(wide.last - tight.last) <= 3 * s.r);
    }
    REQUIRE(premise_hits >= 30);
  }
}
