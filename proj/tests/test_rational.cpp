#include "doctest.h"
#include "homcov/errors.hpp"
#include "homcov/rational.hpp"

using namespace homcov;

TEST_CASE("construction canonicalizes") {
  CHECK(rat(2, 6) == rat(1, 3));
  CHECK(rat(-2, -6) == rat(1, 3));
  CHECK(rat(1, -3) == rat(-1, 3));
  CHECK(rat(0, 7) == rat(0));
}

TEST_CASE("parse and print round-trip") {
  CHECK(rat_parse("3/4") == rat(3, 4));
  CHECK(rat_parse("-3/4") == rat(-3, 4));
  CHECK(rat_parse("12") == rat(12));
  CHECK(rat_parse("4/6") == rat(2, 3));
  CHECK(rat_str(rat(2, 3)) == "2/3");
  CHECK(rat_str(rat(-5)) == "-5");
  CHECK(rat_str(rat_parse("4/6")) == "2/3");
  CHECK_THROWS_AS(rat_parse("1/0"), Error);
  CHECK_THROWS_AS(rat_parse("a"), Error);
  CHECK_THROWS_AS(rat_parse(""), Error);
}

TEST_CASE("floor and ceil") {
  CHECK(rat_floor(rat(7, 2)) == 3);
  CHECK(rat_ceil(rat(7, 2)) == 4);
  CHECK(rat_floor(rat(-7, 2)) == -4);
  CHECK(rat_ceil(rat(-7, 2)) == -3);
  CHECK(rat_floor(rat(4)) == 4);
  CHECK(rat_ceil(rat(4)) == 4);
}

TEST_CASE("simplest_between picks minimal denominators") {
  CHECK(simplest_between(rat(1, 3), rat(1, 2)) == rat(2, 5));
  CHECK(simplest_between(rat(-1), rat(1)) == rat(0));
  CHECK(simplest_between(rat(3), rat(4)) == rat(7, 2));
  CHECK(simplest_between(rat(5, 2), rat(9)) == rat(3));
  CHECK(simplest_between(rat(-9), rat(-5, 2)) == rat(-3));
  CHECK(simplest_between(rat(0), rat(1, 10)) == rat(1, 11));

  // generic property: result lies strictly inside, denominator never exceeds
  // the midpoint's
  for (long a = 1; a < 40; ++a) {
    for (long b = a + 1; b < 40; ++b) {
      Rat lo = rat(a, 41), hi = rat(b, 41);
      Rat s = simplest_between(lo, hi);
      CHECK(lo < s);
      CHECK(s < hi);
      Rat mid = (lo + hi) / 2;
      CHECK(s.get_den() <= mid.get_den());
    }
  }
}

TEST_CASE("sqrt_lower_bound brackets the root tightly") {
  CHECK(sqrt_lower_bound(rat(0)) == 0);
  CHECK(sqrt_lower_bound(rat(9)) == 3);
  CHECK(sqrt_lower_bound(rat(1, 4)) == rat(1, 2));
  Rat eps = rat(1, 1L << 28);
  for (const Rat& x : {rat(2), rat(1, 3), rat(7, 5), rat(123456, 7), rat(1, 100000)}) {
    Rat r = sqrt_lower_bound(x);
    CHECK(r * r <= x);
    Rat bumped = r + eps * (r + 1);
    CHECK(bumped * bumped > x);
  }
  CHECK_THROWS_AS(sqrt_lower_bound(rat(-1)), Error);
}
