#include <doctest.h>

#include <random>

#include "certmesh/error.hpp"
#include "helpers.hpp"

using namespace certmesh;
using test::D;

TEST_SUITE("numeric") {
  TEST_CASE("dyadic addition is exact and canonical") {
    CHECK(Dyadic(mpz_class(3), -1) + Dyadic(mpz_class(1), -1) == Dyadic(2));
    const Dyadic x = D("5/8");
    CHECK(x + Dyadic() == x);
    const Dyadic tiny = Dyadic::pow2(-53);
    const Dyadic sum = tiny + Dyadic(1);
    CHECK(sum.mantissa() == (mpz_class(1) << 53) + 1);
    CHECK(sum.exponent() == -53);
    CHECK(sum - Dyadic(1) == tiny);
  }

  TEST_CASE("canonical form") {
    const Dyadic a(mpz_class(12), 3);
    CHECK(a.mantissa() == 3);
    CHECK(a.exponent() == 5);
    const Dyadic z = D("3/4") - D("0.75");
    CHECK(z.is_zero());
    CHECK(z.exponent() == 0);
    CHECK(z == Dyadic());
  }

  TEST_CASE("parsing") {
    CHECK(D("-3") == Dyadic(-3));
    CHECK(D("3/2^4") == Dyadic(mpz_class(3), -4));
    CHECK(D("0.375") == Dyadic(mpz_class(3), -3));
    CHECK(D("1/16") == Dyadic::pow2(-4));
    CHECK_THROWS_AS(D("0.1"), Error);
    CHECK_THROWS_AS(D("1/3"), Error);
    CHECK_THROWS_AS(D("abc"), Error);
  }

  TEST_CASE("ordering and decimal output") {
    CHECK(D("-1/2") < D("1/4"));
    CHECK(D("3/8") > D("1/4"));
    CHECK(D("-0.375").to_decimal() == "-0.375");
    CHECK(Dyadic(40).to_decimal() == "40");
  }

  TEST_CASE("interval products") {
    const Interval a(D("-1"), D("2"));
    const Interval b(D("3"), D("4"));
    CHECK(a * b == Interval(D("-4"), D("8")));
    const Interval u(D("0"), D("1"));
    CHECK(u * u == u);
    CHECK(Interval(D("-2"), D("-1")).pow(2) == Interval(D("1"), D("4")));
    CHECK(Interval(D("-1"), D("1")).pow(2) == Interval(D("0"), D("1")));
    CHECK(Interval(D("-1"), D("1")) * Interval(D("-1"), D("1")) == Interval(D("-1"), D("1")));
    CHECK(Interval(D("-2"), D("1")).pow(3) == Interval(D("-8"), D("1")));
    CHECK_THROWS_AS(Interval(D("1"), D("0")), Error);
  }

  TEST_CASE("interval arithmetic is inclusion monotone") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
      auto nested = [&] {
        Dyadic a = test::random_dyadic(rng, 64, 3);
        Dyadic b = test::random_dyadic(rng, 64, 3);
        if (b < a) std::swap(a, b);
        Dyadic c = a + (b - a) * Dyadic(mpz_class(rng() % 5), -2);
        Dyadic d = c + (b - c) * Dyadic(mpz_class(rng() % 5), -2);
        return std::pair{Interval(a, b), Interval(c, d)};
      };
      const auto [A, a] = nested();
      const auto [B, b] = nested();
      CHECK((a * b).subset_of(A * B));
      CHECK((a + b).subset_of(A + B));
      CHECK((a - b).subset_of(A - B));
      CHECK(a.pow(3).subset_of(A.pow(3)));
      CHECK(a.pow(2).subset_of(A.pow(2)));
    }
  }

  TEST_CASE("box split") {
    const Box b = test::square("0", "0", "2");
    const auto kids = b.split();
    CHECK(kids[0] == test::square("0", "0", "1"));
    CHECK(kids[1] == test::square("1", "0", "1"));
    CHECK(kids[2] == test::square("0", "1", "1"));
    CHECK(kids[3] == test::square("1", "1", "1"));
    for (const Box& k : kids) CHECK(k.depth() == b.depth() + 1);

    Box c = test::square("0", "0", "1");
    for (int k = 1; k <= 10; ++k) {
      c = c.split()[3];
      CHECK(c.width() == Dyadic::pow2(-k));
    }
  }

  TEST_CASE("split children tile the parent") {
    const Box b = test::square("-3/4", "1/8", "3/2");
    const auto kids = b.split();
    Dyadic area;
    for (const Box& k : kids) {
      CHECK(b.contains(k));
      area += k.width() * k.width();
    }
    CHECK(area == b.width() * b.width());
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) CHECK_FALSE(kids[i].interior_intersects(kids[j]));
  }

  TEST_CASE("box geometry helpers") {
    const Box b = test::square("0", "0", "1");
    CHECK(b.mirrored(Side::North) == test::square("0", "1", "1"));
    CHECK(b.mirrored(Side::West) == test::square("-1", "0", "1"));
    const auto [p, q] = b.side(Side::East);
    CHECK(p == Point{D("1"), D("0")});
    CHECK(q == Point{D("1"), D("1")});
    CHECK(b.on_boundary(Point{D("1/2"), D("0")}));
    CHECK_FALSE(b.on_boundary(Point{D("1/2"), D("1/2")}));
    CHECK(b.rect().diameter_squared() == Dyadic(2));
    CHECK_THROWS_AS(Box(Interval(D("0"), D("1")), Interval(D("0"), D("2"))), Error);
  }
}
