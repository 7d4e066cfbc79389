#include <doctest.h>

#include "certmesh/error.hpp"
#include "certmesh/oracle.hpp"
#include "helpers.hpp"

using namespace certmesh;
using test::D;

namespace {

Poly P(const char* s) { return Poly::parse(s); }

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("circle") {
    const auto t = oracle::marching_reference(P("x^2 + y^2 - 1"), test::square("-2", "-2", "4"), 16);
    REQUIRE(t.component_count() == 1);
    CHECK(t.components[0].cyclomatic == 1);
    CHECK(t.components[0].endpoints == 0);
    CHECK(t.resolution == 16);
  }

  TEST_CASE("two ovals and an open chain") {
    const auto ovals = oracle::marching_reference(P("(x^2+y^2-1)*((x-4)^2+y^2-1)"), test::square("-2", "-2", "8"), 64);
    CHECK(ovals.component_count() == 2);
    CHECK(ovals.cyclomatic() == std::vector<long>{1, 1});
    const auto chain = oracle::marching_reference(P("2*x - 2*y + 1"), test::square("0", "0", "1"), 8);
    CHECK(chain.component_count() == 1);
    CHECK(chain.endpoints() == std::vector<std::size_t>{2});
  }

  TEST_CASE("nothing in the box") {
    CHECK(oracle::marching_reference(P("x^2 + y^2 - 100"), test::square("-1", "-1", "2"), 8).component_count() == 0);
  }

  TEST_CASE("exclusion box becomes a junction") {
    const auto t = oracle::marching_stable(P("y^2 - x^3 - x^2"), test::square("-2", "-2", "4"), 64, 2048,
                                           {test::square("-1/16", "-1/16", "1/8")});
    CHECK(t.component_count() == 1);
    CHECK(t.singular_degrees == std::vector<std::size_t>{4});
  }

  TEST_CASE("alternating cell") {
    CHECK_THROWS_AS(oracle::marching_reference(P("x*y"), test::square("-1", "-1", "2"), 1), Error);
  }

  TEST_CASE("misaligned exclusion") {
    CHECK_THROWS_AS(oracle::marching_reference(P("x^2+y^2-1"), test::square("-2", "-2", "4"), 8,
                                               {test::square("-1/3", "0", "1/4")}),
                    Error);
  }

  TEST_CASE("stability under doubling") {
    const Poly f = P("5*y^2 - 5*x^2 + 5*x^3 + 1");
    const Box b = test::square("-2", "-2", "4");
    const auto s = oracle::marching_stable(f, b, 64, 2048);
    const auto twice = oracle::marching_reference(f, b, s.resolution * 2);
    CHECK(s.same_shape(twice));
  }

  TEST_CASE("circle branch counts") {
    CHECK(oracle::circle_branch_count(P("y^2 - x^3 - x^2"), Point{}, D("1/8"), 64) == 4);
    CHECK(oracle::circle_branch_count(P("y^2 - x^3"), Point{}, D("1/8"), 64) == 2);
    CHECK(oracle::circle_branch_count(P("(x^2+y^2)^2 - 4*(x^2-y^2)"), Point{}, D("1/8"), 64) == 4);
    CHECK(oracle::circle_branch_count(P("x^2 + y^2 - 1"), Point{}, D("1/8"), 64) == 0);
  }

  TEST_CASE("critical value estimate") {
    const Dyadic node = oracle::critical_value_estimate(P("y^2 - x^3 - x^2"), test::square("-2", "-2", "4"), 256);
    CHECK(node.sign() > 0);
    CHECK(node.mantissa() == 1);
    const Dyadic circle = oracle::critical_value_estimate(P("x^2 + y^2 - 1"), test::square("-2", "-2", "4"), 256);
    CHECK(circle.sign() > 0);
  }
}
