#include <doctest.h>

#include <random>

#include "certmesh/error.hpp"
#include "certmesh/oracle.hpp"
#include "certmesh/pv_core.hpp"
#include "helpers.hpp"

using namespace certmesh;
using test::D;

namespace {

Poly P(const char* s) { return Poly::parse(s); }

Segment seg(const char* ax, const char* ay, const char* bx, const char* by) {
  return Segment{Point{D(ax), D(ay)}, Point{D(bx), D(by)}, false};
}

// Proper crossing of two closed segments with distinct endpoints.
bool crosses(const Point& a, const Point& b, const Point& c, const Point& d) {
  auto orient = [](const Point& p, const Point& q, const Point& r) {
    return ((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)).sign();
  };
  return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

PvResult pv_on(const char* f, const Box& root) { return run_pv(P(f), Subdivision::build(root, {}, 30)); }

}  // namespace

TEST_SUITE("pv_core") {
  TEST_CASE("exclusion predicate") {
    const Poly c = P("x^2 + y^2 - 1");
    CHECK(pred_c0(c, test::square("2", "2", "1")));
    CHECK_FALSE(pred_c0(c, test::square("0", "0", "1")));
    CHECK_FALSE(pred_c0(c, test::square("1", "0", "1/1024")));
  }

  TEST_CASE("exclusion predicate is sound on samples") {
    std::mt19937_64 rng(5);
    const Poly f = P("5*y^2 - 5*x^2 + 5*x^3 + 1");
    int tested = 0;
    for (int i = 0; i < 200; ++i) {
      const Box b = Box::square(test::random_dyadic(rng, 16, 3), test::random_dyadic(rng, 16, 3), D("1/8"));
      if (!pred_c0(f, b)) continue;
      ++tested;
      const int s = f.eval(b.center()).sign();
      for (int u = 0; u <= 16; ++u)
        for (int v = 0; v <= 16; ++v) {
          const Point p{b.x().lo() + Dyadic(u) * D("1/128"), b.y().lo() + Dyadic(v) * D("1/128")};
          CHECK(f.eval(p).sign() == s);
        }
    }
    CHECK(tested > 20);
  }

  TEST_CASE("gradient predicate") {
    CHECK(pred_c1(P("x^2 + y^2 - 1"), test::square("1", "1", "1")));
    CHECK_FALSE(pred_c1(P("y^2 - x^3"), test::square("-1/2", "-1/2", "1")));
    CHECK_FALSE(pred_c1(P("y^2 - x^3"), test::square("0", "0", "1/1024")));
  }

  TEST_CASE("gradient predicate is inherited by children") {
    const Poly f = P("5*y^2 - 5*x^2 + 5*x^3 + 1");
    std::mt19937_64 rng(9);
    int holding = 0;
    for (int i = 0; i < 300; ++i) {
      Box b = Box::square(test::random_dyadic(rng, 16, 3), test::random_dyadic(rng, 16, 3), D("1/4"));
      if (!pred_c1(f, b)) continue;
      ++holding;
      for (int level = 0; level < 4; ++level) {
        const auto kids = b.split();
        for (const Box& k : kids) CHECK(pred_c1(f, k));
        b = kids[rng() % 4];
      }
    }
    CHECK(holding > 20);
  }

  TEST_CASE("perturbed sign") {
    CHECK(perturbed_sign(P("x"), Point{}) == 1);
    CHECK(perturbed_sign(P("-x"), Point{D("1"), D("0")}) == -1);
    CHECK(perturbed_sign(P("x^2+y^2-1"), Point{D("1"), D("0")}) == 1);
  }

  TEST_CASE("segment vertices") {
    CHECK(phase3_vertex(P("2*x - 1"), seg("0", "0", "1", "0")) == Point{D("1/2"), D("0")});
    CHECK_FALSE(phase3_vertex(P("x"), seg("0", "0", "1", "0")).has_value());
    CHECK(phase3_vertex(P("-x"), seg("0", "0", "1", "0")) == Point{D("1/2"), D("0")});
    CHECK_FALSE(phase3_vertex(P("x^2+y^2-4"), seg("0", "0", "1", "0")).has_value());
  }

  TEST_CASE("connecting vertices in a box") {
    const Box b = test::square("0", "0", "1");
    CHECK(phase3_connect(b, {}).empty());
    const std::vector<Point> two{{D("1/2"), D("0")}, {D("1"), D("1/2")}};
    CHECK(phase3_connect(b, two) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    // Two on the north side, one on the west, one on the east.
    const std::vector<Point> four{{D("1/4"), D("1")}, {D("0"), D("1/2")}, {D("3/4"), D("1")}, {D("1"), D("1/2")}};
    const auto e = phase3_connect(b, four);
    REQUIRE(e.size() == 2);
    auto has = [&](std::size_t a, std::size_t c) {
      for (auto [p, q] : e)
        if ((p == a && q == c) || (p == c && q == a)) return true;
      return false;
    };
    CHECK(has(1, 0));
    CHECK(has(2, 3));
    CHECK_FALSE(crosses(four[e[0].first], four[e[0].second], four[e[1].first], four[e[1].second]));
    CHECK_THROWS_AS(phase3_connect(b, {two[0]}), Error);
    CHECK_THROWS_AS(phase3_connect(b, {two[0], two[1], four[0]}), Error);
  }

  TEST_CASE("standalone subdivision") {
    const Phase1Result far = phase1_subdivide(P("x^2+y^2-1"), {test::square("2", "2", "2")}, 20);
    CHECK(far.kept.empty());
    CHECK(far.discarded.size() == 1);
    const Phase1Result line = phase1_subdivide(P("x - y"), {test::square("0", "0", "1")}, 20);
    CHECK(line.kept.size() == 1);
    CHECK(line.discarded.empty());
    CHECK_THROWS_AS(phase1_subdivide(P("y^2 - x^3"), {test::square("-1", "-1", "2")}, 12), Error);
    const Phase1Result circle = phase1_subdivide(P("x^2+y^2-1"), {test::square("-2", "-2", "4")}, 20);
    CHECK(circle.kept.size() > 4);
    for (const Box& b : circle.kept) CHECK(pred_c1(P("x^2+y^2-1"), b));
    for (const Box& b : circle.discarded) CHECK(pred_c0(P("x^2+y^2-1"), b));
  }

  TEST_CASE("unit circle") {
    const PvResult r = pv_on("x^2 + y^2 - 1", test::square("-2", "-2", "4"));
    const GraphTopology t = topology(r.graph);
    REQUIRE(t.component_count() == 1);
    CHECK(t.components[0].cyclomatic == 1);
    CHECK(t.components[0].endpoints == 0);
    CHECK(r.graph.vertices().size() >= 8);
    for (std::size_t d : r.graph.degrees()) CHECK(d == 2);
  }

  TEST_CASE("two ovals") {
    const PvResult r = pv_on("(x^2+y^2-1)*((x-4)^2+y^2-1)", test::square("-2", "-2", "8"));
    const GraphTopology t = topology(r.graph);
    CHECK(t.component_count() == 2);
    CHECK(t.total_cyclomatic() == 2);
  }

  TEST_CASE("diagonal line") {
    const PvResult r = pv_on("x - y", test::square("0", "0", "1"));
    const GraphTopology t = topology(r.graph);
    REQUIRE(t.component_count() == 1);
    CHECK(t.components[0].endpoints == 2);
    CHECK(t.components[0].cyclomatic == 0);
  }

  TEST_CASE("kept boxes are balanced and vertices lie on segments") {
    const PvResult r = pv_on("5*y^2 - 5*x^2 + 5*x^3 + 1", test::square("-2", "-2", "4"));
    const Subdivision& t = r.tree;
    for (const CellKey& k : t.leaves()) {
      if (t.cell(k).status != Status::Kept) continue;
      for (const CellKey& n : t.neighbors(k))
        if (t.cell(n).status == Status::Kept) CHECK(std::abs(n.depth - k.depth) <= 1);
    }
    for (const Vertex& v : r.graph.vertices()) {
      CHECK(v.tag == VertexTag::SegmentMidpoint);
      bool on_side = false;
      for (const CellKey& k : t.leaves())
        if (t.box(k).on_boundary(v.pt)) on_side = true;
      CHECK(on_side);
    }
    const oracle::TopologySummary o = oracle::marching_stable(P("5*y^2 - 5*x^2 + 5*x^3 + 1"), test::square("-2", "-2", "4"), 64, 2048);
    const GraphTopology g = topology(r.graph);
    CHECK(g.component_count() == o.component_count());
  }

  TEST_CASE("statistics") {
    const PvResult r = pv_on("x^2 + y^2 - 1", test::square("-2", "-2", "4"));
    CHECK(r.stats.leaves == r.stats.kept + r.stats.discarded);
    CHECK(r.stats.leaves == r.tree.leaves().size());
    CHECK(r.stats.depth == r.tree.deepest_leaf());
  }
}
