#include <doctest.h>

#include "certmesh/error.hpp"
#include "certmesh/oracle.hpp"
#include "certmesh/pv_extended.hpp"
#include "helpers.hpp"

using namespace certmesh;
using test::D;

namespace {

using Signs = std::array<int, 4>;  // SW, SE, NE, NW

constexpr Side kAll[] = {Side::South, Side::East, Side::North, Side::West};

// Quarter turn counter-clockwise: the SW corner moves to SE and so on.
Signs rotate(const Signs& s) { return {s[3], s[0], s[1], s[2]}; }
Side rotate(Side s) { return static_cast<Side>((static_cast<int>(s) + 1) % 4); }
// Mirror in the vertical axis.
Signs mirror(const Signs& s) { return {s[1], s[0], s[3], s[2]}; }
Side mirror(Side s) {
  if (s == Side::East) return Side::West;
  if (s == Side::West) return Side::East;
  return s;
}

bool alternating(const Signs& s) { return s[0] == s[2] && s[1] == s[3] && s[0] != s[1]; }

Signs from_bits(int m) { return {m & 1 ? -1 : 1, m & 2 ? -1 : 1, m & 4 ? -1 : 1, m & 8 ? -1 : 1}; }

ExtendedResult run(const char* f, const Box& root, const RegionSpec& spec = {}, ExtendedOptions opts = {}) {
  return run_extended_pv(Poly::parse(f), Subdivision::build(root, spec, 30), opts);
}

}  // namespace

TEST_SUITE("pv_extended") {
  TEST_CASE("classification against the south side") {
    // Shared side is the south side: SW and SE touch the partner.
    CHECK(classify_complementary({1, 1, 1, 1}, Side::South) == CollarType::E);
    CHECK(classify_complementary({1, 1, -1, -1}, Side::South) == CollarType::A);
    CHECK(classify_complementary({1, 1, -1, 1}, Side::South) == CollarType::B);
    CHECK(classify_complementary({1, 1, 1, -1}, Side::South) == CollarType::B);
    CHECK(classify_complementary({1, -1, 1, 1}, Side::South) == CollarType::C);
    CHECK(classify_complementary({-1, 1, 1, 1}, Side::South) == CollarType::C);
    CHECK(classify_complementary({1, -1, -1, 1}, Side::South) == CollarType::D);
    CHECK_THROWS_AS(classify_complementary({1, -1, 1, -1}, Side::South), Error);
  }

  TEST_CASE("spec examples that disagree with the figure") {
    // All corners equal is the empty type, not an incursion.
    CHECK(classify_complementary({1, 1, 1, 1}, Side::North) == CollarType::E);
    CHECK_FALSE(is_transient(classify_complementary({1, 1, 1, 1}, Side::North)));
    // A split parallel to the shared side is an incursion.
    CHECK(classify_complementary({1, 1, -1, -1}, Side::North) == CollarType::A);
  }

  TEST_CASE("classification is invariant under symmetries and sign flips") {
    for (int m = 0; m < 16; ++m) {
      const Signs s = from_bits(m);
      if (alternating(s)) {
        for (Side side : kAll) CHECK_THROWS_AS(classify_complementary(s, side), Error);
        continue;
      }
      for (Side side : kAll) {
        const CollarType t = classify_complementary(s, side);
        CHECK(classify_complementary({-s[0], -s[1], -s[2], -s[3]}, side) == t);
        CHECK(classify_complementary(rotate(s), rotate(side)) == t);
        CHECK(classify_complementary(mirror(s), mirror(side)) == t);
      }
    }
  }

  TEST_CASE("type counts over all patterns") {
    int counts[5] = {};
    for (int m = 0; m < 16; ++m) {
      const Signs s = from_bits(m);
      if (alternating(s)) continue;
      ++counts[static_cast<int>(classify_complementary(s, Side::West))];
    }
    CHECK(counts[0] == 2);  // a
    CHECK(counts[1] == 4);  // b
    CHECK(counts[2] == 4);  // c
    CHECK(counts[3] == 2);  // d
    CHECK(counts[4] == 2);  // e
  }

  TEST_CASE("concave corner cases") {
    // Complementary box [1,2]^2 of the L-shaped region [0,2]^2 \ (1,2]^2,
    // shared west side with one partner and south side with the other.
    auto both = [](const Signs& s) {
      return std::pair{classify_complementary(s, Side::West), classify_complementary(s, Side::South)};
    };
    CHECK(both({-1, 1, 1, 1}) == std::pair{CollarType::C, CollarType::C});
    CHECK(both({1, -1, -1, 1}) == std::pair{CollarType::A, CollarType::D});
    CHECK(both({1, 1, 1, 1}) == std::pair{CollarType::E, CollarType::E});
    CHECK(both({1, 1, -1, 1}) == std::pair{CollarType::B, CollarType::B});
  }

  TEST_CASE("half split") {
    const Box b = test::square("0", "1", "1");
    const auto [p, q] = half_split(b, Side::South);
    CHECK(p == test::square("0", "1", "1/2"));
    CHECK(q == test::square("1/2", "1", "1/2"));
    Box cur = b;
    for (int i = 0; i < 5; ++i) {
      const auto [l, r] = half_split(cur, Side::South);
      CHECK(l.y().lo() == D("1"));
      CHECK(r.y().lo() == D("1"));
      CHECK(l.width() == cur.width().half());
      cur = r;
    }
    const auto [e1, e2] = half_split(b, Side::East);
    CHECK(e1.x().hi() == D("1"));
    CHECK(e2.x().hi() == D("1"));
  }

  TEST_CASE("gadget placement") {
    const Gadget g = gadget_vertices(test::square("0", "0", "1"), Side::North);
    CHECK(g.u == Point{D("1/4"), D("1")});
    CHECK(g.w == Point{D("3/4"), D("1")});
    CHECK(g.v == Point{D("1/2"), D("7/8")});
    const Gadget h = gadget_vertices(test::square("0", "0", "1/2"), Side::West);
    CHECK(h.u == Point{D("0"), D("1/8")});
    CHECK(h.w == Point{D("0"), D("3/8")});
    CHECK(h.v == Point{D("1/16"), D("1/4")});
  }

  TEST_CASE("curve strictly inside the region") {
    const ExtendedResult r = run("x^2 + y^2 - 1", test::square("-2", "-2", "4"));
    CHECK(r.stats.gadgets == 0);
    for (const ComplementaryBox& cb : r.collar) CHECK(cb.c0);
    const GraphTopology t = topology(r.graph);
    CHECK(t.component_count() == 1);
    CHECK(t.total_cyclomatic() == 1);
  }

  TEST_CASE("collar matches plain PV when all complementary boxes are empty") {
    const Box root = test::square("-2", "-2", "4");
    const ExtendedResult with = run("x^2 + y^2 - 1", root);
    const PvResult plain = run_pv(Poly::parse("x^2 + y^2 - 1"), Subdivision::build(root, {}, 30));
    CHECK(with.graph.vertices().size() == plain.graph.vertices().size());
    CHECK(with.graph.edges().size() == plain.graph.edges().size());
  }

  TEST_CASE("tangent circle fixture") {
    RegionSpec spec;
    spec.include = Rect{Interval(D("-1"), D("1")), Interval(D("-2"), D("0"))};
    const Box root = test::square("-1", "-2", "2");
    const ExtendedResult r = run("9*x^2 + 9*y^2 - 6*x - 18*y + 1", root, spec);
    CHECK(r.stats.gadgets >= 1);
    std::size_t collar_vertices = 0;
    for (const Vertex& v : r.graph.vertices())
      if (v.tag == VertexTag::AugmentedCollar) ++collar_vertices;
    CHECK(collar_vertices == 3 * r.stats.gadgets);

    // Collar invariants.
    for (const ComplementaryBox& cb : r.collar) {
      CHECK(cb.partners.size() >= 1);
      for (const Partner& p : cb.partners) {
        CHECK(r.tree.box(p.leaf).width() == cb.box.width());
        CHECK_FALSE(r.tree.box(p.leaf).interior_intersects(cb.box));
      }
      const Curve c(Poly::parse("9*x^2 + 9*y^2 - 6*x - 18*y + 1"));
      CHECK((c.c0(cb.box) || c.c1(cb.box)));
    }
    for (std::size_t i = 0; i < r.collar.size(); ++i)
      for (std::size_t j = i + 1; j < r.collar.size(); ++j)
        CHECK_FALSE(r.collar[i].box.interior_intersects(r.collar[j].box));

    // Gadget vertices never land on a segment midpoint.
    for (const Vertex& v : r.graph.vertices())
      if (v.tag == VertexTag::AugmentedCollar)
        for (const Vertex& o : r.graph.vertices())
          if (o.tag == VertexTag::SegmentMidpoint) CHECK_FALSE(o.pt == v.pt);
  }

  TEST_CASE("curve outside the region") {
    const ExtendedResult r = run("x^2 + y^2 - 4", test::square("-1", "-1", "2"));
    // Whatever G+ holds comes from the collar: open chains only.
    for (const ComponentSummary& c : topology(r.graph).components) CHECK(c.cyclomatic == 0);
  }

  TEST_CASE("collar width cap") {
    ExtendedOptions opts;
    opts.collar_eps = D("1/8");
    RegionSpec spec;
    spec.include = Rect{Interval(D("-1"), D("1")), Interval(D("-2"), D("0"))};
    const char* f = "9*x^2 + 9*y^2 - 6*x - 18*y + 1";
    const ExtendedResult r = run(f, test::square("-1", "-2", "2"), spec, opts);
    for (const ComplementaryBox& cb : r.collar)
      if (!cb.c0) CHECK(cb.box.width() <= D("1/32"));
  }

  TEST_CASE("narrow boxes option") {
    ExtendedOptions opts;
    opts.max_width = D("1/16");
    const ExtendedResult r = run("x^2 + y^2 - 1", test::square("-2", "-2", "4"), {}, opts);
    for (const CellKey& k : r.tree.leaves())
      if (r.tree.cell(k).status == Status::Kept) CHECK(r.tree.box(k).width() <= D("1/16"));
    CHECK(topology(r.graph).total_cyclomatic() == 1);
  }

  TEST_CASE("concave corner collar box has two partners") {
    RegionSpec spec;
    spec.exclude.push_back(Rect{Interval(D("1"), D("2")), Interval(D("1"), D("2"))});
    const ExtendedResult r = run("2*x + 2*y - 3", test::square("0", "0", "2"), spec);
    bool found = false;
    for (const ComplementaryBox& cb : r.collar)
      if (cb.partners.size() == 2) {
        found = true;
        CHECK(cb.partners[0].side != cb.partners[1].side);
        CHECK(cb.c0);
      }
    CHECK(found);
  }

  TEST_CASE("annular region with a curve around the hole") {
    RegionSpec spec;
    spec.exclude.push_back(Rect{Interval(D("-1/4"), D("1/4")), Interval(D("-1/4"), D("1/4"))});
    const ExtendedResult r = run("x^2 + y^2 - 1", test::square("-2", "-2", "4"), spec);
    const GraphTopology t = topology(r.graph);
    CHECK(t.component_count() == 1);
    CHECK(t.total_cyclomatic() == 1);
  }
}
