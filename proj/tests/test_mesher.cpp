#include <doctest.h>

#include "certmesh/error.hpp"
#include "certmesh/mesher.hpp"
#include "certmesh/oracle.hpp"
#include "helpers.hpp"

using namespace certmesh;
using test::D;

namespace {

MeshConfig oracle_config(const Poly& f, const Box& root) {
  MeshConfig cfg;
  cfg.overrides.ev = BoundValue{oracle::critical_value_estimate(sqfree(f), root, 256), BoundSource::OracleDerived};
  cfg.overrides.delta = BoundValue{D("1/16"), BoundSource::UserOverride};
  return cfg;
}

MeshResult mesh_with_oracle(const char* text, const Box& root) {
  const Poly f = Poly::parse(text);
  return mesh(f, root, {}, oracle_config(f, root));
}

std::size_t center_degree(const PLGraph& g, const Point& c) {
  const auto v = g.find(c);
  REQUIRE(v.has_value());
  CHECK(g.vertices()[*v].tag == VertexTag::SingularCenter);
  return g.degrees()[*v];
}

}  // namespace

TEST_SUITE("mesher") {
  TEST_CASE("smooth circle") {
    const MeshResult r = mesh_with_oracle("x^2 + y^2 - 1", test::square("-2", "-2", "4"));
    CHECK(r.singularities.empty());
    const GraphTopology t = topology(r.graph);
    CHECK(t.component_count() == 1);
    CHECK(t.total_cyclomatic() == 1);
    CHECK(t.singular_degrees.empty());
  }

  TEST_CASE("square-free reduction") {
    const MeshResult r = mesh_with_oracle("(x^2 + y^2 - 1)^2", test::square("-2", "-2", "4"));
    CHECK(r.f == Poly::parse("x^2 + y^2 - 1"));
    CHECK(topology(r.graph).total_cyclomatic() == 1);
  }

  TEST_CASE("nodal cubic") {
    const Box root = test::square("-2", "-2", "4");
    const MeshResult r = mesh_with_oracle("y^2 - x^3 - x^2", root);
    REQUIRE(r.singularities.size() == 1);
    const SingularityInfo& s = r.singularities[0];
    CHECK(s.degree == 4);
    CHECK(center_degree(r.graph, s.center) == 4);
    CHECK(s.inner.contains(s.rect.center()));
    CHECK(s.outer == enlarge5(s.inner));
    CHECK(s.outer.width() < D("1/16"));
    // Nothing but the center inside the removed box.
    for (const Vertex& v : r.graph.vertices()) {
      const Rect& in = s.inner.rect();
      const bool interior = in.x.lo() < v.pt.x && v.pt.x < in.x.hi() && in.y.lo() < v.pt.y && v.pt.y < in.y.hi();
      if (interior) CHECK(v.tag == VertexTag::SingularCenter);
    }
    const GraphTopology t = topology(r.graph);
    CHECK(t.component_count() == 1);
    CHECK(t.singular_degrees == std::vector<std::size_t>{4});
    const Box hole = test::square("-1/16", "-1/16", "1/8");
    const oracle::TopologySummary o = oracle::marching_stable(r.f, root, 256, 4096, {hole});
    CHECK(t.total_cyclomatic() == o.cyclomatic()[0]);
  }

  TEST_CASE("cusp and lemniscate") {
    const MeshResult cusp = mesh_with_oracle("y^2 - x^3", test::square("-1", "-1", "2"));
    REQUIRE(cusp.singularities.size() == 1);
    CHECK(cusp.singularities[0].degree == 2);
    GraphTopology t = topology(cusp.graph);
    CHECK(t.component_count() == 1);
    CHECK(t.total_cyclomatic() == 0);
    CHECK(t.singular_degrees == std::vector<std::size_t>{2});

    const MeshResult lem = mesh_with_oracle("(x^2+y^2)^2 - 4*(x^2-y^2)", test::square("-4", "-4", "8"));
    REQUIRE(lem.singularities.size() == 1);
    CHECK(lem.singularities[0].degree == 4);
    t = topology(lem.graph);
    CHECK(t.component_count() == 1);
    CHECK(t.total_cyclomatic() == 2);
  }

  TEST_CASE("degree matches the circle oracle") {
    const MeshResult r = mesh_with_oracle("y^2 - x^3 - x^2", test::square("-2", "-2", "4"));
    const SingularityInfo& s = r.singularities.at(0);
    // A radius strictly between the two boxes.
    const Dyadic radius = s.inner.width();
    CHECK(static_cast<std::size_t>(oracle::circle_branch_count(r.f, s.center, radius, 64)) == s.degree);
  }

  TEST_CASE("graph invariants") {
    const MeshResult r = mesh_with_oracle("(x^2+y^2)^2 - 4*(x^2-y^2)", test::square("-4", "-4", "8"));
    const auto& vs = r.graph.vertices();
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const Edge& e : r.graph.edges()) {
      CHECK(e.a != e.b);
      CHECK(e.a < vs.size());
      CHECK(e.b < vs.size());
      CHECK(seen.insert(std::minmax(e.a, e.b)).second);
    }
    const auto deg = r.graph.degrees();
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (vs[i].tag == VertexTag::SegmentMidpoint) CHECK(deg[i] == 2);
  }

  TEST_CASE("eps refinement keeps topology and shrinks boxes") {
    const MeshResult coarse = mesh_with_oracle("x^2 + y^2 - 1", test::square("-2", "-2", "4"));
    const MeshResult fine = refine_to_eps(coarse, D("1/8"));
    const GraphTopology a = topology(fine.graph);
    const GraphTopology b = topology(coarse.graph);
    CHECK(a.component_count() == b.component_count());
    CHECK(a.total_cyclomatic() == b.total_cyclomatic());
    for (const CellKey& k : fine.tree.leaves())
      if (fine.tree.cell(k).status == Status::Kept) CHECK(fine.tree.box(k).width() <= D("1/32"));
    CHECK(fine.graph.vertices().size() > coarse.graph.vertices().size());
  }

  TEST_CASE("refinement around a singularity") {
    const MeshResult coarse = mesh_with_oracle("y^2 - x^3 - x^2", test::square("-2", "-2", "4"));
    const MeshResult fine = refine_to_eps(coarse, D("1/4"));
    CHECK(topology(fine.graph).singular_degrees == topology(coarse.graph).singular_degrees);
    CHECK(topology(fine.graph).total_cyclomatic() == topology(coarse.graph).total_cyclomatic());
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(mesh(Poly(), test::square("0", "0", "1")), Error);
    MeshConfig cfg;
    cfg.eps = Dyadic();
    CHECK_THROWS_AS(mesh(Poly::parse("x - y"), test::square("0", "0", "1"), {}, cfg), Error);
  }

  TEST_CASE("certified bounds are too small for desk-scale isolation") {
    MeshConfig cfg;
    cfg.max_depth = 16;
    try {
      mesh(Poly::parse("y^2 - x^3 - x^2"), test::square("-2", "-2", "4"), {}, cfg);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MaxDepthExceeded);
    }
  }

  TEST_CASE("neighborhood leaving the region") {
    const Poly f = Poly::parse("y^2 - x^3 - x^2");
    const Box root = test::square("-2", "-2", "4");
    MeshConfig cfg = oracle_config(f, root);
    cfg.overrides.delta = BoundValue{D("1"), BoundSource::UserOverride};
    RegionSpec region;
    region.exclude.push_back(Rect{Interval(D("1/16"), D("1/8")), Interval(D("-2"), D("2"))});
    try {
      mesh(f, root, region, cfg);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OverlappingSingularityNeighborhoods);
    }
  }

  TEST_CASE("result records its input") {
    const MeshResult r = mesh_with_oracle("x^2 + y^2 - 1", test::square("-2", "-2", "4"));
    CHECK(r.input.f_raw == Poly::parse("x^2 + y^2 - 1"));
    CHECK(r.bounds.ev.source == BoundSource::OracleDerived);
    CHECK(r.bounds.delta3.source == BoundSource::UserOverride);
  }
}
