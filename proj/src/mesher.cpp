#include "certmesh/mesher.hpp"

#include <set>

#include "certmesh/error.hpp"

namespace certmesh {

namespace {

// floor(a / b) and ceil(a / b) for b > 0.
mpz_class ratio(const Dyadic& a, const Dyadic& b, bool up) {
  mpz_class num = a.mantissa();
  mpz_class den = b.mantissa();
  const std::int64_t d = a.exponent() - b.exponent();
  if (d >= 0)
    num <<= static_cast<mp_bitcnt_t>(d);
  else
    den <<= static_cast<mp_bitcnt_t>(-d);
  mpz_class q;
  if (up)
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  else
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

bool inside_region(const Rect& r, const Box& root, const RegionSpec& spec) {
  if (!root.rect().contains(r)) return false;
  if (spec.include && !spec.include->contains(r)) return false;
  for (const Rect& e : spec.exclude)
    if (e.interior_intersects(r)) return false;
  return true;
}

bool meets_region(const Rect& r, const Box& root, const RegionSpec& spec) {
  if (!root.rect().interior_intersects(r)) return false;
  if (spec.include && !spec.include->interior_intersects(r)) return false;
  for (const Rect& e : spec.exclude)
    if (e.contains(r)) return false;
  return true;
}

// Grid-aligned square of cells covering r plus one cell of margin.
Box neighborhood(const Rect& r, const Box& root, const Dyadic& h) {
  const Dyadic& x0 = root.x().lo();
  const Dyadic& y0 = root.y().lo();
  const mpz_class ix0 = ratio(r.x.lo() - x0, h, false) - 1;
  const mpz_class iy0 = ratio(r.y.lo() - y0, h, false) - 1;
  const mpz_class ix1 = ratio(r.x.hi() - x0, h, true) + 1;
  const mpz_class iy1 = ratio(r.y.hi() - y0, h, true) + 1;
  mpz_class nx = ix1 - ix0;
  mpz_class ny = iy1 - iy0;
  mpz_class n = nx > ny ? nx : ny;
  // Grow the short direction on both sides, extra cell on the high side.
  const mpz_class gx = (n - nx) / 2;
  const mpz_class gy = (n - ny) / 2;
  return Box::square(x0 + Dyadic(mpz_class(ix0 - gx), 0) * h, y0 + Dyadic(mpz_class(iy0 - gy), 0) * h,
                     Dyadic(n, 0) * h);
}

}  // namespace

MeshResult mesh(const Poly& f_raw, const Box& root, const RegionSpec& region, const MeshConfig& cfg) {
  if (f_raw.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "mesher", "polynomial is zero");
  if (cfg.eps && cfg.eps->sign() <= 0) throw Error(ErrorKind::InvalidInput, "mesher", "eps must be positive");
  const Poly f = sqfree(f_raw);
  const BoundReport bounds = bound_report(f, cfg.overrides);
  const Box b0 = Box::square(root.x().lo(), root.y().lo(), root.width());

  // Target size for the singular neighborhoods.
  Dyadic t = bounds.delta();
  if (cfg.eps) t = min(t, *cfg.eps);
  const Dyadic target = t.scaled(-5);
  IsolationResult iso = isolate_singularities(f, b0, bounds.ev.value, target, cfg.max_depth, cfg.threads);

  std::vector<SingularityInfo> sings;
  for (const IsolatedRect& ir : iso.rects)
    if (meets_region(ir.rect, root, region)) sings.push_back(SingularityInfo{ir.rect.center(), 0, ir.rect, {}, {}, {}});

  RegionSpec spec = region;
  if (!sings.empty()) {
    // Largest grid step h = W 2^-k with h <= t/64.
    const Dyadic limit = t.scaled(-6);
    int k = 0;
    while (limit < root.width().scaled(-k)) {
      if (++k > cfg.max_depth)
        throw Error(ErrorKind::MaxDepthExceeded, "mesher",
                    "singular neighborhoods need more than max depth " + std::to_string(cfg.max_depth));
    }
    const Dyadic h = root.width().scaled(-k);
    for (SingularityInfo& s : sings) {
      s.inner = neighborhood(s.rect, root, h);
      s.outer = enlarge5(s.inner);
      if (!inside_region(s.outer.rect(), root, region))
        throw Error(ErrorKind::OverlappingSingularityNeighborhoods, "mesher",
                    "singularity neighborhood leaves the region");
    }
    for (std::size_t i = 0; i < sings.size(); ++i)
      for (std::size_t j = i + 1; j < sings.size(); ++j)
        if (sings[i].outer.interior_intersects(sings[j].outer))
          throw Error(ErrorKind::OverlappingSingularityNeighborhoods, "mesher",
                      "singularity neighborhoods overlap");
    for (const SingularityInfo& s : sings) {
      spec.exclude.push_back(s.inner.rect());
      spec.align.push_back(s.outer.rect());
    }
  }

  Subdivision tree = Subdivision::build(root, spec, cfg.max_depth);
  ExtendedOptions opts;
  opts.collar = cfg.collar;
  opts.collar_eps = cfg.collar_eps;
  if (cfg.eps) opts.max_width = cfg.eps->scaled(-2);
  ExtendedResult pv = run_extended_pv(f, std::move(tree), opts);

  PLGraph& g = pv.graph;
  std::set<std::size_t> doomed;
  const std::size_t original_edges = g.edges().size();
  for (SingularityInfo& s : sings) {
    std::vector<std::size_t> local;
    for (std::size_t e = 0; e < original_edges; ++e) {
      const auto& owner = g.edges()[e].owner;
      if (owner && s.outer.contains(pv.tree.box(*owner))) local.push_back(e);
    }
    const std::size_t c = g.add_vertex(s.center, VertexTag::SingularCenter);
    for (const AnnulusComponent& comp : annulus_components(g, local, s.inner.rect(), s.outer.rect())) {
      ++s.types[comp.type - 1];
      if (comp.type == 3) g.add_edge(comp.inner_ends.front(), c);
      if (comp.type == 2) doomed.insert(comp.edges.begin(), comp.edges.end());
    }
    s.degree = s.types[2];
  }
  if (!doomed.empty()) g.remove_edges(doomed);

  MeshResult out{MeshInput{f_raw, root, region, cfg}, f, bounds, iso.eps, std::move(sings), std::move(g),
                 std::move(pv.tree), std::move(pv.collar), pv.stats};
  return out;
}

MeshResult refine_to_eps(const MeshResult& result, const Dyadic& eps) {
  MeshConfig cfg = result.input.config;
  cfg.eps = eps;
  return mesh(result.input.f_raw, result.input.root, result.input.region, cfg);
}

}  // namespace certmesh
