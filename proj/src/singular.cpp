#include "certmesh/singular.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "certmesh/error.hpp"

namespace certmesh {

namespace {

bool touches_boundary(const CellKey& k) {
  const std::int64_t n = std::int64_t{1} << k.depth;
  return k.ix == 0 || k.iy == 0 || k.ix == n - 1 || k.iy == n - 1;
}

// Boxes of a quadtree grid share a segment iff they touch along a side with
// positive overlap.
bool edge_adjacent(const Rect& a, const Rect& b) {
  auto overlap = [](const Interval& p, const Interval& q) { return max(p.lo(), q.lo()) < min(p.hi(), q.hi()); };
  const bool vx = a.x.hi() == b.x.lo() || b.x.hi() == a.x.lo();
  const bool vy = a.y.hi() == b.y.lo() || b.y.hi() == a.y.lo();
  return (vx && overlap(a.y, b.y)) || (vy && overlap(a.x, b.x));
}

Rect hull(const Rect& a, const Rect& b) {
  return {Interval(min(a.x.lo(), b.x.lo()), max(a.x.hi(), b.x.hi())),
          Interval(min(a.y.lo(), b.y.lo()), max(a.y.hi(), b.y.hi()))};
}

// Is r covered by the union of the cells in keys (and their descendants)?
bool covered(const Box& b0, const Rect& r, const std::set<CellKey>& keys, int deepest, const CellKey& k) {
  const Rect cell = cell_box(b0, k).rect();
  if (!cell.interior_intersects(r)) return true;
  for (CellKey a = k; a.depth >= 0; a = a.parent()) {
    if (keys.contains(a)) return true;
    if (a.depth == 0) break;
  }
  if (k.depth >= deepest) return false;
  for (int q = 0; q < 4; ++q)
    if (!covered(b0, r, keys, deepest, k.child(q))) return false;
  return true;
}

std::array<CellKey, 4> children(const CellKey& k, int max_depth, ErrorKind kind, const char* stage) {
  if (k.depth >= max_depth)
    throw Error(kind, stage, "subdivision exceeded max depth " + std::to_string(max_depth));
  return {k.child(0), k.child(1), k.child(2), k.child(3)};
}

}  // namespace

AuxBox::AuxBox(const Poly& f) : f_(f), fx_(f.diff(Var::X)), fy_(f.diff(Var::Y)), F_(aux_F(f)) {}

Interval AuxBox::eval(const Box& b) const {
  const Interval expanded = F_.eval(b);
  const Interval squares = f_.eval(b).pow(2) + fx_.eval(b).pow(2) + fy_.eval(b).pow(2);
  return Interval(max(expanded.lo(), squares.lo()), min(expanded.hi(), squares.hi()));
}

BarrierResult step0_barrier(const AuxBox& F, const Box& b0, const Dyadic& ev_lb, int max_depth) {
  BarrierResult out{ev_lb, {}};
  std::deque<CellKey> q0{CellKey{}};
  while (!q0.empty()) {
    const CellKey k = q0.front();
    q0.pop_front();
    const Interval v = F.eval(cell_box(b0, k));
    if (v.lo().sign() > 0) {
      out.q1.push_back(k);
      out.eps = min(out.eps, v.lo());
      continue;
    }
    for (const CellKey& c : children(k, max_depth, ErrorKind::SingularOnBoundary, "isolation")) {
      if (touches_boundary(c))
        q0.push_back(c);
      else
        out.q1.push_back(c);
    }
  }
  return out;
}

ClusterResult step1_cluster(const AuxBox& F, const Box& b0, const Dyadic& eps, std::vector<CellKey> q1,
                            int max_depth) {
  const Dyadic half = eps.half();
  ClusterResult out;
  std::vector<CellKey> q2;
  std::deque<CellKey> work(q1.begin(), q1.end());
  while (!work.empty()) {
    const CellKey k = work.front();
    work.pop_front();
    const Interval v = F.eval(cell_box(b0, k));
    if (half < v.lo()) {
      ++out.discarded;
    } else if (v.hi() < eps) {
      q2.push_back(k);
    } else {
      for (const CellKey& c : children(k, max_depth, ErrorKind::MaxDepthExceeded, "isolation")) work.push_back(c);
    }
  }
  std::sort(q2.begin(), q2.end());
  std::vector<Rect> rects;
  for (const CellKey& k : q2) rects.push_back(cell_box(b0, k).rect());
  std::vector<std::size_t> parent(q2.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < q2.size(); ++i)
    for (std::size_t j = i + 1; j < q2.size(); ++j)
      if (edge_adjacent(rects[i], rects[j])) parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<CellKey>> groups;
  for (std::size_t i = 0; i < q2.size(); ++i) groups[find(i)].push_back(q2[i]);
  for (auto& [root, g] : groups) out.clusters.push_back(std::move(g));
  std::sort(out.clusters.begin(), out.clusters.end());
  return out;
}

std::optional<Rect> step2_refine(const AuxBox& F, const Box& b0, const std::vector<CellKey>& cluster,
                                 const Dyadic& eps, const Dyadic& delta, int max_depth) {
  const std::set<CellKey> footprint(cluster.begin(), cluster.end());
  int deepest = 0;
  for (const CellKey& k : cluster) deepest = std::max(deepest, k.depth);
  const Dyadic half = eps.half();
  const Dyadic delta2 = delta * delta;

  std::vector<CellKey> q(cluster.begin(), cluster.end());
  for (;;) {
    std::vector<CellKey> live;
    bool deep_enough = false;  // some box with F < eps/2 throughout
    std::optional<Rect> r;
    for (const CellKey& k : q) {
      const Box box = cell_box(b0, k);
      const Rect b = box.rect();
      const Interval v = F.eval(box);
      if (!v.contains_zero()) continue;
      live.push_back(k);
      if (v.hi() < half) deep_enough = true;
      r = r ? hull(*r, b) : b;
    }
    if (live.empty()) return std::nullopt;
    if (deep_enough && r->diameter_squared() < delta2 && covered(b0, *r, footprint, deepest, CellKey{})) return r;
    q.clear();
    for (const CellKey& k : live)
      for (const CellKey& c : children(k, max_depth, ErrorKind::MaxDepthExceeded, "isolation")) q.push_back(c);
  }
}

IsolationResult isolate_singularities(const Poly& f, const Box& b0, const Dyadic& ev_lb, const Dyadic& delta,
                                      int max_depth, int threads) {
  const AuxBox F(f);
  BarrierResult s0 = step0_barrier(F, b0, ev_lb, max_depth);
  ClusterResult s1 = step1_cluster(F, b0, s0.eps, std::move(s0.q1), max_depth);
  const std::size_t n = s1.clusters.size();
  std::vector<std::optional<Rect>> found(n);
  std::vector<std::exception_ptr> failed(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        found[i] = step2_refine(F, b0, s1.clusters[i], s0.eps, delta, max_depth);
      } catch (...) {
        failed[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < std::min<int>(threads, static_cast<int>(n)); ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : failed)
    if (e) std::rethrow_exception(e);

  IsolationResult out;
  out.eps = s0.eps;
  out.clusters = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!found[i]) {
      ++out.spurious;
      continue;
    }
    out.rects.push_back({*found[i], std::move(s1.clusters[i])});
  }
  return out;
}

std::vector<AnnulusComponent> annulus_components(const PLGraph& g, const std::vector<std::size_t>& edge_ids,
                                                 const Rect& inner, const Rect& outer) {
  std::map<std::size_t, std::vector<std::size_t>> incident;  // vertex -> edge ids
  for (std::size_t e : edge_ids) {
    incident[g.edges()[e].a].push_back(e);
    incident[g.edges()[e].b].push_back(e);
  }
  std::map<std::size_t, std::size_t> comp_of;  // vertex -> component
  std::vector<AnnulusComponent> out;
  for (const auto& [start, es] : incident) {
    if (comp_of.contains(start)) continue;
    const std::size_t id = out.size();
    AnnulusComponent c;
    std::vector<std::size_t> stack{start};
    std::set<std::size_t> seen_edges;
    std::size_t ends = 0;
    comp_of[start] = id;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      const auto& inc = incident.at(v);
      if (inc.size() == 1) {
        ++ends;
        const Point& p = g.vertices()[v].pt;
        if (inner.on_boundary(p)) {
          c.inner_ends.push_back(v);
        } else if (!outer.on_boundary(p)) {
          throw Error(ErrorKind::ClosedLoopInAnnulus, "degree", "annulus chain ends away from the annulus boundary");
        }
      }
      for (std::size_t e : inc) {
        if (!seen_edges.insert(e).second) continue;
        c.edges.push_back(e);
        const Edge& ed = g.edges()[e];
        const std::size_t w = ed.a == v ? ed.b : ed.a;
        if (comp_of.try_emplace(w, id).second) stack.push_back(w);
      }
    }
    if (ends == 0) throw Error(ErrorKind::ClosedLoopInAnnulus, "degree", "closed loop inside the annulus");
    if (ends != 2)
      throw Error(ErrorKind::ClosedLoopInAnnulus, "degree",
                  "annulus component with " + std::to_string(ends) + " endpoints");
    std::sort(c.edges.begin(), c.edges.end());
    c.type = c.inner_ends.empty() ? 1 : c.inner_ends.size() == 2 ? 2 : 3;
    out.push_back(std::move(c));
  }
  return out;
}

Box enlarge5(const Box& b) {
  const Dyadic w = b.width();
  return Box::square(b.x().lo() - w - w, b.y().lo() - w - w, Dyadic(5) * w);
}

DegreeReport annulus_degree(const Poly& f, const Box& b2, int max_depth, const ExtendedOptions& opts) {
  DegreeReport rep;
  rep.b2 = b2;
  rep.b1 = enlarge5(b2);
  // An 8w root with b2 as a depth-3 cell, so both boxes are unions of cells.
  const Dyadic w = b2.width();
  const Box root = Box::square(b2.x().lo() - Dyadic(3) * w, b2.y().lo() - Dyadic(3) * w, Dyadic(8) * w);
  RegionSpec spec;
  spec.include = rep.b1.rect();
  spec.exclude.push_back(b2.rect());
  ExtendedResult r = run_extended_pv(f, Subdivision::build(root, spec, max_depth), opts);
  std::vector<std::size_t> all(r.graph.edges().size());
  std::iota(all.begin(), all.end(), 0);
  for (const auto& c : annulus_components(r.graph, all, b2.rect(), rep.b1.rect())) ++rep.types[c.type - 1];
  rep.degree = rep.types[2];
  return rep;
}

}  // namespace certmesh
