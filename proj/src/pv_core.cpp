#include "certmesh/pv_core.hpp"

#include <algorithm>
#include <numeric>

#include "certmesh/error.hpp"

namespace certmesh {

bool pred_c0(const Poly& f, const Box& b) { return !f.eval(b).contains_zero(); }

bool pred_c1(const Poly& f, const Box& b) {
  const Interval gx = f.diff(Var::X).eval(b);
  const Interval gy = f.diff(Var::Y).eval(b);
  return !(gx.pow(2) + gy.pow(2)).contains_zero();
}

int perturbed_sign(const Poly& f, const Point& p) { return f.eval(p).sign() < 0 ? -1 : 1; }

std::optional<Point> phase3_vertex(const Poly& f, const Segment& seg) {
  if (perturbed_sign(f, seg.a) == perturbed_sign(f, seg.b)) return std::nullopt;
  return seg.midpoint();
}

namespace {

// Position along the boundary of b, counter-clockwise from the SW corner.
Dyadic boundary_param(const Box& b, const Point& p) {
  const Dyadic w = b.width();
  const Rect r = b.rect();
  if (p.y == r.y.lo() && p.x < r.x.hi()) return p.x - r.x.lo();
  if (p.x == r.x.hi() && p.y < r.y.hi()) return w + (p.y - r.y.lo());
  if (p.y == r.y.hi() && p.x > r.x.lo()) return w + w + (r.x.hi() - p.x);
  if (p.x == r.x.lo()) return w + w + w + (r.y.hi() - p.y);
  throw std::logic_error("vertex is not on the box boundary");
}

int side_index(const Box& b, const Point& p) {
  const Rect r = b.rect();
  if (p.y == r.y.lo()) return 0;
  if (p.x == r.x.hi()) return 1;
  if (p.y == r.y.hi()) return 2;
  return 3;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> phase3_connect(const Box& b,
                                                                const std::vector<Point>& verts) {
  const std::size_t n = verts.size();
  if (n != 0 && n != 2 && n != 4)
    throw Error(ErrorKind::CardinalityViolation, "pv",
                "box has " + std::to_string(n) + " boundary vertices");
  if (n == 0) return {};
  if (n == 2) return {{0, 1}};
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Dyadic> t;
  for (const Point& p : verts) t.push_back(boundary_param(b, p));
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return t[i] < t[j]; });
  // The two non-crossing pairings join cyclic neighbors; pick the one that
  // never joins two vertices of the same side.
  auto same_side = [&](std::size_t i, std::size_t j) {
    return side_index(b, verts[order[i]]) == side_index(b, verts[order[j]]);
  };
  if (!same_side(0, 1) && !same_side(2, 3)) return {{order[0], order[1]}, {order[2], order[3]}};
  return {{order[1], order[2]}, {order[3], order[0]}};
}

Phase1Result phase1_subdivide(const Poly& f, std::deque<Box> work, int max_depth) {
  const Curve c(f);
  Phase1Result r;
  while (!work.empty()) {
    Box b = std::move(work.front());
    work.pop_front();
    if (c.c0(b)) {
      r.discarded.push_back(b);
    } else if (c.c1(b)) {
      r.kept.push_back(b);
    } else {
      if (b.depth() >= max_depth)
        throw Error(ErrorKind::MaxDepthExceeded, "pv", "subdivision exceeded max depth " + std::to_string(max_depth));
      for (Box& k : b.split()) work.push_back(std::move(k));
    }
  }
  return r;
}

Curve::Curve(Poly f) : f_(std::move(f)), fx_(f_.diff(Var::X)), fy_(f_.diff(Var::Y)) {}

bool Curve::c0(const Box& b) const { return !f_.eval(b).contains_zero(); }

bool Curve::c1(const Box& b) const {
  return !(fx_.eval(b).pow(2) + fy_.eval(b).pow(2)).contains_zero();
}

int Curve::sign(const Point& p) const {
  auto it = signs_.find(p);
  if (it != signs_.end()) return it->second;
  const int s = f_.eval(p).sign() < 0 ? -1 : 1;
  signs_.emplace(p, s);
  return s;
}

std::deque<CellKey> region_queue(Subdivision& t) {
  std::deque<CellKey> q;
  for (const CellKey& k : t.leaves()) {
    Cell& c = t.cell(k);
    if (c.membership != Membership::Inside) continue;
    c.status = Status::Pending;
    q.push_back(k);
  }
  return q;
}

void pv_phase1(const Curve& c, Subdivision& t, std::deque<CellKey>& queue,
               const std::function<bool(const CellKey&)>& accept) {
  while (!queue.empty()) {
    const CellKey k = queue.front();
    queue.pop_front();
    const Box b = t.box(k);
    Cell& cell = t.cell(k);
    if (c.c0(b)) {
      cell.status = Status::Discarded;
    } else if (c.c1(b) && (!accept || accept(k))) {
      cell.status = Status::Kept;
    } else {
      for (const CellKey& kid : t.split(k)) queue.push_back(kid);
    }
  }
}

void pv_phase2(const Curve& c, Subdivision& t) {
  t.balance([&](const CellKey& k) { return t.cell(k).status == Status::Kept; },
            [&](const CellKey& k) {
              t.cell(k).status = c.c0(t.box(k)) ? Status::Discarded : Status::Kept;
            });
}

PLGraph pv_phase3(const Curve& c, const Subdivision& t) {
  PLGraph g;
  for (const CellKey& k : t.leaves()) {
    if (t.cell(k).status != Status::Kept) continue;
    std::vector<Point> verts;
    for (const Segment& s : t.segments(k))
      if (c.sign(s.a) != c.sign(s.b)) verts.push_back(s.midpoint());
    const auto pairs = phase3_connect(t.box(k), verts);
    for (const auto& [i, j] : pairs) {
      const std::size_t a = g.add_vertex(verts[i], VertexTag::SegmentMidpoint);
      const std::size_t b = g.add_vertex(verts[j], VertexTag::SegmentMidpoint);
      g.add_edge(a, b, k);
    }
  }
  return g;
}

PvStats collect_stats(const Subdivision& t) {
  PvStats s;
  for (const CellKey& k : t.leaves()) {
    ++s.leaves;
    s.depth = std::max(s.depth, k.depth);
    const Cell& c = t.cell(k);
    if (c.status == Status::Kept) ++s.kept;
    if (c.status == Status::Discarded) ++s.discarded;
  }
  return s;
}

PvResult run_pv(const Poly& f, Subdivision tree) {
  const Curve c(f);
  auto queue = region_queue(tree);
  pv_phase1(c, tree, queue, {});
  pv_phase2(c, tree);
  PLGraph g = pv_phase3(c, tree);
  PvStats stats = collect_stats(tree);
  return {std::move(g), std::move(tree), stats};
}

}  // namespace certmesh
