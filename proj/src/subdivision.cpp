#include "certmesh/subdivision.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "certmesh/error.hpp"

namespace certmesh {

CellKey CellKey::adjacent(Side s) const {
  switch (s) {
    case Side::South: return {depth, ix, iy - 1};
    case Side::East: return {depth, ix + 1, iy};
    case Side::North: return {depth, ix, iy + 1};
    case Side::West: return {depth, ix - 1, iy};
  }
  return *this;
}

Subdivision::Subdivision(Box root, int max_depth) : root_(std::move(root)), max_depth_(max_depth) {
  if (root_.width().sign() <= 0) throw Error(ErrorKind::InvalidRegion, "subdivision", "root box has zero width");
  if (max_depth_ < 0 || max_depth_ > 62)
    throw Error(ErrorKind::InvalidInput, "subdivision", "max depth must be in [0, 62]");
  root_ = Box(root_.x(), root_.y(), 0);
  cells_.emplace(CellKey{}, Cell{});
}

bool Subdivision::in_root(const CellKey& k) const {
  if (k.depth < 0) return false;
  const std::int64_t n = std::int64_t{1} << k.depth;
  return k.ix >= 0 && k.iy >= 0 && k.ix < n && k.iy < n;
}

Box cell_box(const Box& root, const CellKey& k) {
  const Dyadic w = root.width().scaled(-k.depth);
  return Box::square(root.x().lo() + Dyadic(k.ix) * w, root.y().lo() + Dyadic(k.iy) * w, w, k.depth);
}

Box Subdivision::box(const CellKey& k) const { return cell_box(root_, k); }

const Cell& Subdivision::cell(const CellKey& k) const {
  auto it = cells_.find(k);
  if (it == cells_.end()) throw std::logic_error("no such cell");
  return it->second;
}

Cell& Subdivision::cell(const CellKey& k) {
  auto it = cells_.find(k);
  if (it == cells_.end()) throw std::logic_error("no such cell");
  return it->second;
}

bool Subdivision::is_leaf(const CellKey& k) const {
  auto it = cells_.find(k);
  return it != cells_.end() && it->second.leaf;
}

std::array<CellKey, 4> Subdivision::split(const CellKey& k) {
  Cell& c = cell(k);
  if (!c.leaf) throw std::logic_error("split of an internal cell");
  if (k.depth >= max_depth_)
    throw Error(ErrorKind::MaxDepthExceeded, "subdivision",
                "subdivision exceeded max depth " + std::to_string(max_depth_));
  c.leaf = false;
  const Membership m = c.membership;
  std::array<CellKey, 4> kids;
  for (int q = 0; q < 4; ++q) {
    kids[q] = k.child(q);
    cells_[kids[q]] = Cell{true, m, Status::Pending};
  }
  return kids;
}

std::vector<CellKey> Subdivision::leaves() const {
  std::vector<CellKey> out;
  std::vector<CellKey> stack{CellKey{}};
  while (!stack.empty()) {
    const CellKey k = stack.back();
    stack.pop_back();
    if (cell(k).leaf) {
      out.push_back(k);
      continue;
    }
    for (int q = 3; q >= 0; --q) stack.push_back(k.child(q));
  }
  return out;
}

int Subdivision::deepest_leaf() const {
  int d = 0;
  for (const auto& [k, c] : cells_)
    if (c.leaf) d = std::max(d, k.depth);
  return d;
}

std::optional<CellKey> Subdivision::leaf_covering(const CellKey& k) const {
  if (!in_root(k)) return std::nullopt;
  CellKey a = k;
  while (!exists(a)) a = a.parent();
  if (cell(a).leaf) return a;
  return std::nullopt;
}

std::optional<CellKey> Subdivision::leaf_at(const Point& p) const {
  const Rect r = root_.rect();
  if (!(r.x.lo() < p.x && p.x < r.x.hi() && r.y.lo() < p.y && p.y < r.y.hi())) return std::nullopt;
  CellKey k{};
  while (!cell(k).leaf) {
    const Point c = box(k).center();
    if (p.x == c.x || p.y == c.y) return std::nullopt;
    k = k.child((p.x > c.x ? 1 : 0) + (p.y > c.y ? 2 : 0));
  }
  return k;
}

void Subdivision::collect_adjacent(const CellKey& k, Side toward, std::vector<CellKey>& out) const {
  if (cell(k).leaf) {
    out.push_back(k);
    return;
  }
  // Children touching side `toward`, in increasing coordinate order.
  std::array<int, 2> qs{};
  switch (toward) {
    case Side::South: qs = {0, 1}; break;
    case Side::North: qs = {2, 3}; break;
    case Side::West: qs = {0, 2}; break;
    case Side::East: qs = {1, 3}; break;
  }
  for (int q : qs) collect_adjacent(k.child(q), toward, out);
}

std::vector<CellKey> Subdivision::side_neighbors(const CellKey& k, Side s) const {
  const CellKey n = k.adjacent(s);
  if (!in_root(n)) return {};
  std::vector<CellKey> out;
  if (exists(n)) {
    collect_adjacent(n, opposite(s), out);
  } else if (auto leaf = leaf_covering(n)) {
    out.push_back(*leaf);
  }
  return out;
}

std::vector<CellKey> Subdivision::neighbors(const CellKey& k) const {
  std::vector<CellKey> out;
  for (Side s : kSides) {
    auto part = side_neighbors(k, s);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<Segment> Subdivision::side_segments(const CellKey& k, Side s) const {
  const Box b = box(k);
  const auto full = b.side(s);
  const auto nbrs = side_neighbors(k, s);
  if (nbrs.empty()) return {Segment{full.first, full.second, true}};
  std::vector<Segment> out;
  for (const CellKey& n : nbrs) {
    const bool inside = cell(n).membership == Membership::Inside;
    const auto piece = n.depth >= k.depth ? box(n).side(opposite(s)) : full;
    if (!inside && !out.empty() && out.back().boundary && out.back().b == piece.first) {
      out.back().b = piece.second;
      continue;
    }
    out.push_back(Segment{piece.first, piece.second, !inside});
  }
  return out;
}

std::vector<Segment> Subdivision::segments(const CellKey& k) const {
  std::vector<Segment> out;
  for (Side s : kSides) {
    auto part = side_segments(k, s);
    if (s == Side::North || s == Side::West) std::reverse(part.begin(), part.end());
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Cover Subdivision::region_cover(const CellKey& k) const {
  if (!in_root(k)) return Cover::None;
  if (auto leaf = leaf_covering(k))
    return cell(*leaf).membership == Membership::Inside ? Cover::All : Cover::None;
  bool any_in = false;
  bool any_out = false;
  for (int q = 0; q < 4; ++q) {
    switch (region_cover(k.child(q))) {
      case Cover::All: any_in = true; break;
      case Cover::None: any_out = true; break;
      case Cover::Partial: return Cover::Partial;
    }
    if (any_in && any_out) return Cover::Partial;
  }
  return any_in ? Cover::All : Cover::None;
}

bool Subdivision::point_in_region(const Point& p) const {
  auto leaf = leaf_at(p);
  return leaf && cell(*leaf).membership == Membership::Inside;
}

void Subdivision::balance(const std::function<bool(const CellKey&)>& is_active,
                          const std::function<void(const CellKey&)>& on_split) {
  // Deepest (smallest) first; ties broken by key for determinism.
  auto later = [](const CellKey& a, const CellKey& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    return b < a;
  };
  std::priority_queue<CellKey, std::vector<CellKey>, decltype(later)> queue(later);
  for (const CellKey& k : leaves())
    if (is_active(k)) queue.push(k);
  while (!queue.empty()) {
    const CellKey k = queue.top();
    queue.pop();
    if (!is_leaf(k) || !is_active(k)) continue;
    bool again = false;
    for (const CellKey& n : neighbors(k)) {
      if (n.depth >= k.depth - 1 || !is_active(n)) continue;
      for (const CellKey& c : split(n)) {
        on_split(c);
        if (is_active(c)) queue.push(c);
      }
      again = true;
    }
    if (again) queue.push(k);
  }
}

namespace {

enum class Verdict { Inside, Outside, Split };

Verdict classify(const Rect& r, const RegionSpec& spec) {
  for (const Rect& a : spec.align)
    if (a.interior_intersects(r) && !a.contains(r)) return Verdict::Split;
  if (spec.include && !spec.include->interior_intersects(r)) return Verdict::Outside;
  for (const Rect& e : spec.exclude)
    if (e.contains(r)) return Verdict::Outside;
  if (spec.include && !spec.include->contains(r)) return Verdict::Split;
  for (const Rect& e : spec.exclude)
    if (e.interior_intersects(r)) return Verdict::Split;
  return Verdict::Inside;
}

}  // namespace

Subdivision Subdivision::build(const Box& root, const RegionSpec& spec, int max_depth) {
  Subdivision t(root, max_depth);
  std::vector<CellKey> stack{CellKey{}};
  while (!stack.empty()) {
    const CellKey k = stack.back();
    stack.pop_back();
    switch (classify(t.box(k).rect(), spec)) {
      case Verdict::Inside: t.cell(k).membership = Membership::Inside; break;
      case Verdict::Outside: t.cell(k).membership = Membership::Outside; break;
      case Verdict::Split:
        if (k.depth >= max_depth)
          throw Error(ErrorKind::InvalidRegion, "subdivision",
                      "region is not a union of dyadic grid cells within max depth");
        for (const CellKey& c : t.split(k)) stack.push_back(c);
        break;
    }
  }
  return t;
}

RegionInfo region_of(const Subdivision& t) {
  RegionInfo info;
  std::map<Point, std::size_t> ids;
  std::vector<std::size_t> parent;
  auto id = [&](const Point& p) {
    auto [it, fresh] = ids.try_emplace(p, parent.size());
    if (fresh) parent.push_back(parent.size());
    return it->second;
  };
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const CellKey& k : t.leaves()) {
    if (t.cell(k).membership != Membership::Inside) continue;
    ++info.inside_leaves;
    for (const Segment& s : t.segments(k)) {
      if (!s.boundary) continue;
      info.boundary.push_back(s);
      const std::size_t a = find(id(s.a));
      const std::size_t b = find(id(s.b));
      if (a != b) parent[a] = b;
    }
  }
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (find(v) == v) ++info.boundary_loops;

  const Dyadic eta = t.root().width().scaled(-t.deepest_leaf() - 2);
  for (const auto& [p, v] : ids) {
    int inside = 0;
    bool diag = false;
    std::array<bool, 4> q{};
    for (int i = 0; i < 4; ++i) {
      const Point s{p.x + ((i & 1) ? eta : -eta), p.y + ((i & 2) ? eta : -eta)};
      q[i] = t.point_in_region(s);
      inside += q[i];
    }
    diag = inside == 2 && q[0] == q[3];
    if (inside == 1) info.corners.push_back({p, CornerKind::Convex});
    if (inside == 3 || diag) info.corners.push_back({p, CornerKind::Concave});
  }
  return info;
}

}  // namespace certmesh
