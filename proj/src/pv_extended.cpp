#include "certmesh/pv_extended.hpp"

#include <map>
#include <set>

#include "certmesh/error.hpp"

namespace certmesh {

const char* to_string(CollarType t) {
  switch (t) {
    case CollarType::A: return "a";
    case CollarType::B: return "b";
    case CollarType::C: return "c";
    case CollarType::D: return "d";
    case CollarType::E: return "e";
  }
  return "?";
}

CollarType classify_complementary(const std::array<int, 4>& sg, Side shared) {
  // Corners on the shared side (s1, s2) and the far corners t1, t2, with t1
  // across from s1.
  int s1 = 0, s2 = 0, t1 = 0, t2 = 0;
  switch (shared) {
    case Side::South: s1 = sg[0], s2 = sg[1], t1 = sg[3], t2 = sg[2]; break;
    case Side::East: s1 = sg[1], s2 = sg[2], t1 = sg[0], t2 = sg[3]; break;
    case Side::North: s1 = sg[2], s2 = sg[3], t1 = sg[1], t2 = sg[0]; break;
    case Side::West: s1 = sg[3], s2 = sg[0], t1 = sg[2], t2 = sg[1]; break;
  }
  if (s1 == s2) {
    if (t1 != t2) return CollarType::B;
    return t1 == s1 ? CollarType::E : CollarType::A;
  }
  if (t1 == s1 && t2 == s2) return CollarType::D;
  if (t1 == t2) return CollarType::C;
  throw Error(ErrorKind::AlternatingPattern, "collar", "complementary box has alternating corner signs");
}

std::pair<Box, Box> half_split(const Box& b, Side shared) {
  const auto kids = b.split();  // SW, SE, NW, NE
  switch (shared) {
    case Side::South: return {kids[0], kids[1]};
    case Side::East: return {kids[1], kids[3]};
    case Side::North: return {kids[2], kids[3]};
    case Side::West: return {kids[0], kids[2]};
  }
  return {kids[0], kids[1]};
}

Gadget gadget_vertices(const Box& partner, Side side) {
  const auto [p, q] = partner.side(side);
  const Dyadic w = partner.width();
  const Dyadic inset = w.scaled(-3);
  const Point dir = q.x == p.x ? Point{Dyadic(), w.scaled(-2)} : Point{w.scaled(-2), Dyadic()};
  Gadget g;
  g.u = {p.x + dir.x, p.y + dir.y};
  g.w = {q.x - dir.x, q.y - dir.y};
  const Point m = midpoint(p, q);
  switch (side) {
    case Side::South: g.v = {m.x, m.y + inset}; break;
    case Side::North: g.v = {m.x, m.y - inset}; break;
    case Side::West: g.v = {m.x + inset, m.y}; break;
    case Side::East: g.v = {m.x - inset, m.y}; break;
  }
  return g;
}

namespace {

std::map<CellKey, ComplementaryBox> collect_collar(const Curve& c, const Subdivision& t) {
  std::map<CellKey, ComplementaryBox> out;
  for (const CellKey& k : t.leaves()) {
    if (t.cell(k).status != Status::Kept) continue;
    const Box b = t.box(k);
    for (Side s : kSides) {
      const CellKey m = k.adjacent(s);
      if (t.region_cover(m) != Cover::None) continue;
      auto [it, fresh] = out.try_emplace(m);
      ComplementaryBox& cb = it->second;
      if (fresh) {
        cb.key = m;
        cb.box = b.mirrored(s);
        cb.c0 = c.c0(cb.box);
        const auto corners = cb.box.corners();
        for (int i = 0; i < 4; ++i) cb.corner_signs[i] = c.sign(corners[i]);
      }
      cb.partners.push_back(Partner{k, s});
    }
  }
  return out;
}

}  // namespace

ExtendedResult run_extended_pv(const Poly& f, Subdivision tree, const ExtendedOptions& opts) {
  const Curve c(f);
  Subdivision& t = tree;
  auto narrow = [&](const Box& b) { return !opts.max_width || b.width() <= *opts.max_width; };
  if (!opts.collar) {
    auto queue = region_queue(t);
    pv_phase1(c, t, queue, [&](const CellKey& k) { return narrow(t.box(k)); });
    pv_phase2(c, t);
    PLGraph g = pv_phase3(c, t);
    return {std::move(g), std::move(tree), {}, collect_stats(t)};
  }
  const std::optional<Dyadic> cap =
      opts.collar_eps ? std::optional<Dyadic>(opts.collar_eps->scaled(-2)) : std::nullopt;

  auto accept = [&](const CellKey& k) {
    const Box b = t.box(k);
    if (!narrow(b)) return false;
    for (Side s : kSides) {
      const CellKey m = k.adjacent(s);
      switch (t.region_cover(m)) {
        case Cover::All: continue;
        case Cover::Partial:
          if (k.depth >= t.max_depth())
            throw Error(ErrorKind::CollarInterference, "collar",
                        "complementary box overlaps the region at max depth");
          return false;
        case Cover::None: break;
      }
      const Box mb = b.mirrored(s);
      if (c.c0(mb)) continue;
      if (!c.c1(mb)) return false;
      if (cap && *cap < mb.width()) return false;
    }
    return true;
  };

  PvStats stats;
  auto queue = region_queue(t);
  for (;;) {
    pv_phase1(c, t, queue, accept);
    pv_phase2(c, t);
    const auto collar = collect_collar(c, t);
    std::set<CellKey> to_split;
    for (const auto& [key, cb] : collar) {
      for (CellKey a = key; a.depth > 0;) {
        a = a.parent();
        auto it = collar.find(a);
        if (it == collar.end() || it->second.c0) continue;
        for (const Partner& p : it->second.partners) to_split.insert(p.leaf);
      }
    }
    if (to_split.empty()) break;
    for (const CellKey& k : to_split) {
      if (k.depth >= t.max_depth())
        throw Error(ErrorKind::CollarInterference, "collar",
                    "overlapping complementary boxes at max depth");
      ++stats.interference_splits;
      for (const CellKey& kid : t.split(k)) queue.push_back(kid);
    }
  }

  PLGraph g = pv_phase3(c, t);
  std::vector<ComplementaryBox> out;
  std::size_t gadgets = 0;
  for (auto& [key, cb] : collect_collar(c, t)) {
    if (!cb.c0) {
      for (Partner& p : cb.partners) {
        p.type = classify_complementary(cb.corner_signs, opposite(p.side));
        p.transient = is_transient(p.type);
        if (!p.transient) continue;
        const Gadget gd = gadget_vertices(t.box(p.leaf), p.side);
        const std::size_t u = g.add_vertex(gd.u, VertexTag::AugmentedCollar);
        const std::size_t v = g.add_vertex(gd.v, VertexTag::AugmentedCollar);
        const std::size_t w = g.add_vertex(gd.w, VertexTag::AugmentedCollar);
        g.add_edge(u, v, p.leaf);
        g.add_edge(v, w, p.leaf);
        ++gadgets;
      }
    }
    out.push_back(std::move(cb));
  }
  const PvStats base = collect_stats(t);
  stats.leaves = base.leaves;
  stats.kept = base.kept;
  stats.discarded = base.discarded;
  stats.depth = base.depth;
  stats.collar_boxes = out.size();
  stats.gadgets = gadgets;
  return {std::move(g), std::move(tree), std::move(out), stats};
}

}  // namespace certmesh
