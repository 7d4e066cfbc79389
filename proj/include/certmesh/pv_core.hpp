#pragma once

// Base subdivision mesher for nonsingular curves: exclusion and gradient
// predicates, subdivision, balancing and graph construction.

#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "certmesh/graph.hpp"
#include "certmesh/poly.hpp"
#include "certmesh/subdivision.hpp"

namespace certmesh {

bool pred_c0(const Poly& f, const Box& b);
bool pred_c1(const Poly& f, const Box& b);

// Sign of f at p with zero mapped to +1.
int perturbed_sign(const Poly& f, const Point& p);

// Vertex at the midpoint of seg when the perturbed signs at its ends differ.
std::optional<Point> phase3_vertex(const Poly& f, const Segment& seg);

// Pairs up the vertices found on the boundary of b. Returns index pairs into
// verts. Throws CardinalityViolation unless there are 0, 2 or 4 of them.
std::vector<std::pair<std::size_t, std::size_t>> phase3_connect(const Box& b,
                                                                const std::vector<Point>& verts);

struct Phase1Result {
  std::vector<Box> kept;
  std::vector<Box> discarded;
};

// Standalone subdivision of a work list of boxes, FIFO.
Phase1Result phase1_subdivide(const Poly& f, std::deque<Box> work, int max_depth);

// f with its partial derivatives and a corner sign cache.
class Curve {
 public:
  explicit Curve(Poly f);

  const Poly& f() const { return f_; }
  bool c0(const Box& b) const;
  bool c1(const Box& b) const;
  int sign(const Point& p) const;

 private:
  Poly f_;
  Poly fx_;
  Poly fy_;
  mutable std::unordered_map<Point, int, PointHash> signs_;
};

struct PvStats {
  std::size_t leaves = 0;
  std::size_t kept = 0;
  std::size_t discarded = 0;
  int depth = 0;
  std::size_t collar_boxes = 0;
  std::size_t gadgets = 0;
  std::size_t interference_splits = 0;
};

// Tree-level phases. Phase 1 pops leaves FIFO: C0 leaves are discarded, C1
// leaves for which accept() holds are kept, everything else is split.
void pv_phase1(const Curve& c, Subdivision& t, std::deque<CellKey>& queue,
               const std::function<bool(const CellKey&)>& accept);
void pv_phase2(const Curve& c, Subdivision& t);
PLGraph pv_phase3(const Curve& c, const Subdivision& t);

// Inside leaves reset to Pending, in tree order.
std::deque<CellKey> region_queue(Subdivision& t);

struct PvResult {
  PLGraph graph;
  Subdivision tree;
  PvStats stats;
};

PvResult run_pv(const Poly& f, Subdivision tree);

PvStats collect_stats(const Subdivision& t);

}  // namespace certmesh
