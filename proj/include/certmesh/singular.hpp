#pragma once

// Isolation of the zeros of F = f^2 + fx^2 + fy^2 (the singular points of a
// square-free curve) and branching degrees from annulus components.
//
// Boxes are addressed as cells of the grid of the root box b0.

#include <array>
#include <optional>
#include <vector>

#include "certmesh/pv_extended.hpp"

namespace certmesh {

// Box function of F = f^2 + fx^2 + fy^2: the Horner bound of the expanded
// polynomial intersected with the sum of the squared bounds of f, fx, fy.
class AuxBox {
 public:
  explicit AuxBox(const Poly& f);

  const Poly& F() const { return F_; }
  Interval eval(const Box& b) const;

 private:
  Poly f_;
  Poly fx_;
  Poly fy_;
  Poly F_;
};

struct BarrierResult {
  Dyadic eps;
  std::vector<CellKey> q1;  // partition of b0 handed to the clustering step
};

// Subdivides boundary-touching boxes until F is positive on each, lowering
// eps to the smallest certified lower bound seen. Throws SingularOnBoundary.
BarrierResult step0_barrier(const AuxBox& F, const Box& b0, const Dyadic& ev_lb, int max_depth);

struct ClusterResult {
  std::vector<std::vector<CellKey>> clusters;  // edge-connected, sorted keys
  std::size_t discarded = 0;
};

ClusterResult step1_cluster(const AuxBox& F, const Box& b0, const Dyadic& eps, std::vector<CellKey> q1,
                            int max_depth);

// Smallest rectangle around the surviving boxes of a cluster, or nothing if
// the cluster holds no zero.
std::optional<Rect> step2_refine(const AuxBox& F, const Box& b0, const std::vector<CellKey>& cluster,
                                 const Dyadic& eps, const Dyadic& delta, int max_depth);

struct IsolatedRect {
  Rect rect;
  std::vector<CellKey> footprint;
};

struct IsolationResult {
  Dyadic eps;
  std::vector<IsolatedRect> rects;
  std::size_t clusters = 0;
  std::size_t spurious = 0;  // clusters that turned out to hold no zero
};

// f must be square-free. Clusters are refined on up to `threads` threads;
// the result does not depend on the thread count.
IsolationResult isolate_singularities(const Poly& f, const Box& b0, const Dyadic& ev_lb,
                                      const Dyadic& delta, int max_depth, int threads = 1);

struct AnnulusComponent {
  std::vector<std::size_t> edges;
  std::vector<std::size_t> inner_ends;  // endpoints on the inner boundary
  int type = 1;                         // 1 outer/outer, 2 inner/inner, 3 mixed
};

// Components of the subgraph formed by edge_ids, typed by where their two
// endpoints lie. Throws ClosedLoopInAnnulus for cycles and other shapes.
std::vector<AnnulusComponent> annulus_components(const PLGraph& g, const std::vector<std::size_t>& edge_ids,
                                                 const Rect& inner, const Rect& outer);

struct DegreeReport {
  Box b2;
  Box b1;
  std::array<std::size_t, 3> types{};
  std::size_t degree = 0;
};

// The concentric box of five times the width.
Box enlarge5(const Box& b);

DegreeReport annulus_degree(const Poly& f, const Box& b2, int max_depth = 40, const ExtendedOptions& opts = {});

}  // namespace certmesh
