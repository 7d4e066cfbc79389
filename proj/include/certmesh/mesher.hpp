#pragma once

// End-to-end meshing of a curve with isolated singular points: square-free
// reduction, isolation, extended PV on the region with small boxes around
// each singularity removed, and reconnection of the branches to a center.

#include <optional>
#include <vector>

#include "certmesh/bounds.hpp"
#include "certmesh/singular.hpp"

namespace certmesh {

struct MeshConfig {
  int max_depth = 40;
  std::optional<Dyadic> eps;  // unset means no refinement
  BoundOverrides overrides;
  bool collar = true;
  std::optional<Dyadic> collar_eps;
  int threads = 1;
};

struct SingularityInfo {
  Point center;
  std::size_t degree = 0;
  Rect rect;  // isolating rectangle
  Box inner;  // removed from the region
  Box outer;  // five times inner, concentric
  std::array<std::size_t, 3> types{};
};

struct MeshInput {
  Poly f_raw;
  Box root;
  RegionSpec region;
  MeshConfig config;
};

struct MeshResult {
  MeshInput input;
  Poly f;  // square-free part
  BoundReport bounds;
  Dyadic isolation_eps;
  std::vector<SingularityInfo> singularities;
  PLGraph graph;
  Subdivision tree;
  std::vector<ComplementaryBox> collar;
  PvStats stats;
};

// region restricts the root box (include/exclude); its align list is
// extended internally.
MeshResult mesh(const Poly& f_raw, const Box& root, const RegionSpec& region = {}, const MeshConfig& config = {});

// Reruns the pipeline with every graph-carrying box at most eps/4 wide.
MeshResult refine_to_eps(const MeshResult& result, const Dyadic& eps);

}  // namespace certmesh
