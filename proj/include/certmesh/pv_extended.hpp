#pragma once

// Collar extension: complementary boxes mirror boundary boxes across the
// region boundary; transient ones add a three-vertex gadget to the graph.

#include <array>
#include <optional>
#include <vector>

#include "certmesh/pv_core.hpp"

namespace certmesh {

enum class CollarType : std::uint8_t { A, B, C, D, E };

const char* to_string(CollarType t);
inline bool is_transient(CollarType t) { return t == CollarType::A || t == CollarType::B; }

struct Partner {
  CellKey leaf;
  Side side;  // side of the partner shared with the complementary box
  CollarType type = CollarType::E;
  bool transient = false;
};

struct ComplementaryBox {
  CellKey key;  // cell of the same grid as the partner; may lie outside the root
  Box box;
  bool c0 = false;
  std::array<int, 4> corner_signs{};  // perturbed, counter-clockwise from SW
  std::vector<Partner> partners;
};

// shared: side of the complementary box that touches the partner.
CollarType classify_complementary(const std::array<int, 4>& corner_signs, Side shared);

// The two children of a complementary box that touch its partner side.
std::pair<Box, Box> half_split(const Box& complementary, Side shared);

struct Gadget {
  Point u;
  Point v;
  Point w;
};

// u and w at the quarter points of the partner side, v at its midpoint moved
// an eighth of the partner width into the partner.
Gadget gadget_vertices(const Box& partner, Side side);

struct ExtendedOptions {
  bool collar = true;
  std::optional<Dyadic> collar_eps;
  // Kept boxes wider than this are split (eps refinement).
  std::optional<Dyadic> max_width;
};

struct ExtendedResult {
  PLGraph graph;
  Subdivision tree;
  std::vector<ComplementaryBox> collar;
  PvStats stats;
};

ExtendedResult run_extended_pv(const Poly& f, Subdivision tree, const ExtendedOptions& opts = {});

}  // namespace certmesh
