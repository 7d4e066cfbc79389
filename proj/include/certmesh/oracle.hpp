#pragma once

// Brute-force reference tools for tests and fixture generation. Nothing in
// here is certified, and nothing here depends on the meshing pipeline: only
// exact point evaluation of polynomials is used.

#include <vector>

#include "certmesh/numeric.hpp"
#include "certmesh/poly.hpp"

namespace certmesh::oracle {

struct Component {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t endpoints = 0;
  long cyclomatic = 0;

  friend auto operator<=>(const Component&, const Component&) = default;
};

struct TopologySummary {
  std::vector<Component> components;          // sorted
  std::vector<std::size_t> singular_degrees;  // sorted
  int resolution = 0;

  std::size_t component_count() const { return components.size(); }
  // Sorted cyclomatic numbers, one per component.
  std::vector<long> cyclomatic() const;
  // Sorted endpoint counts, one per component.
  std::vector<std::size_t> endpoints() const;
  // Same components, cycles, endpoints and singular degrees.
  bool same_shape(const TopologySummary& o) const;
};

// Marching squares on an n x n grid (n a power of two) of exact perturbed
// signs. Cells inside an exclusion box are skipped and every crossing on its
// boundary is joined to one vertex standing for the box. Exclusions must be
// unions of grid cells. Throws AmbiguousCell on an alternating cell.
TopologySummary marching_reference(const Poly& f, const Box& b, int n,
                                   const std::vector<Box>& exclusions = {});

// Doubles n from n0 until two consecutive resolutions agree (up to n_max).
// Ambiguous resolutions are skipped. Throws AmbiguousCell if nothing is
// stable by n_max.
TopologySummary marching_stable(const Poly& f, const Box& b, int n0, int n_max,
                                const std::vector<Box>& exclusions = {});

// Sign alternations of f around the square of half-width radius centered
// at center, sampled at n points per side; n doubles until two consecutive
// counts agree.
int circle_branch_count(const Poly& f, const Point& center, const Dyadic& radius, int n);

// Half the smallest grid-local minimum of F = f^2 + fx^2 + fy^2 that does not
// look like a zero at grid scale, rounded down to a power of two.
Dyadic critical_value_estimate(const Poly& f, const Box& b, int n);

}  // namespace certmesh::oracle
