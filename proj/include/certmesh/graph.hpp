#pragma once

// Straight-line graphs with dyadic vertices: the output mesh.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "certmesh/numeric.hpp"
#include "certmesh/subdivision.hpp"

namespace certmesh {

enum class VertexTag : std::uint8_t { SegmentMidpoint, AugmentedCollar, SingularCenter };

const char* to_string(VertexTag t);

struct Vertex {
  Point pt;
  VertexTag tag = VertexTag::SegmentMidpoint;
};

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  std::optional<CellKey> owner;  // leaf box that produced the edge
};

class PLGraph {
 public:
  // Returns the existing index when a vertex already sits at p.
  std::size_t add_vertex(const Point& p, VertexTag tag);
  std::optional<std::size_t> find(const Point& p) const;
  // Rejects self-loops and ignores duplicates; returns false for a duplicate.
  bool add_edge(std::size_t a, std::size_t b, std::optional<CellKey> owner = std::nullopt);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<std::size_t> degrees() const;

  // Drops the given edges, then every vertex left without edges unless it
  // is a singular center. Indices are compacted preserving order.
  void remove_edges(const std::set<std::size_t>& edge_ids);

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::map<Point, std::size_t> index_;
  std::set<std::pair<std::size_t, std::size_t>> edge_set_;
};

struct ComponentSummary {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t endpoints = 0;  // degree-1 vertices
  long cyclomatic = 0;        // E - V + 1

  friend auto operator<=>(const ComponentSummary&, const ComponentSummary&) = default;
};

struct GraphTopology {
  std::vector<ComponentSummary> components;  // sorted
  std::vector<std::size_t> singular_degrees;  // sorted

  std::size_t component_count() const { return components.size(); }
  long total_cyclomatic() const;
};

GraphTopology topology(const PLGraph& g);

// Connected components as lists of edge indices (isolated vertices omitted).
std::vector<std::vector<std::size_t>> edge_components(const PLGraph& g);

}  // namespace certmesh
