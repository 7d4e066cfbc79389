#pragma once

// Quadtree over a dyadic root square. Cells are addressed by (depth, ix, iy)
// on the 2^depth x 2^depth grid of the root, and stored in a hash map so
// neighbor lookups never walk parent pointers.

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "certmesh/numeric.hpp"

namespace certmesh {

struct CellKey {
  int depth = 0;
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  friend bool operator==(const CellKey&, const CellKey&) = default;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;

  CellKey parent() const { return {depth - 1, ix >> 1, iy >> 1}; }
  CellKey child(int q) const { return {depth + 1, 2 * ix + (q & 1), 2 * iy + (q >> 1)}; }
  CellKey adjacent(Side s) const;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.ix) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::size_t>(k.iy) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(k.depth) * 1315423911u;
  }
};

// Box of cell k in the grid of root; k may lie outside the root.
Box cell_box(const Box& root, const CellKey& k);

enum class Membership : std::uint8_t { Inside, Outside };
enum class Status : std::uint8_t { Pending, Discarded, Kept };

struct Cell {
  bool leaf = true;
  Membership membership = Membership::Inside;
  Status status = Status::Pending;
};

struct Segment {
  Point a;  // a < b
  Point b;
  bool boundary = false;

  Point midpoint() const { return certmesh::midpoint(a, b); }
  friend bool operator==(const Segment& s, const Segment& t) { return s.a == t.a && s.b == t.b; }
};

// How much of a cell is covered by Inside leaves.
enum class Cover : std::uint8_t { None, Partial, All };

struct RegionSpec {
  std::optional<Rect> include;  // region is root ∩ include
  std::vector<Rect> exclude;    // minus these
  std::vector<Rect> align;      // must end up as unions of leaves
};

class Subdivision {
 public:
  Subdivision(Box root, int max_depth);

  // Builds the tree so that every leaf is wholly inside or outside the
  // region described by spec. Throws InvalidRegion if that needs more than
  // max_depth levels.
  static Subdivision build(const Box& root, const RegionSpec& spec, int max_depth);

  const Box& root() const { return root_; }
  int max_depth() const { return max_depth_; }

  bool in_root(const CellKey& k) const;
  bool exists(const CellKey& k) const { return cells_.contains(k); }
  Box box(const CellKey& k) const;
  const Cell& cell(const CellKey& k) const;
  Cell& cell(const CellKey& k);
  bool is_leaf(const CellKey& k) const;

  // Splits a leaf; children inherit membership and start Pending.
  std::array<CellKey, 4> split(const CellKey& k);

  // Leaves in depth-first (Z) order.
  std::vector<CellKey> leaves() const;
  std::size_t cell_count() const { return cells_.size(); }
  int deepest_leaf() const;

  // The leaf whose box contains cell k (k itself or an ancestor), if any.
  std::optional<CellKey> leaf_covering(const CellKey& k) const;
  // Leaf containing a point strictly inside some leaf.
  std::optional<CellKey> leaf_at(const Point& p) const;

  // Leaves across side s of leaf k, ordered by increasing coordinate.
  std::vector<CellKey> side_neighbors(const CellKey& k, Side s) const;
  // All side neighbors of a leaf.
  std::vector<CellKey> neighbors(const CellKey& k) const;

  // Segments along side s of leaf k, increasing coordinate. Interior
  // segments are shared sides with Inside leaves (the shorter of the two
  // sides); maximal runs against non-region become one boundary segment.
  std::vector<Segment> side_segments(const CellKey& k, Side s) const;
  // All segments of a leaf in counter-clockwise order from the SW corner.
  std::vector<Segment> segments(const CellKey& k) const;

  Cover region_cover(const CellKey& k) const;
  bool point_in_region(const Point& p) const;

  // Splits active leaves until neighboring active leaves differ in width by
  // at most a factor of two. Smallest boxes are processed first. on_split
  // is called for every child created, and decides its status.
  void balance(const std::function<bool(const CellKey&)>& is_active,
               const std::function<void(const CellKey&)>& on_split);

 private:
  void collect_adjacent(const CellKey& k, Side toward, std::vector<CellKey>& out) const;

  Box root_;
  int max_depth_;
  std::unordered_map<CellKey, Cell, CellKeyHash> cells_;
};

enum class CornerKind : std::uint8_t { Convex, Concave };

struct RegionCorner {
  Point at;
  CornerKind kind;
};

struct RegionInfo {
  std::vector<Segment> boundary;  // union of boundary sides of Inside leaves
  std::vector<RegionCorner> corners;
  int boundary_loops = 0;
  std::size_t inside_leaves = 0;
};

RegionInfo region_of(const Subdivision& t);

}  // namespace certmesh
