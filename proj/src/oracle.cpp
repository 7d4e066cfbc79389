#include "certmesh/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <optional>

#include "certmesh/error.hpp"

namespace certmesh::oracle {

std::vector<long> TopologySummary::cyclomatic() const {
  std::vector<long> out;
  for (const auto& c : components) out.push_back(c.cyclomatic);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> TopologySummary::endpoints() const {
  std::vector<std::size_t> out;
  for (const auto& c : components) out.push_back(c.endpoints);
  std::sort(out.begin(), out.end());
  return out;
}

bool TopologySummary::same_shape(const TopologySummary& o) const {
  return cyclomatic() == o.cyclomatic() && endpoints() == o.endpoints() &&
         singular_degrees == o.singular_degrees;
}

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

class UnionFind {
 public:
  std::size_t add() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

struct SignGrid {
  SignGrid(const Poly& f, const Box& b, int n) : n(n), sign((n + 1) * (n + 1)) {
    const Dyadic h = b.width() * Dyadic(mpz_class(1), -static_cast<std::int64_t>(std::countr_zero(unsigned(n))));
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        const Point p{b.x().lo() + Dyadic(i) * h, b.y().lo() + Dyadic(j) * h};
        sign[idx(i, j)] = f.eval(p).sign() < 0 ? -1 : 1;
      }
  }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * (n + 1) + i; }
  int at(int i, int j) const { return sign[idx(i, j)]; }

  int n;
  std::vector<int> sign;
};

// Grid-cell rectangle [i0,i1) x [j0,j1) of an exclusion box.
struct CellRange {
  int i0, i1, j0, j1;
  bool contains_cell(int i, int j) const { return i >= i0 && i < i1 && j >= j0 && j < j1; }
};

CellRange to_cells(const Box& root, int n, const Box& e) {
  auto coord = [&](const Dyadic& v, const Dyadic& lo) {
    // (v - lo) * n / W must be an integer.
    const Dyadic t = (v - lo) * Dyadic(n);
    const Dyadic w = root.width();
    for (int k = 0; k <= n; ++k)
      if (Dyadic(k) * w == t) return k;
    throw Error(ErrorKind::InvalidInput, "oracle", "exclusion box is not aligned with the oracle grid");
  };
  return {coord(e.x().lo(), root.x().lo()), coord(e.x().hi(), root.x().lo()), coord(e.y().lo(), root.y().lo()),
          coord(e.y().hi(), root.y().lo())};
}

}  // namespace

TopologySummary marching_reference(const Poly& f, const Box& b, int n, const std::vector<Box>& exclusions) {
  if (n < 2 || !power_of_two(n)) throw Error(ErrorKind::InvalidInput, "oracle", "grid size must be a power of two");
  const SignGrid g(f, b, n);
  std::vector<CellRange> ex;
  for (const Box& e : exclusions) ex.push_back(to_cells(b, n, e));

  UnionFind uf;
  std::vector<std::size_t> degree;
  std::map<std::pair<int, std::int64_t>, std::size_t> node;  // (orientation, edge index)
  auto crossing = [&](int orient, int i, int j) -> std::optional<std::size_t> {
    const int a = g.at(i, j);
    const int c = orient == 0 ? g.at(i + 1, j) : g.at(i, j + 1);
    if (a == c) return std::nullopt;
    auto [it, fresh] = node.try_emplace({orient, static_cast<std::int64_t>(j) * (n + 1) + i}, 0);
    if (fresh) {
      it->second = uf.add();
      degree.push_back(0);
    }
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edge_list;
  auto link = [&](std::size_t a, std::size_t c) {
    uf.unite(a, c);
    ++degree[a];
    ++degree[c];
    edge_list.emplace_back(a, c);
  };

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (std::any_of(ex.begin(), ex.end(), [&](const CellRange& r) { return r.contains_cell(i, j); })) continue;
      std::vector<std::size_t> hits;
      for (auto c : {crossing(0, i, j), crossing(1, i + 1, j), crossing(0, i, j + 1), crossing(1, i, j)})
        if (c) hits.push_back(*c);
      if (hits.size() == 4) throw Error(ErrorKind::AmbiguousCell, "oracle", "alternating sign pattern in a grid cell");
      if (hits.size() == 2) link(hits[0], hits[1]);
    }

  std::vector<std::size_t> centers;
  for (const CellRange& r : ex) {
    const std::size_t c = uf.add();
    degree.push_back(0);
    centers.push_back(c);
    for (int i = r.i0; i < r.i1; ++i) {
      if (auto v = crossing(0, i, r.j0)) link(*v, c);
      if (auto v = crossing(0, i, r.j1)) link(*v, c);
    }
    for (int j = r.j0; j < r.j1; ++j) {
      if (auto v = crossing(1, r.i0, j)) link(*v, c);
      if (auto v = crossing(1, r.i1, j)) link(*v, c);
    }
  }
  std::map<std::size_t, Component> comps;
  for (std::size_t v = 0; v < uf.size(); ++v) {
    auto& c = comps[uf.find(v)];
    ++c.vertices;
    if (degree[v] == 1) ++c.endpoints;
  }
  for (const auto& [a, c] : edge_list) ++comps[uf.find(a)].edges;
  TopologySummary t;
  t.resolution = n;
  for (auto& [root, c] : comps) {
    c.cyclomatic = static_cast<long>(c.edges) - static_cast<long>(c.vertices) + 1;
    t.components.push_back(c);
  }
  std::sort(t.components.begin(), t.components.end());
  for (std::size_t c : centers) t.singular_degrees.push_back(degree[c]);
  std::sort(t.singular_degrees.begin(), t.singular_degrees.end());
  return t;
}

TopologySummary marching_stable(const Poly& f, const Box& b, int n0, int n_max, const std::vector<Box>& exclusions) {
  std::optional<TopologySummary> prev;
  for (int n = n0; n <= n_max; n *= 2) {
    std::optional<TopologySummary> cur;
    try {
      cur = marching_reference(f, b, n, exclusions);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AmbiguousCell) throw;
    }
    if (cur && prev && cur->component_count() == prev->component_count() && cur->same_shape(*prev)) return *cur;
    prev = cur;
  }
  throw Error(ErrorKind::AmbiguousCell, "oracle", "marching reference did not stabilize");
}

namespace {

int alternations(const Poly& f, const Point& c, const Dyadic& r, int n) {
  const Dyadic step = (r + r) * Dyadic(mpz_class(1), -static_cast<std::int64_t>(std::countr_zero(unsigned(n))));
  std::vector<int> s;
  const Point corners[4] = {{c.x - r, c.y - r}, {c.x + r, c.y - r}, {c.x + r, c.y + r}, {c.x - r, c.y + r}};
  const Point dirs[4] = {{step, Dyadic()}, {Dyadic(), step}, {-step, Dyadic()}, {Dyadic(), -step}};
  for (int side = 0; side < 4; ++side)
    for (int k = 0; k < n; ++k) {
      const Point p{corners[side].x + Dyadic(k) * dirs[side].x, corners[side].y + Dyadic(k) * dirs[side].y};
      s.push_back(f.eval(p).sign() < 0 ? -1 : 1);
    }
  int count = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != s[(i + 1) % s.size()]) ++count;
  return count;
}

}  // namespace

int circle_branch_count(const Poly& f, const Point& center, const Dyadic& radius, int n) {
  if (!power_of_two(n)) throw Error(ErrorKind::InvalidInput, "oracle", "sample count must be a power of two");
  int prev = alternations(f, center, radius, n);
  for (int round = 0; round < 12; ++round) {
    n *= 2;
    const int cur = alternations(f, center, radius, n);
    if (cur == prev) return cur;
    prev = cur;
  }
  return prev;
}

Dyadic critical_value_estimate(const Poly& f, const Box& b, int n) {
  if (!power_of_two(n)) throw Error(ErrorKind::InvalidInput, "oracle", "grid size must be a power of two");
  const Poly F = aux_F(f);
  const Dyadic h = b.width() * Dyadic(mpz_class(1), -static_cast<std::int64_t>(std::countr_zero(unsigned(n))));
  std::vector<Dyadic> v((n + 1) * (n + 1));
  auto at = [&](int i, int j) -> Dyadic& { return v[static_cast<std::size_t>(j) * (n + 1) + i]; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) at(i, j) = F.eval(Point{b.x().lo() + Dyadic(i) * h, b.y().lo() + Dyadic(j) * h});

  std::optional<Dyadic> best;
  std::optional<Dyadic> positive_min;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const Dyadic& x = at(i, j);
      if (x.sign() > 0 && (!positive_min || x < *positive_min)) positive_min = x;
      bool local_min = true;
      Dyadic spread;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if ((di == 0 && dj == 0) || i + di < 0 || j + dj < 0 || i + di > n || j + dj > n) continue;
          const Dyadic& y = at(i + di, j + dj);
          if (y < x) local_min = false;
          spread = max(spread, (y - x).abs());
        }
      if (!local_min || x <= spread) continue;
      if (!best || x < *best) best = x;
    }
  Dyadic value = best ? *best : positive_min ? *positive_min : Dyadic(1);
  value = value.half();
  // Round down to a power of two.
  const auto bits = static_cast<std::int64_t>(mpz_sizeinbase(value.mantissa().get_mpz_t(), 2));
  return Dyadic::pow2(value.exponent() + bits - 1);
}

}  // namespace certmesh::oracle
