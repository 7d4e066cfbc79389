#include "certmesh/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace certmesh {

const char* to_string(VertexTag t) {
  switch (t) {
    case VertexTag::SegmentMidpoint: return "segment-midpoint";
    case VertexTag::AugmentedCollar: return "augmented-collar";
    case VertexTag::SingularCenter: return "singular-center";
  }
  return "?";
}

std::size_t PLGraph::add_vertex(const Point& p, VertexTag tag) {
  auto [it, fresh] = index_.try_emplace(p, vertices_.size());
  if (fresh) vertices_.push_back({p, tag});
  return it->second;
}

std::optional<std::size_t> PLGraph::find(const Point& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool PLGraph::add_edge(std::size_t a, std::size_t b, std::optional<CellKey> owner) {
  if (a == b) throw std::logic_error("self-loop in straight-line graph");
  if (a >= vertices_.size() || b >= vertices_.size()) throw std::logic_error("edge to unknown vertex");
  if (!edge_set_.insert(std::minmax(a, b)).second) return false;
  edges_.push_back({a, b, owner});
  return true;
}

std::vector<std::size_t> PLGraph::degrees() const {
  std::vector<std::size_t> deg(vertices_.size(), 0);
  for (const Edge& e : edges_) {
    ++deg[e.a];
    ++deg[e.b];
  }
  return deg;
}

void PLGraph::remove_edges(const std::set<std::size_t>& edge_ids) {
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (!edge_ids.contains(i)) kept.push_back(edges_[i]);
  std::vector<bool> used(vertices_.size(), false);
  for (const Edge& e : kept) used[e.a] = used[e.b] = true;
  std::vector<std::size_t> remap(vertices_.size(), SIZE_MAX);
  PLGraph out;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (used[v] || vertices_[v].tag == VertexTag::SingularCenter)
      remap[v] = out.add_vertex(vertices_[v].pt, vertices_[v].tag);
  for (const Edge& e : kept) out.add_edge(remap[e.a], remap[e.b], e.owner);
  *this = std::move(out);
}

long GraphTopology::total_cyclomatic() const {
  long s = 0;
  for (const auto& c : components) s += c.cyclomatic;
  return s;
}

namespace {

struct Dsu {
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t v) {
    while (p[v] != v) v = p[v] = p[p[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
  std::vector<std::size_t> p;
};

}  // namespace

GraphTopology topology(const PLGraph& g) {
  const std::size_t n = g.vertices().size();
  Dsu dsu(n);
  for (const Edge& e : g.edges()) dsu.unite(e.a, e.b);
  const auto deg = g.degrees();
  std::map<std::size_t, ComponentSummary> comps;
  for (std::size_t v = 0; v < n; ++v) {
    auto& c = comps[dsu.find(v)];
    ++c.vertices;
    if (deg[v] == 1) ++c.endpoints;
  }
  for (const Edge& e : g.edges()) ++comps[dsu.find(e.a)].edges;
  GraphTopology t;
  for (auto& [root, c] : comps) {
    c.cyclomatic = static_cast<long>(c.edges) - static_cast<long>(c.vertices) + 1;
    t.components.push_back(c);
  }
  std::sort(t.components.begin(), t.components.end());
  for (std::size_t v = 0; v < n; ++v)
    if (g.vertices()[v].tag == VertexTag::SingularCenter) t.singular_degrees.push_back(deg[v]);
  std::sort(t.singular_degrees.begin(), t.singular_degrees.end());
  return t;
}

std::vector<std::vector<std::size_t>> edge_components(const PLGraph& g) {
  Dsu dsu(g.vertices().size());
  for (const Edge& e : g.edges()) dsu.unite(e.a, e.b);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < g.edges().size(); ++i) groups[dsu.find(g.edges()[i].a)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [r, ids] : groups) out.push_back(std::move(ids));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace certmesh
