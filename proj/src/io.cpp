#include "certmesh/io.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace certmesh::io {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Interval parse_interval(std::string_view s) {
  const std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw Error(ErrorKind::ParseError, "input", "expected [lo,hi] but got '" + t + "'");
  const std::string body = t.substr(1, t.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos)
    throw Error(ErrorKind::ParseError, "input", "expected [lo,hi] but got '" + t + "'");
  const Dyadic lo = Dyadic::parse(trim(body.substr(0, comma)));
  const Dyadic hi = Dyadic::parse(trim(body.substr(comma + 1)));
  if (!(lo < hi)) throw Error(ErrorKind::InvalidRegion, "input", "empty interval '" + t + "'");
  return Interval(lo, hi);
}

}  // namespace

Rect parse_rect(std::string_view text) {
  // The separator is the 'x' between "]" and "[".
  const std::string t = trim(text);
  const auto close = t.find(']');
  if (close == std::string::npos) throw Error(ErrorKind::ParseError, "input", "bad box '" + t + "'");
  std::size_t i = close + 1;
  while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  if (i >= t.size() || (t[i] != 'x' && t[i] != 'X'))
    throw Error(ErrorKind::ParseError, "input", "bad box '" + t + "', expected [a,b]x[c,d]");
  return Rect{parse_interval(std::string_view(t).substr(0, close + 1)), parse_interval(std::string_view(t).substr(i + 1))};
}

Box root_for(const Rect& r) {
  const Dyadic side = max(r.x.width(), r.y.width());
  return Box::square(r.x.lo(), r.y.lo(), side);
}

ordered_json to_json(const Dyadic& d) {
  return {{"m", d.mantissa().get_str()}, {"e", d.exponent()}};
}

Dyadic dyadic_from_json(const ordered_json& j) {
  return Dyadic(mpz_class(j.at("m").get<std::string>()), j.at("e").get<std::int64_t>());
}

ordered_json to_json(const Point& p) { return {{"x", to_json(p.x)}, {"y", to_json(p.y)}}; }

ordered_json to_json(const Rect& r) {
  return {{"x", {to_json(r.x.lo()), to_json(r.x.hi())}}, {"y", {to_json(r.y.lo()), to_json(r.y.hi())}}};
}

ordered_json to_json(const Box& b) { return to_json(b.rect()); }

ordered_json to_json(const BoundReport& b) {
  auto value = [](const BoundValue& v) {
    return ordered_json{{"value", to_json(v.value)}, {"source", to_string(v.source)}};
  };
  return {{"d", b.d}, {"L", b.L}, {"ev", value(b.ev)}, {"delta3", value(b.delta3)}, {"delta4", value(b.delta4)}};
}

ordered_json to_json(const PLGraph& g) {
  ordered_json vs = ordered_json::array();
  for (const Vertex& v : g.vertices()) vs.push_back({{"pt", to_json(v.pt)}, {"tag", to_string(v.tag)}});
  ordered_json es = ordered_json::array();
  for (const Edge& e : g.edges()) es.push_back({e.a, e.b});
  return {{"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

ordered_json to_json(const PvStats& s) {
  return {{"boxes", s.leaves},
          {"kept", s.kept},
          {"discarded", s.discarded},
          {"depth", s.depth},
          {"collar_boxes", s.collar_boxes},
          {"gadgets", s.gadgets},
          {"interference_splits", s.interference_splits}};
}

ordered_json to_json(const SingularityInfo& s) {
  return {{"center", to_json(s.center)},
          {"degree", s.degree},
          {"rect", to_json(s.rect)},
          {"inner", to_json(s.inner)},
          {"outer", to_json(s.outer)},
          {"types", {s.types[0], s.types[1], s.types[2]}}};
}

ordered_json to_json(const IsolationResult& r, const Box& b0) {
  ordered_json rects = ordered_json::array();
  for (const IsolatedRect& ir : r.rects) {
    ordered_json fp = ordered_json::array();
    for (const CellKey& k : ir.footprint) fp.push_back(to_json(cell_box(b0, k)));
    rects.push_back({{"rect", to_json(ir.rect)}, {"center", to_json(ir.rect.center())}, {"footprint", std::move(fp)}});
  }
  return {{"eps_barrier", to_json(r.eps)}, {"clusters", r.clusters}, {"spurious", r.spurious}, {"rectangles", rects}};
}

ordered_json to_json(const DegreeReport& r) {
  return {{"inner", to_json(r.b2)},
          {"outer", to_json(r.b1)},
          {"types", {r.types[0], r.types[1], r.types[2]}},
          {"degree", r.degree}};
}

ordered_json to_json(const oracle::TopologySummary& t) {
  ordered_json comps = ordered_json::array();
  for (const auto& c : t.components)
    comps.push_back(
        {{"vertices", c.vertices}, {"edges", c.edges}, {"endpoints", c.endpoints}, {"cyclomatic", c.cyclomatic}});
  return {{"resolution", t.resolution},
          {"component_count", t.component_count()},
          {"components", std::move(comps)},
          {"singular_degrees", t.singular_degrees}};
}

ordered_json to_json(const Error& e) {
  return {{"error", {{"kind", to_string(e.kind())}, {"stage", e.stage()}, {"message", e.what()}}}};
}

ordered_json mesh_document(const MeshResult& r, ordered_json config, std::optional<double> runtime_ms) {
  ordered_json doc;
  doc["config"] = std::move(config);
  doc["poly"] = r.f.to_string();
  doc["bounds"] = to_json(r.bounds);
  doc["isolation_eps"] = to_json(r.isolation_eps);
  const ordered_json g = to_json(r.graph);
  doc["vertices"] = g["vertices"];
  doc["edges"] = g["edges"];
  ordered_json sings = ordered_json::array();
  for (const auto& s : r.singularities) sings.push_back(to_json(s));
  doc["singularities"] = std::move(sings);
  const GraphTopology top = topology(r.graph);
  doc["topology"] = {{"components", top.component_count()},
                     {"cyclomatic", top.total_cyclomatic()},
                     {"singular_degrees", top.singular_degrees}};
  doc["stats"] = to_json(r.stats);
  if (runtime_ms) doc["stats"]["runtime_ms"] = *runtime_ms;
  return doc;
}

ordered_json pv_document(const Poly& f, const ExtendedResult& r, ordered_json config) {
  ordered_json doc;
  doc["config"] = std::move(config);
  doc["poly"] = f.to_string();
  const ordered_json g = to_json(r.graph);
  doc["vertices"] = g["vertices"];
  doc["edges"] = g["edges"];
  const GraphTopology top = topology(r.graph);
  doc["topology"] = {{"components", top.component_count()}, {"cyclomatic", top.total_cyclomatic()}};
  doc["stats"] = to_json(r.stats);
  return doc;
}

std::string svg(const Box& view, const SvgLayer& layer) {
  constexpr double size = 800.0;
  const double x0 = view.x().lo().to_double();
  const double y1 = view.y().hi().to_double();
  const double scale = size / view.width().to_double();
  auto px = [&](const Dyadic& x) { return (x.to_double() - x0) * scale; };
  auto py = [&](const Dyadic& y) { return (y1 - y.to_double()) * scale; };
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
      << size << ' ' << size << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto rect = [&](const Rect& r, const char* style) {
    out << "<rect x=\"" << px(r.x.lo()) << "\" y=\"" << py(r.y.hi()) << "\" width=\"" << r.x.width().to_double() * scale
        << "\" height=\"" << r.y.width().to_double() * scale << "\" " << style << "/>\n";
  };
  if (layer.tree) {
    for (const CellKey& k : layer.tree->leaves()) {
      const Cell& c = layer.tree->cell(k);
      const Rect r = layer.tree->box(k).rect();
      if (c.membership == Membership::Outside)
        rect(r, "fill=\"#dddddd\" stroke=\"#bbbbbb\" stroke-width=\"0.3\"");
      else if (c.status == Status::Kept)
        rect(r, "fill=\"#e8f0ff\" stroke=\"#8899bb\" stroke-width=\"0.3\"");
      else
        rect(r, "fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.3\"");
    }
  }
  for (const Rect& r : layer.highlights) rect(r, "fill=\"none\" stroke=\"#cc3333\" stroke-width=\"0.8\"");
  if (layer.graph) {
    const auto& vs = layer.graph->vertices();
    for (const Edge& e : layer.graph->edges())
      out << "<line x1=\"" << px(vs[e.a].pt.x) << "\" y1=\"" << py(vs[e.a].pt.y) << "\" x2=\"" << px(vs[e.b].pt.x)
          << "\" y2=\"" << py(vs[e.b].pt.y) << "\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
    for (const Vertex& v : vs) {
      const char* color = v.tag == VertexTag::SingularCenter   ? "#cc0000"
                          : v.tag == VertexTag::AugmentedCollar ? "#ee8800"
                                                                : "#0044aa";
      const double radius = v.tag == VertexTag::SingularCenter ? 4.0 : 1.8;
      out << "<circle cx=\"" << px(v.pt.x) << "\" cy=\"" << py(v.pt.y) << "\" r=\"" << radius << "\" fill=\"" << color
          << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace certmesh::io
