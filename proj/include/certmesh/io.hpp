#pragma once

// JSON and SVG output, plus parsing of the box syntax "[a,b]x[c,d]".

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "certmesh/error.hpp"
#include "certmesh/mesher.hpp"
#include "certmesh/oracle.hpp"

namespace certmesh::io {

using nlohmann::ordered_json;

Rect parse_rect(std::string_view text);

// Square root box for a rectangle: same lower-left corner, side equal to the
// longer edge. The rectangle itself goes into the region when not square.
Box root_for(const Rect& r);

ordered_json to_json(const Dyadic& d);
ordered_json to_json(const Point& p);
ordered_json to_json(const Rect& r);
ordered_json to_json(const Box& b);
ordered_json to_json(const BoundReport& b);
ordered_json to_json(const PLGraph& g);  // {"vertices": [...], "edges": [...]}
ordered_json to_json(const PvStats& s);
ordered_json to_json(const SingularityInfo& s);
ordered_json to_json(const IsolationResult& r, const Box& b0);
ordered_json to_json(const DegreeReport& r);
ordered_json to_json(const oracle::TopologySummary& t);
ordered_json to_json(const Error& e);

Dyadic dyadic_from_json(const ordered_json& j);

// The document written by the mesh mode. config is echoed verbatim.
ordered_json mesh_document(const MeshResult& r, ordered_json config, std::optional<double> runtime_ms);

// The document written by the pv mode.
ordered_json pv_document(const Poly& f, const ExtendedResult& r, ordered_json config);

struct SvgLayer {
  const PLGraph* graph = nullptr;
  const Subdivision* tree = nullptr;
  std::vector<Rect> highlights;  // singular neighborhoods and the like
};

std::string svg(const Box& view, const SvgLayer& layer);

}  // namespace certmesh::io
