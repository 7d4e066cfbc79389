#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "certmesh/io.hpp"
#include "certmesh/mesher.hpp"
#include "certmesh/oracle.hpp"
#include "certmesh/pv_extended.hpp"
#include "certmesh/singular.hpp"

using namespace certmesh;
using io::ordered_json;

namespace {

struct Options {
  std::string mode = "mesh";
  std::string poly;
  std::string box;
  std::vector<std::string> exclude;
  std::string eps = "inf";
  int max_depth = 40;
  std::string ev_bound;
  std::string delta;
  std::string collar_eps;
  bool no_collar = false;
  std::string out;
  std::string svg;
  int threads = 1;
  bool timing = false;
  int grid = 64;
  int grid_max = 4096;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ZeroPolynomial:
    case ErrorKind::ParseError:
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidRegion:
    case ErrorKind::DegreeTooSmall:
      return 2;
    case ErrorKind::MaxDepthExceeded:
    case ErrorKind::SingularOnBoundary:
      return 3;
    default:
      return 4;
  }
}

void emit(const ordered_json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "output", "cannot write " + path);
  f << text;
}

void write_svg(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "output", "cannot write " + path);
  f << text;
}

std::optional<Dyadic> optional_dyadic(const std::string& s) {
  if (s.empty() || s == "inf" || s == "infinity") return std::nullopt;
  const Dyadic d = Dyadic::parse(s);
  if (d.sign() <= 0) throw Error(ErrorKind::InvalidInput, "input", "expected a positive value, got '" + s + "'");
  return d;
}

ordered_json config_echo(const Options& o) {
  return {{"mode", o.mode},           {"poly", o.poly},
          {"box", o.box},             {"exclude", o.exclude},
          {"eps", o.eps},             {"max_depth", o.max_depth},
          {"ev_bound", o.ev_bound},   {"delta", o.delta},
          {"collar", !o.no_collar},   {"collar_eps", o.collar_eps},
          {"threads", o.threads}};
}

int run(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&]() -> std::optional<double> {
    if (!o.timing) return std::nullopt;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  if (o.threads < 1) throw Error(ErrorKind::InvalidInput, "input", "--threads must be at least 1");

  const Poly f_raw = Poly::parse(o.poly);
  if (f_raw.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "input", "polynomial is zero");
  const Rect box = io::parse_rect(o.box);
  const Box root = io::root_for(box);
  RegionSpec region;
  if (!(root.rect() == box)) region.include = box;
  for (const auto& e : o.exclude) region.exclude.push_back(io::parse_rect(e));

  const Poly f = sqfree(f_raw);
  BoundOverrides overrides;
  if (o.ev_bound == "oracle")
    overrides.ev = BoundValue{oracle::critical_value_estimate(f, root, 256), BoundSource::OracleDerived};
  else if (auto v = optional_dyadic(o.ev_bound))
    overrides.ev = BoundValue{*v, BoundSource::UserOverride};
  if (auto v = optional_dyadic(o.delta)) overrides.delta = BoundValue{*v, BoundSource::UserOverride};

  ExtendedOptions pv_opts;
  pv_opts.collar = !o.no_collar;
  pv_opts.collar_eps = optional_dyadic(o.collar_eps);
  const std::optional<Dyadic> eps = optional_dyadic(o.eps);
  if (eps) pv_opts.max_width = eps->scaled(-2);

  ordered_json doc;
  if (o.mode == "mesh") {
    MeshConfig cfg;
    cfg.max_depth = o.max_depth;
    cfg.eps = eps;
    cfg.overrides = overrides;
    cfg.collar = pv_opts.collar;
    cfg.collar_eps = pv_opts.collar_eps;
    cfg.threads = o.threads;
    const MeshResult r = mesh(f_raw, root, region, cfg);
    doc = io::mesh_document(r, config_echo(o), elapsed());
    io::SvgLayer layer{&r.graph, &r.tree, {}};
    for (const auto& s : r.singularities) {
      layer.highlights.push_back(s.inner.rect());
      layer.highlights.push_back(s.outer.rect());
    }
    if (!o.svg.empty()) write_svg(o.svg, io::svg(root, layer));
  } else if (o.mode == "singularities") {
    const BoundReport bounds = bound_report(f, overrides);
    const IsolationResult r =
        isolate_singularities(f, root, bounds.ev.value, bounds.delta().scaled(-3), o.max_depth, o.threads);
    doc["config"] = config_echo(o);
    doc["poly"] = f.to_string();
    doc["bounds"] = io::to_json(bounds);
    doc["isolation"] = io::to_json(r, root);
    if (!o.svg.empty()) {
      io::SvgLayer layer;
      for (const auto& ir : r.rects) layer.highlights.push_back(ir.rect);
      write_svg(o.svg, io::svg(root, layer));
    }
  } else if (o.mode == "degree") {
    if (!(root.rect() == box)) throw Error(ErrorKind::InvalidInput, "input", "degree mode needs a square --box");
    const DegreeReport r = annulus_degree(f, root, o.max_depth, pv_opts);
    doc["config"] = config_echo(o);
    doc["poly"] = f.to_string();
    doc["degree"] = io::to_json(r);
  } else if (o.mode == "pv") {
    const ExtendedResult r = run_extended_pv(f, Subdivision::build(root, region, o.max_depth), pv_opts);
    doc = io::pv_document(f, r, config_echo(o));
    if (!o.svg.empty()) write_svg(o.svg, io::svg(root, io::SvgLayer{&r.graph, &r.tree, {}}));
  } else if (o.mode == "oracle") {
    std::vector<Box> ex;
    for (const Rect& e : region.exclude) ex.push_back(Box(e.x, e.y));
    if (region.include) throw Error(ErrorKind::InvalidInput, "input", "oracle mode needs a square --box");
    const oracle::TopologySummary t = oracle::marching_stable(f, root, o.grid, o.grid_max, ex);
    doc["config"] = config_echo(o);
    doc["poly"] = f.to_string();
    doc["topology"] = io::to_json(t);
    doc["ev_estimate"] = {{"value", io::to_json(oracle::critical_value_estimate(f, root, 256))},
                          {"source", to_string(BoundSource::OracleDerived)}};
  } else {
    throw Error(ErrorKind::InvalidInput, "input", "unknown mode '" + o.mode + "'");
  }
  if (o.timing && o.mode != "mesh") doc["runtime_ms"] = *elapsed();
  emit(doc, o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified meshing of implicit algebraic curves"};
  Options o;
  app.add_option("mode,--mode", o.mode, "mesh | singularities | degree | pv | oracle")
      ->check(CLI::IsMember({"mesh", "singularities", "degree", "pv", "oracle"}));
  app.add_option("--poly", o.poly, "polynomial in x and y, e.g. \"y^2 - x^3 - x^2\"")->required();
  app.add_option("--box", o.box, "region \"[a,b]x[c,d]\" with dyadic endpoints")->required();
  app.add_option("--exclude", o.exclude, "box removed from the region (repeatable)");
  app.add_option("--eps", o.eps, "approximation bound; inf for topology only")->capture_default_str();
  app.add_option("--max-depth", o.max_depth, "subdivision depth cap")->capture_default_str();
  app.add_option("--ev-bound", o.ev_bound, "evaluation bound override, a dyadic value or 'oracle'");
  app.add_option("--delta", o.delta, "separation bound override");
  app.add_option("--collar-eps", o.collar_eps, "width cap for collar boxes is a quarter of this");
  app.add_flag("--no-collar", o.no_collar, "plain PV, no collar checks");
  app.add_option("--out", o.out, "JSON output path (default stdout)");
  app.add_option("--svg", o.svg, "SVG output path");
  app.add_option("--threads", o.threads, "worker threads for per-singularity stages")->capture_default_str();
  app.add_flag("--timing", o.timing, "include runtime_ms in the output");
  app.add_option("--grid", o.grid, "oracle starting grid size")->capture_default_str();
  app.add_option("--grid-max", o.grid_max, "oracle largest grid size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << io::to_json(Error(ErrorKind::InvalidInput, "cli", e.what())).dump(2) << "\n";
    return 2;
  }
  try {
    return run(o);
  } catch (const Error& e) {
    std::cout << io::to_json(e).dump(2) << "\n";
    return exit_code(e.kind());
  }
}
