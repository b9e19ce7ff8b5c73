#include "invset/plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace invset {

Projection projection_from_string(std::string_view s) {
  if (s == "xy") return Projection::XY;
  if (s == "xz") return Projection::XZ;
  if (s == "yz") return Projection::YZ;
  throw std::invalid_argument("unknown projection '" + std::string(s) + "' (expected xy, xz or yz)");
}

namespace {

constexpr std::array<const char*, 6> kPalette{"#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#000000"};

struct Planar {
  double u;
  double v;
};

struct Bounds {
  double umin = std::numeric_limits<double>::infinity();
  double umax = -std::numeric_limits<double>::infinity();
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -std::numeric_limits<double>::infinity();

  void add(Planar p, double pad = 0.0) {
    umin = std::min(umin, p.u - pad);
    umax = std::max(umax, p.u + pad);
    vmin = std::min(vmin, p.v - pad);
    vmax = std::max(vmax, p.v + pad);
  }
};

std::pair<std::size_t, std::size_t> axes(std::size_t dim, Projection proj) {
  if (dim == 2) return {0, 1};
  switch (proj) {
    case Projection::XY: return {0, 1};
    case Projection::XZ: return {0, 2};
    case Projection::YZ: return {1, 2};
  }
  return {0, 1};
}

std::vector<Planar> project(const PointCloud& c, Projection proj, double row) {
  std::vector<Planar> out(c.size());
  if (c.dim() == 1) {
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = {c[i][0], row};
    return out;
  }
  const auto [a, b] = axes(c.dim(), proj);
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = {c[i][a], c[i][b]};
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<PointCloud>& clouds, const PlotOptions& opts) {
  if (clouds.empty()) throw std::invalid_argument("plot: no clouds given");
  const std::size_t dim = clouds.front().dim();
  if (dim < 1 || dim > 3) throw std::invalid_argument("plot: unsupported dimension " + std::to_string(dim));
  for (const auto& c : clouds)
    if (c.dim() != dim) throw std::invalid_argument("plot: clouds of mixed dimension");
  if (opts.reference && opts.reference->dim() != dim)
    throw std::invalid_argument("plot: reference dimension does not match the clouds");

  const bool one_d = dim == 1;
  const double ball = opts.delta.value_or(0.0);
  std::vector<std::vector<Planar>> pts;
  Bounds bounds;
  for (std::size_t k = 0; k < clouds.size(); ++k) {
    pts.push_back(project(clouds[k], opts.projection, static_cast<double>(k)));
    for (const auto& p : pts.back()) bounds.add(p, one_d ? 0.0 : ball);
  }
  std::vector<Planar> ref;
  if (opts.reference) {
    ref = project(*opts.reference, opts.projection, 0.0);
    if (one_d) {
      // Repeat the reference on every row.
      const auto base = ref;
      for (std::size_t k = 1; k < clouds.size(); ++k)
        for (const auto& p : base) ref.push_back({p.u, static_cast<double>(k)});
    }
    for (const auto& p : ref) bounds.add(p);
  }

  auto widen = [](double& lo, double& hi) {
    const double span = hi - lo;
    const double pad = span > 0.0 ? 0.05 * span : 0.5;
    lo -= pad;
    hi += pad;
  };
  widen(bounds.umin, bounds.umax);
  widen(bounds.vmin, bounds.vmax);

  const double margin = 20.0;
  const double w = opts.width - 2 * margin;
  const double h = opts.height - 2 * margin;
  double su = w / (bounds.umax - bounds.umin);
  double sv = h / (bounds.vmax - bounds.vmin);
  if (!one_d) su = sv = std::min(su, sv);
  const double ou = margin + 0.5 * (w - su * (bounds.umax - bounds.umin));
  const double ov = margin + 0.5 * (h - sv * (bounds.vmax - bounds.vmin));
  auto px = [&](Planar p) { return ou + su * (p.u - bounds.umin); };
  // SVG y grows downward.
  auto py = [&](Planar p) { return opts.height - (ov + sv * (p.v - bounds.vmin)); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(opts.width) +
         "\" height=\"" + std::to_string(opts.height) + "\" viewBox=\"0 0 " + std::to_string(opts.width) + " " +
         std::to_string(opts.height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(opts.width) + "\" height=\"" +
         std::to_string(opts.height) + "\" fill=\"#ffffff\"/>\n";
  for (const auto& p : ref)
    svg += "<circle class=\"ref\" cx=\"" + fmt(px(p)) + "\" cy=\"" + fmt(py(p)) + "\" r=\"1\" fill=\"#f2b8b8\"/>\n";
  if (opts.delta) {
    for (std::size_t k = 0; k < pts.size(); ++k)
      for (const auto& p : pts[k])
        svg += "<circle class=\"ball\" cx=\"" + fmt(px(p)) + "\" cy=\"" + fmt(py(p)) + "\" r=\"" + fmt(su * ball) +
               "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.5\"/>\n";
  }
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const char* color = kPalette[k % kPalette.size()];
    for (const auto& p : pts[k])
      svg += "<circle class=\"marker\" cx=\"" + fmt(px(p)) + "\" cy=\"" + fmt(py(p)) + "\" r=\"2\" fill=\"" + color +
             "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg(const std::filesystem::path& path, const std::vector<PointCloud>& clouds, const PlotOptions& opts) {
  const std::string svg = render_svg(clouds, opts);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << svg;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace invset
