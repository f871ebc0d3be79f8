#pragma once

#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "coxeter/boundary.hpp"

namespace coxeter::io {

/// Extra point set drawn as dots on the circle (e.g. an orbit).
struct Overlay {
  std::string label;
  std::string color;
  std::vector<boundary::BoundaryPoint> points;
};

namespace detail {

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

}  // namespace detail

/// SVG of the unit circle with a radial tick per limit point and a dot per
/// overlay point. Output depends only on the inputs.
inline std::string render_limit_set(std::span<const boundary::BoundaryPoint> points,
                                    std::span<const Overlay> overlays = {}) {
  constexpr double size = 400.0, c = 200.0, radius = 180.0, tick_in = 170.0, tick_out = 190.0;
  using detail::fmt3;
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt3(size) + "\" height=\"" +
         fmt3(size) + "\" viewBox=\"0 0 400 400\">\n";
  svg += "  <rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
  svg += "  <circle cx=\"" + fmt3(c) + "\" cy=\"" + fmt3(c) + "\" r=\"" + fmt3(radius) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "  <g id=\"limit-points\" stroke=\"#1f4e9c\" stroke-width=\"0.6\">\n";
  for (const auto& p : points) {
    const double x = std::cos(p.theta), y = std::sin(p.theta);
    svg += "    <line x1=\"" + fmt3(c + tick_in * x) + "\" y1=\"" + fmt3(c - tick_in * y) +
           "\" x2=\"" + fmt3(c + tick_out * x) + "\" y2=\"" + fmt3(c - tick_out * y) + "\"/>\n";
  }
  svg += "  </g>\n";
  for (const auto& o : overlays) {
    svg += "  <g id=\"" + o.label + "\" fill=\"" + o.color + "\">\n";
    for (const auto& p : o.points)
      svg += "    <circle cx=\"" + fmt3(c + radius * std::cos(p.theta)) + "\" cy=\"" +
             fmt3(c - radius * std::sin(p.theta)) + "\" r=\"2\"/>\n";
    svg += "  </g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace coxeter::io
