#pragma once

// SVG drawings of planar subdivisions and their graphs. Lattice point (x, y)
// goes to (36 x + 18 y, 30 y) before the y flip, the skewed layout of the
// degree-5 triangle figures.

#include <cstdio>
#include <sstream>

#include "syzmirror/gamma.hpp"

namespace syz {

struct SvgStyle {
  double margin = 18;
  double dot_radius = 3;
  double thin = 1;
  double thick = 3.5;
  bool show_points = true;
};

namespace detail {
inline std::string fmt3(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  return s == "-0.000" ? "0.000" : s;
}
}  // namespace detail

inline std::string render_svg(const RegularSubdivision& S, const GammaGraph* g = nullptr, const SvgStyle& style = {}) {
  if (S.points().empty() || S.points()[0].size() != 2) throw DimensionError("SVG rendering needs rank-2 points");
  if (S.dim() != 2) throw DimensionError("SVG rendering needs a 2-dimensional configuration");
  auto raw = [](const QVec& p) {
    double x = p[0].get_d(), y = p[1].get_d();
    return std::array<double, 2>{36 * x + 18 * y, 30 * y};
  };
  double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
  for (const auto& p : S.points()) {
    auto r = raw(p);
    lo_x = std::min(lo_x, r[0]), hi_x = std::max(hi_x, r[0]);
    lo_y = std::min(lo_y, r[1]), hi_y = std::max(hi_y, r[1]);
  }
  double W = hi_x - lo_x + 2 * style.margin, H = hi_y - lo_y + 2 * style.margin;
  auto at = [&](const QVec& p) {
    auto r = raw(p);
    return std::array<double, 2>{r[0] - lo_x + style.margin, hi_y - r[1] + style.margin};
  };
  using detail::fmt3;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt3(W) << "\" height=\"" << fmt3(H)
     << "\" viewBox=\"0 0 " << fmt3(W) << ' ' << fmt3(H) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<g id=\"subdivision\" stroke=\"black\" stroke-width=\"" << fmt3(style.thin) << "\" fill=\"none\">\n";
  for (auto c : S.cells_of_dim(1)) {
    const auto& v = S.cells()[c].vertices;
    auto a = at(S.points()[v[0]]), b = at(S.points()[v[1]]);
    os << "<line x1=\"" << fmt3(a[0]) << "\" y1=\"" << fmt3(a[1]) << "\" x2=\"" << fmt3(b[0]) << "\" y2=\""
       << fmt3(b[1]) << "\"/>\n";
  }
  os << "</g>\n";
  if (g) {
    os << "<g id=\"gamma\" stroke=\"black\" stroke-width=\"" << fmt3(style.thick)
       << "\" stroke-linecap=\"round\" fill=\"none\">\n";
    for (const auto& e : g->edges) {
      auto a = at(g->vertices.at(e[0]).coords), b = at(g->vertices.at(e[1]).coords);
      os << "<polyline points=\"" << fmt3(a[0]) << ',' << fmt3(a[1]) << ' ' << fmt3(b[0]) << ',' << fmt3(b[1])
         << "\"/>\n";
    }
    os << "</g>\n";
  }
  if (style.show_points) {
    os << "<g id=\"points\" fill=\"black\">\n";
    for (const auto& p : S.points()) {
      auto a = at(p);
      os << "<circle cx=\"" << fmt3(a[0]) << "\" cy=\"" << fmt3(a[1]) << "\" r=\"" << fmt3(style.dot_radius)
         << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace syz
