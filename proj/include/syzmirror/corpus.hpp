#pragma once

// Small fixed corpus of polytopes used by tests, the CLI and the data files.

#include "syzmirror/weights.hpp"

namespace syz::corpus {

inline LatticeVector v(Side s, std::initializer_list<long> c) {
  ZVec z;
  for (long x : c) z.push_back(Integer(x));
  return {s, z};
}

// Degree d simplex centered at the origin: conv{d e_i - (1,..,1), -(1,..,1)} in rank r.
inline Polytope centered_simplex(std::size_t r, long d) {
  std::vector<LatticeVector> vs;
  ZVec base(r, Integer(-1));
  vs.push_back({Side::M, base});
  for (std::size_t i = 0; i < r; ++i) {
    ZVec x = base;
    x[i] += d;
    vs.push_back({Side::M, x});
  }
  return Polytope::from_vertices(Side::M, vs);
}

inline Polytope quintic() { return centered_simplex(4, 5); }
inline Polytope quartic() { return centered_simplex(3, 4); }
inline Polytope plane_cubic() { return centered_simplex(2, 3); }

// conv{(1,0),(0,1),(-1,-1)}, polar to plane_cubic().
inline Polytope small_triangle() {
  return Polytope::from_vertices(Side::M, {v(Side::M, {1, 0}), v(Side::M, {0, 1}), v(Side::M, {-1, -1})});
}

inline Polytope square() {
  return Polytope::from_vertices(
      Side::M, {v(Side::M, {1, 1}), v(Side::M, {1, -1}), v(Side::M, {-1, 1}), v(Side::M, {-1, -1})});
}

// conv{(0,0),(d,0),(0,d)}.
inline Polytope corner_triangle(long d) {
  return Polytope::from_vertices(Side::M, {v(Side::M, {0, 0}), v(Side::M, {d, 0}), v(Side::M, {0, d})});
}

// Sum over facets of the squared lattice distance from m to the facet.
inline Rational facet_slack_quadratic(const Polytope& P, const ZVec& m) {
  Rational s = 0;
  for (const auto& f : P.hull().facets()) {
    Rational d = dot(m, to_q(f.normal)) - f.offset;
    s += d * d;
  }
  return s;
}

// w(m) = shift + scale * facet_slack_quadratic(m) on the given points.
inline WeightFunction slack_weights(const Polytope& P, std::vector<LatticeVector> pts, const Rational& scale,
                                    const Rational& shift) {
  std::vector<Rational> w;
  for (const auto& m : pts) w.push_back(shift + scale * facet_slack_quadratic(P, m.coords));
  return WeightFunction::from_w(P.side(), std::move(pts), w);
}

// p = -1 on every boundary lattice point.
inline WeightFunction anticanonical(const Polytope& P) {
  auto pts = boundary_lattice_points(P);
  return WeightFunction(P.side(), pts, std::vector<Rational>(pts.size(), Rational(-1)));
}

// Facet-slack quadratic on the lattice points of the (rank-2)-skeleton.
inline WeightFunction skeleton_quadratic(const Polytope& P, const Rational& scale = 1) {
  return slack_weights(P, skeleton_points(P, 2), scale, 0);
}

// Weights on the 21 lattice points of corner_triangle(5).
//  Standard: 25 unit triangles of the three-direction tiling.
//  SingleFlip: the edge (1,2)-(2,2) replaced by (2,1)-(1,3).
//  DoubleFlip: additionally (1,3)-(1,4) replaced by (0,4)-(2,3).
//  Parallelogram: the first flip exactly on its wall, leaving one square cell.
enum class TriangleVariant { Standard, SingleFlip, DoubleFlip, Parallelogram };

inline WeightFunction triangle_weights(TriangleVariant variant) {
  auto P = corner_triangle(5);
  auto pts = lattice_points(P);
  std::vector<Rational> w;
  for (const auto& m : pts) {
    Rational x = 8 * facet_slack_quadratic(P, m.coords);
    long i = m.coords[0].get_si(), j = m.coords[1].get_si();
    bool first = (i == 2 && j == 1) || (i == 1 && j == 3);
    bool second = (i == 0 && j == 4) || (i == 2 && j == 3);
    if (variant == TriangleVariant::SingleFlip || variant == TriangleVariant::DoubleFlip)
      if (first) x -= 12;
    if (variant == TriangleVariant::DoubleFlip && second) x -= 15;
    if (variant == TriangleVariant::Parallelogram && first) x -= 8;
    w.push_back(x);
  }
  return WeightFunction::from_w(Side::M, pts, w);
}

}  // namespace syz::corpus
