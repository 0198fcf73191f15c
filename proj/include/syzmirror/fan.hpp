#pragma once

// Simplicial and polytopal fans in N_R: the normal fan of a reflexive
// polytope and its refinement using every boundary lattice point as a ray.

#include "syzmirror/polytope.hpp"
#include "syzmirror/subdivision.hpp"

namespace syz {

struct Fan {
  Side side = Side::N;
  std::vector<LatticeVector> rays;               // primitive, sorted
  std::vector<std::vector<std::size_t>> cones;   // maximal cones, sorted ray index lists
  std::vector<std::vector<std::size_t>> all_cones;  // every nonzero cone, sorted by (size, rays)

  std::size_t rank() const { return rays.at(0).rank(); }

  std::vector<LatticeVector> generators(const std::vector<std::size_t>& cone) const {
    std::vector<LatticeVector> g;
    for (auto i : cone) g.push_back(rays.at(i));
    return g;
  }
};

// Index of the lattice generated by independent vectors inside its saturation.
inline Integer cone_volume(const std::vector<LatticeVector>& gens) {
  if (gens.empty()) return 1;
  ZMat a;
  for (const auto& g : gens) {
    if (g.side != gens[0].side) throw SideError("cone generators on different sides");
    a.push_back(g.coords);
  }
  if (rank(a) != a.size()) throw DegenerateError("cone generators are linearly dependent");
  Integer v = 1;
  for (const auto& x : smith_normal_form(a).invariants) v *= x;
  return v;
}

// Maximal cones indexed by the vertices of the base, spanned by the dual vertices
// of the facets through that vertex.
inline Fan normal_fan(const ReflexivePolytope& R) {
  Fan F;
  F.side = R.dual().side();
  F.rays = to_lattice_vectors(F.side, R.dual().vertices());
  std::set<std::vector<std::size_t>> all;
  for (const auto& m : R.base().vertices()) {
    std::vector<std::size_t> cone;
    for (std::size_t i = 0; i < F.rays.size(); ++i)
      if (dot(m, F.rays[i].coords) == -1) cone.push_back(i);
    F.cones.push_back(cone);
  }
  // Cones over proper faces of the dual polytope.
  for (const auto& f : R.dual().faces())
    if (f.dim < R.dual().dim()) all.insert(f.vertices);
  F.all_cones.assign(all.begin(), all.end());
  std::sort(F.all_cones.begin(), F.all_cones.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return F;
}

namespace detail {

// Placing triangulation of points in convex position (chart coordinates),
// in the given order. Returns simplices as index lists into pts.
inline std::vector<std::vector<std::size_t>> placing_triangulation(const std::vector<QVec>& pts,
                                                                   const std::vector<std::size_t>& order) {
  std::size_t k = pts.at(0).size();
  auto orient = [&](const std::vector<std::size_t>& face, const QVec& p) {
    // Sign of det[face_i - p] for a (k)-element face in k dimensions.
    QMat m;
    for (auto i : face) m.push_back(sub(pts[i], p));
    ZMat z;
    Integer l = 1;
    for (auto& row : m)
      for (auto& x : row) l = lcm(l, x.get_den());
    for (auto& row : m) {
      ZVec zr;
      for (auto& x : row) zr.push_back(x.get_num() * (l / x.get_den()));
      z.push_back(zr);
    }
    return sgn(determinant(z));
  };
  std::vector<std::size_t> placed, rest;
  std::vector<std::vector<std::size_t>> simplices;
  // Initial simplex: first k+1 affinely independent points in order; the
  // points skipped on the way are placed right after it.
  for (auto idx : order) {
    if (placed.size() == k + 1) {
      rest.push_back(idx);
      continue;
    }
    std::vector<QVec> trial;
    for (auto i : placed) trial.push_back(pts[i]);
    trial.push_back(pts[idx]);
    if (affine_dimension(trial) == static_cast<long>(trial.size()) - 1)
      placed.push_back(idx);
    else
      rest.push_back(idx);
  }
  if (placed.size() != k + 1) throw InvariantError("placing triangulation: points are not full dimensional");
  auto simplex = placed;
  std::sort(simplex.begin(), simplex.end());
  simplices.push_back(simplex);
  for (auto p : rest) {
    // Boundary facets of the current triangulation with their opposite vertex.
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> owners;
    for (std::size_t s = 0; s < simplices.size(); ++s)
      for (std::size_t drop = 0; drop < simplices[s].size(); ++drop) {
        auto f = simplices[s];
        f.erase(f.begin() + static_cast<long>(drop));
        owners[f].push_back(s);
      }
    std::vector<std::vector<std::size_t>> added;
    for (const auto& [f, own] : owners) {
      if (own.size() != 1) continue;
      std::size_t opp = 0;
      for (auto v : simplices[own[0]])
        if (!std::binary_search(f.begin(), f.end(), v)) opp = v;
      int a = orient(f, pts[opp]), b = orient(f, pts[p]);
      if (a == 0) throw InvariantError("placing triangulation: flat simplex");
      if (b != 0 && a != b) {
        auto s = f;
        s.push_back(p);
        std::sort(s.begin(), s.end());
        added.push_back(s);
      }
    }
    if (added.empty()) throw InvariantError("placing triangulation: point inside current hull");
    simplices.insert(simplices.end(), added.begin(), added.end());
  }
  std::sort(simplices.begin(), simplices.end());
  return simplices;
}

}  // namespace detail

// Refinement of the normal fan whose rays are all boundary lattice points of
// the dual polytope. Each dual facet is subdivided by the squared-norm lift
// (consistent across shared faces); cells that are not simplices are placed
// in seed_order (ranks of the boundary points, default lexicographic).
inline Fan max_crepant_subdivision(const Fan& F, const ReflexivePolytope& R,
                                   std::vector<LatticeVector> seed_order = {}) {
  const Polytope& D = R.dual();
  if (F.side != D.side()) throw SideError("fan and dual polytope on different sides");
  auto pts = boundary_lattice_points(D);
  Fan out;
  out.side = D.side();
  out.rays = pts;
  std::vector<std::size_t> rank_of(pts.size());
  if (seed_order.empty()) seed_order = pts;
  {
    std::map<ZVec, std::size_t> pos;
    for (std::size_t i = 0; i < seed_order.size(); ++i) pos.emplace(seed_order[i].coords, i);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto it = pos.find(pts[i].coords);
      if (it == pos.end()) throw InputError("seed order misses a boundary lattice point");
      rank_of[i] = it->second;
    }
  }
  std::set<std::vector<std::size_t>> maximal;
  for (const auto& fv : D.hull().facet_vertices()) {
    std::vector<QVec> vs;
    for (auto v : fv) vs.push_back(D.vertices()[v]);
    auto facet = ConvexPolytope::from_points(vs);
    std::vector<std::size_t> local;
    std::vector<QVec> lp;
    std::vector<Rational> hs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      QVec q = to_q(pts[i].coords);
      if (!facet.contains(q)) continue;
      local.push_back(i);
      lp.push_back(q);
      hs.push_back(dot(q, q));
    }
    auto S = RegularSubdivision::compute(lp, hs);
    for (auto t : S.top_cells()) {
      const auto& cell = S.cells()[t];
      if (cell.vertices.size() == static_cast<std::size_t>(cell.dim) + 1) {
        std::vector<std::size_t> s;
        for (auto i : cell.vertices) s.push_back(local[i]);
        std::sort(s.begin(), s.end());
        maximal.insert(s);
        continue;
      }
      std::vector<QVec> cp;
      for (auto i : cell.vertices) cp.push_back(S.chart_coords()[i]);
      std::vector<std::size_t> order(cell.vertices.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rank_of[local[cell.vertices[a]]] < rank_of[local[cell.vertices[b]]];
      });
      for (auto& s : detail::placing_triangulation(cp, order)) {
        std::vector<std::size_t> g;
        for (auto i : s) g.push_back(local[cell.vertices[i]]);
        std::sort(g.begin(), g.end());
        maximal.insert(g);
      }
    }
  }
  out.cones.assign(maximal.begin(), maximal.end());
  std::set<std::vector<std::size_t>> all;
  for (const auto& c : out.cones) {
    std::size_t n = c.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> f;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) f.push_back(c[i]);
      all.insert(f);
    }
  }
  out.all_cones.assign(all.begin(), all.end());
  std::sort(out.all_cones.begin(), out.all_cones.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

struct ConeVolume {
  std::vector<std::size_t> cone;
  std::size_t dim = 0;
  std::optional<Integer> volume;  // empty for non-simplicial cones
};

inline std::vector<ConeVolume> primitivity_report(const Fan& F) {
  std::vector<ConeVolume> out;
  for (const auto& c : F.all_cones) {
    ConeVolume cv;
    cv.cone = c;
    auto g = F.generators(c);
    ZMat a;
    for (const auto& x : g) a.push_back(x.coords);
    cv.dim = rank(a);
    if (cv.dim == c.size()) cv.volume = cone_volume(g);
    out.push_back(cv);
  }
  return out;
}

// Maximal cone containing x, with nonnegative coordinates in its generators
// (simplicial fans only).
inline std::optional<std::size_t> cone_containing(const Fan& F, const QVec& x) {
  for (std::size_t c = 0; c < F.cones.size(); ++c) {
    QMat g;
    for (auto i : F.cones[c]) g.push_back(to_q(F.rays[i].coords));
    if (g.size() != x.size()) throw DegenerateError("cone is not simplicial and full dimensional");
    auto coef = solve_row_combination(g, x);
    if (!coef) continue;
    bool ok = true;
    for (const auto& t : *coef) ok = ok && t >= 0;
    if (ok) return c;
  }
  return std::nullopt;
}

}  // namespace syz
