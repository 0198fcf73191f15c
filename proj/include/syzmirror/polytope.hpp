#pragma once

// Lattice polytopes in M_Q or N_Q, polar duality, reflexivity, lattice points.

#include <functional>

#include "syzmirror/hull.hpp"
#include "syzmirror/lattice.hpp"

namespace syz {

class Polytope {
 public:
  Polytope() = default;
  Polytope(Side side, ConvexPolytope hull) : side_(side), hull_(std::move(hull)) {}

  static Polytope from_vertices(Side side, const std::vector<LatticeVector>& pts) {
    std::vector<QVec> q;
    for (const auto& p : pts) {
      if (p.side != side) throw SideError("vertex on the wrong side");
      q.push_back(to_q(p.coords));
    }
    return {side, ConvexPolytope::from_points(std::move(q))};
  }

  static Polytope from_points(Side side, std::vector<QVec> pts) {
    return {side, ConvexPolytope::from_points(std::move(pts))};
  }

  Side side() const { return side_; }
  std::size_t rank() const { return hull_.ambient_dim(); }
  long dim() const { return hull_.dim(); }
  const ConvexPolytope& hull() const { return hull_; }
  const std::vector<QVec>& vertices() const { return hull_.vertices(); }
  const std::vector<PolytopeFace>& faces() const { return hull_.faces(); }

  bool is_lattice_polytope() const {
    for (const auto& v : vertices())
      if (!is_integral(v)) return false;
    return true;
  }

  bool contains(const LatticeVector& x) const {
    check(x);
    return hull_.contains(to_q(x.coords));
  }

  bool contains(const QVec& x) const { return hull_.contains(x); }

  // Dimension of the smallest face containing x.
  long carrier_dim(const QVec& x) const { return faces()[hull_.minimal_face(x)].dim; }

  void check(const LatticeVector& x) const {
    if (x.side != side_) throw SideError("vector on the wrong side for this polytope");
    if (x.rank() != rank()) throw DimensionError("vector rank does not match polytope rank");
  }

 private:
  Side side_ = Side::M;
  ConvexPolytope hull_;
};

// All lattice points, sorted lexicographically.
inline std::vector<LatticeVector> lattice_points(const Polytope& P) {
  std::size_t d = P.rank();
  ZVec lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    Rational mn = P.vertices()[0][i], mx = mn;
    for (const auto& v : P.vertices()) mn = std::min(mn, v[i]), mx = std::max(mx, v[i]);
    lo[i] = -floor_div(-mn.get_num(), mn.get_den());
    hi[i] = floor_div(mx.get_num(), mx.get_den());
  }
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < d; ++i)
    if (lo[i] > hi[i]) return out;
  ZVec cur = lo;
  QVec q(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) q[i] = cur[i];
    if (P.hull().contains(q)) out.push_back({P.side(), cur});
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (cur[i] < hi[i]) {
        ++cur[i];
        for (std::size_t j = i + 1; j < d; ++j) cur[j] = lo[j];
        break;
      }
      if (i == 0) return out;
    }
    if (d == 0) return out;
  }
}

inline std::vector<LatticeVector> interior_lattice_points(const Polytope& P) {
  std::vector<LatticeVector> out;
  for (auto& p : lattice_points(P))
    if (P.hull().relint_contains(to_q(p.coords))) out.push_back(p);
  return out;
}

inline std::vector<LatticeVector> boundary_lattice_points(const Polytope& P) {
  std::vector<LatticeVector> out;
  for (auto& p : lattice_points(P))
    if (!P.hull().relint_contains(to_q(p.coords))) out.push_back(p);
  return out;
}

inline void require_origin_interior(const Polytope& P) {
  if (!P.hull().full_dimensional()) throw PreconditionError("polytope is not full dimensional");
  if (!P.hull().relint_contains(QVec(P.rank(), Rational(0))))
    throw PreconditionError("origin is not in the interior of the polytope");
}

// Polar {n : <m, n> >= -1 for all m in P}. Vertices are facet normals scaled
// so the facet reads <m, n> = -1.
inline Polytope dual_polytope(const Polytope& P) {
  require_origin_interior(P);
  std::vector<QVec> verts;
  for (const auto& f : P.hull().facets()) verts.push_back(scale(to_q(f.normal), Rational(-1) / f.offset));
  return Polytope::from_points(opposite(P.side()), std::move(verts));
}

inline bool is_reflexive(const Polytope& P) {
  if (!P.is_lattice_polytope() || !P.hull().full_dimensional()) return false;
  if (!P.hull().relint_contains(QVec(P.rank(), Rational(0)))) return false;
  // Facet normals are primitive, so the polar is a lattice polytope iff every
  // facet sits at lattice distance one from the origin.
  for (const auto& f : P.hull().facets())
    if (f.offset != -1) return false;
  return true;
}

// Points lying on faces of dimension <= rank - codim.
inline std::vector<LatticeVector> skeleton_points(const Polytope& P, std::size_t codim) {
  if (codim < 1 || codim > P.rank()) throw InputError("codimension out of range");
  long top = static_cast<long>(P.rank()) - static_cast<long>(codim);
  std::vector<LatticeVector> out;
  for (auto& p : lattice_points(P))
    if (P.carrier_dim(to_q(p.coords)) <= top) out.push_back(p);
  return out;
}

// A reflexive polytope together with its polar and the face duality.
class ReflexivePolytope {
 public:
  explicit ReflexivePolytope(Polytope base) : base_(std::move(base)) {
    if (!is_reflexive(base_)) throw NotReflexiveError("polytope is not reflexive");
    dual_ = dual_polytope(base_);
    if (!is_reflexive(dual_)) throw InvariantError("polar of a reflexive polytope is not reflexive");
    // Facet k of base <-> vertex of the dual.
    for (const auto& f : base_.hull().facets()) {
      QVec n = to_q(f.normal);
      auto it = std::find(dual_.vertices().begin(), dual_.vertices().end(), n);
      ensure(it != dual_.vertices().end(), "facet normal missing among dual vertices");
      facet_to_dual_vertex_.push_back(static_cast<std::size_t>(it - dual_.vertices().begin()));
    }
    for (const auto& f : dual_.hull().facets()) {
      QVec m = to_q(f.normal);
      auto it = std::find(base_.vertices().begin(), base_.vertices().end(), m);
      ensure(it != base_.vertices().end(), "dual facet normal missing among vertices");
      dual_facet_to_vertex_.push_back(static_cast<std::size_t>(it - base_.vertices().begin()));
    }
  }

  const Polytope& base() const { return base_; }
  const Polytope& dual() const { return dual_; }
  std::size_t rank() const { return base_.rank(); }

  // Face of the dual polytope dual to face `f` of the base (proper faces only).
  std::size_t dual_face(std::size_t f) const { return dual_face_impl(base_, facet_to_dual_vertex_, dual_, f); }
  // Face of the base dual to face `f` of the dual polytope.
  std::size_t base_face(std::size_t f) const { return dual_face_impl(dual_, dual_facet_to_vertex_, base_, f); }

  // Vertex of the dual matching facet `k` of the base.
  std::size_t dual_vertex_of_facet(std::size_t k) const { return facet_to_dual_vertex_.at(k); }

 private:
  static std::size_t dual_face_impl(const Polytope& from, const std::vector<std::size_t>& facet_map,
                                    const Polytope& to, std::size_t f) {
    const auto& face = from.faces().at(f);
    if (face.dim == from.dim()) throw InputError("the whole polytope has no dual face");
    std::vector<std::size_t> vs;
    for (auto k : face.facets) vs.push_back(facet_map[k]);
    std::sort(vs.begin(), vs.end());
    return to.hull().face_index(vs);
  }

  Polytope base_, dual_;
  std::vector<std::size_t> facet_to_dual_vertex_, dual_facet_to_vertex_;
};

// m1, m2 lattice points of P; whether m1 + m2 lies in P.
inline bool sum_in_polytope_check(const Polytope& P, const LatticeVector& m1, const LatticeVector& m2) {
  P.check(m1);
  P.check(m2);
  if (!P.contains(m1) || !P.contains(m2)) throw PreconditionError("summands must lie in the polytope");
  return P.contains(m1 + m2);
}

// True when no proper face contains both points.
inline bool share_no_face(const Polytope& P, const LatticeVector& m1, const LatticeVector& m2) {
  auto a = P.hull().tight_facets(to_q(m1.coords));
  auto b = P.hull().tight_facets(to_q(m2.coords));
  std::vector<std::size_t> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return both.empty();
}

inline std::vector<LatticeVector> to_lattice_vectors(Side side, const std::vector<QVec>& pts) {
  std::vector<LatticeVector> out;
  for (const auto& p : pts) out.push_back({side, to_z(p)});
  return out;
}

}  // namespace syz
