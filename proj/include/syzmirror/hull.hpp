#pragma once

// Double description on exact integer cones, and convex polytopes built on it
// (vertex and halfspace descriptions, face lattice, point location helpers).

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <set>

#include "syzmirror/linalg.hpp"

namespace syz {

// Extreme rays (primitive) of the pointed cone {x in Q^d : a . x >= 0 for every row a}.
inline std::vector<ZVec> cone_extreme_rays(const ZMat& rows, std::size_t d) {
  using Bits = boost::dynamic_bitset<>;
  std::size_t m = rows.size();
  std::vector<std::size_t> basis_rows;
  QMat acc;
  for (std::size_t i = 0; i < m && basis_rows.size() < d; ++i) {
    acc.push_back(to_q(rows[i]));
    if (rank(acc) == acc.size())
      basis_rows.push_back(i);
    else
      acc.pop_back();
  }
  if (basis_rows.size() < d) throw InvariantError("double description: cone is not pointed");
  auto inv = inverse(acc);
  ensure(inv.has_value(), "double description: singular start");

  struct Ray {
    ZVec v;
    Bits tight;
  };
  std::vector<Ray> rays;
  for (std::size_t j = 0; j < d; ++j) {
    QVec col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = (*inv)[i][j];
    Ray r{clear_denominators(col), Bits(m)};
    for (std::size_t i = 0; i < d; ++i)
      if (i != j) r.tight.set(basis_rows[i]);
    rays.push_back(std::move(r));
  }
  std::vector<bool> used(m, false);
  for (auto i : basis_rows) used[i] = true;
  long need = static_cast<long>(d) - 2;

  for (std::size_t k = 0; k < m; ++k) {
    if (used[k]) continue;
    const ZVec& a = rows[k];
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0) pos.push_back(i);
      if (val[i] < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (val[i] == 0) rays[i].tight.set(k);
      continue;
    }
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] < 0) continue;
      Ray r = rays[i];
      if (val[i] == 0) r.tight.set(k);
      next.push_back(std::move(r));
    }
    for (auto p : pos)
      for (auto q : neg) {
        Bits common = rays[p].tight & rays[q].tight;
        if (static_cast<long>(common.count()) < need) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t)
          if (t != p && t != q && common.is_subset_of(rays[t].tight)) adjacent = false;
        if (!adjacent) continue;
        ZVec v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = val[p] * rays[q].v[i] - val[q] * rays[p].v[i];
        Ray r{primitive(std::move(v)), common};
        r.tight.set(k);
        next.push_back(std::move(r));
      }
    rays = std::move(next);
  }
  std::vector<ZVec> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// normal . x >= offset
struct Halfspace {
  ZVec normal;
  Rational offset;
  bool operator<(const Halfspace& o) const {
    return normal != o.normal ? normal < o.normal : offset < o.offset;
  }
  bool operator==(const Halfspace& o) const { return normal == o.normal && offset == o.offset; }
};

// Affine coordinates on the affine hull of a point set. The basis is in
// echelon form so coordinates come from forward substitution.
struct AffineChart {
  QVec origin;
  ZMat basis;
  std::vector<std::size_t> pivots;
  ZMat equations;  // rows e with e . x = e . origin on the hull

  std::size_t dim() const { return basis.size(); }

  static AffineChart of(const std::vector<QVec>& pts) {
    AffineChart c;
    std::size_t d = pts.at(0).size();
    c.origin = pts[0];
    QMat diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
    if (!diffs.empty()) {
      rref_in_place(diffs);
      for (auto& row : diffs) c.basis.push_back(clear_denominators(row));
    }
    if (c.basis.size() == d) {
      // Full dimensional: plain coordinates.
      c.origin.assign(d, Rational(0));
      c.basis = identity_z(d);
    }
    c.pivots = c.basis.empty() ? std::vector<std::size_t>{} : echelon_pivots(c.basis);
    c.equations = c.basis.empty() ? identity_z(d) : integer_kernel(c.basis, d);
    return c;
  }

  bool on_hull(const QVec& x) const {
    for (const auto& e : equations)
      if (dot(e, x) != dot(e, origin)) return false;
    return true;
  }

  QVec coordinates(const QVec& x) const {
    auto c = echelon_coordinates(basis, pivots, sub(x, origin));
    if (!c) throw InvariantError("point is off the affine hull");
    return *c;
  }

  // Linear part of coordinates() as a k x d matrix (valid on the hull).
  QMat coordinate_matrix() const {
    std::size_t d = origin.size();
    QMat L(dim(), QVec(d, Rational(0)));
    for (std::size_t j = 0; j < d; ++j) {
      QVec rest(d, Rational(0));
      rest[j] = 1;
      for (std::size_t i = 0; i < dim(); ++i) {
        Rational ci = rest[pivots[i]] / Rational(basis[i][pivots[i]]);
        L[i][j] = ci;
        for (std::size_t t = 0; t < d; ++t) rest[t] -= ci * basis[i][t];
      }
    }
    return L;
  }

  QVec point(const QVec& y) const {
    QVec x = origin;
    for (std::size_t i = 0; i < y.size(); ++i)
      for (std::size_t t = 0; t < x.size(); ++t) x[t] += y[i] * basis[i][t];
    return x;
  }
};

struct PolytopeFace {
  std::vector<std::size_t> vertices;  // indices into ConvexPolytope::vertices()
  std::vector<std::size_t> facets;    // facets containing the face
  long dim = -1;
};

class ConvexPolytope {
 public:
  ConvexPolytope() = default;

  static ConvexPolytope from_points(std::vector<QVec> pts) {
    if (pts.empty()) throw InputError("polytope needs at least one point");
    std::size_t d = pts[0].size();
    for (const auto& p : pts)
      if (p.size() != d) throw DimensionError("points of different lengths");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    ConvexPolytope P;
    P.ambient_ = d;
    P.chart_ = AffineChart::of(pts);
    std::size_t k = P.chart_.dim();
    P.dim_ = static_cast<long>(k);
    if (k == 0) {
      P.vertices_ = {pts[0]};
      return P;
    }
    std::vector<QVec> ys;
    ZMat gens;
    for (const auto& p : pts) {
      ys.push_back(P.chart_.coordinates(p));
      QVec g{Rational(1)};
      g.insert(g.end(), ys.back().begin(), ys.back().end());
      gens.push_back(clear_denominators(g));
    }
    auto rays = cone_extreme_rays(gens, k + 1);
    QMat L = P.chart_.coordinate_matrix();
    std::vector<std::vector<std::size_t>> tight_pts;
    for (const auto& r : rays) {
      // r0 + a . y >= 0 in chart coordinates.
      QVec a(r.begin() + 1, r.end());
      QVec normal(d, Rational(0));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < d; ++j) normal[j] += a[i] * L[i][j];
      Rational offset = -Rational(r[0]) + dot(normal, P.chart_.origin);
      ZVec zn = clear_denominators(normal);
      Rational s = 0;
      for (std::size_t j = 0; j < d && s == 0; ++j)
        if (normal[j] != 0) s = Rational(zn[j]) / normal[j];
      P.facets_.push_back({zn, offset * s});
    }
    std::sort(P.facets_.begin(), P.facets_.end());
    // Vertices: points whose tight facet normals span the chart directions.
    for (const auto& p : pts) {
      QMat normals;
      for (const auto& f : P.facets_)
        if (dot(f.normal, p) == f.offset) normals.push_back(to_q(f.normal));
      if (rank(normals) == k) P.vertices_.push_back(p);
    }
    P.facet_vertices_.resize(P.facets_.size());
    for (std::size_t f = 0; f < P.facets_.size(); ++f)
      for (std::size_t v = 0; v < P.vertices_.size(); ++v)
        if (dot(P.facets_[f].normal, P.vertices_[v]) == P.facets_[f].offset) P.facet_vertices_[f].push_back(v);
    return P;
  }

  // Bounded intersection of halfspaces in Q^d.
  static ConvexPolytope from_halfspaces(const std::vector<Halfspace>& hs, std::size_t d) {
    ZMat rows;
    for (const auto& h : hs) {
      if (h.normal.size() != d) throw DimensionError("halfspace of wrong length");
      QVec row{-h.offset};
      for (const auto& a : h.normal) row.push_back(Rational(a));
      rows.push_back(clear_denominators(row));
    }
    ZVec t(d + 1, Integer(0));
    t[0] = 1;
    rows.push_back(t);
    if (rank(rows) < d + 1) throw UnboundedError("halfspaces do not cut out a bounded polytope");
    auto rays = cone_extreme_rays(rows, d + 1);
    std::vector<QVec> verts;
    for (const auto& r : rays) {
      if (r[0] == 0) throw UnboundedError("halfspace intersection is unbounded");
      QVec v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = Rational(r[i + 1]) / Rational(r[0]);
      verts.push_back(v);
    }
    if (verts.empty()) throw PreconditionError("halfspace intersection is empty");
    return from_points(verts);
  }

  std::size_t ambient_dim() const { return ambient_; }
  long dim() const { return dim_; }
  const std::vector<QVec>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<std::vector<std::size_t>>& facet_vertices() const { return facet_vertices_; }
  const AffineChart& chart() const { return chart_; }
  bool full_dimensional() const { return dim_ == static_cast<long>(ambient_); }

  bool contains(const QVec& x) const {
    if (!chart_.on_hull(x)) return false;
    for (const auto& f : facets_)
      if (dot(f.normal, x) < f.offset) return false;
    return true;
  }

  bool relint_contains(const QVec& x) const {
    if (!chart_.on_hull(x)) return false;
    for (const auto& f : facets_)
      if (dot(f.normal, x) <= f.offset) return false;
    return true;
  }

  std::vector<std::size_t> tight_facets(const QVec& x) const {
    std::vector<std::size_t> t;
    for (std::size_t f = 0; f < facets_.size(); ++f)
      if (dot(facets_[f].normal, x) == facets_[f].offset) t.push_back(f);
    return t;
  }

  QVec barycenter() const { return syz::barycenter(vertices_); }

  QVec barycenter_of(const std::vector<std::size_t>& vertex_set) const {
    std::vector<QVec> pts;
    for (auto v : vertex_set) pts.push_back(vertices_.at(v));
    return syz::barycenter(pts);
  }

  // All nonempty faces including the polytope itself, sorted by (dim, vertices).
  const std::vector<PolytopeFace>& faces() const {
    if (!faces_.empty()) return faces_;
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> work;
    std::vector<std::size_t> all(vertices_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    seen.insert(all);
    for (const auto& fv : facet_vertices_)
      if (seen.insert(fv).second) work.push_back(fv);
    while (!work.empty()) {
      auto cur = std::move(work.back());
      work.pop_back();
      for (const auto& fv : facet_vertices_) {
        std::vector<std::size_t> meet;
        std::set_intersection(cur.begin(), cur.end(), fv.begin(), fv.end(), std::back_inserter(meet));
        if (meet.empty() || meet.size() == cur.size()) continue;
        if (seen.insert(meet).second) work.push_back(meet);
      }
    }
    for (const auto& vs : seen) {
      PolytopeFace f;
      f.vertices = vs;
      std::vector<QVec> pts;
      for (auto v : vs) pts.push_back(vertices_[v]);
      f.dim = affine_dimension(pts);
      for (std::size_t k = 0; k < facet_vertices_.size(); ++k)
        if (std::includes(facet_vertices_[k].begin(), facet_vertices_[k].end(), vs.begin(), vs.end()))
          f.facets.push_back(k);
      faces_.push_back(std::move(f));
    }
    std::sort(faces_.begin(), faces_.end(), [](const PolytopeFace& a, const PolytopeFace& b) {
      return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
    });
    for (std::size_t i = 0; i < faces_.size(); ++i) face_index_[faces_[i].vertices] = i;
    return faces_;
  }

  std::size_t face_index(const std::vector<std::size_t>& vertex_set) const {
    faces();
    auto it = face_index_.find(vertex_set);
    if (it == face_index_.end()) throw InvariantError("vertex set is not a face");
    return it->second;
  }

  // Index of the smallest face containing x (x must lie in the polytope).
  std::size_t minimal_face(const QVec& x) const {
    if (!contains(x)) throw PreconditionError("point is outside the polytope");
    std::vector<std::size_t> vs(vertices_.size());
    for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = i;
    for (auto f : tight_facets(x)) {
      std::vector<std::size_t> meet;
      std::set_intersection(vs.begin(), vs.end(), facet_vertices_[f].begin(), facet_vertices_[f].end(),
                            std::back_inserter(meet));
      vs = std::move(meet);
    }
    return face_index(vs);
  }

  std::vector<QVec> face_points(std::size_t face) const {
    std::vector<QVec> pts;
    for (auto v : faces().at(face).vertices) pts.push_back(vertices_[v]);
    return pts;
  }

 private:
  std::size_t ambient_ = 0;
  long dim_ = -1;
  AffineChart chart_;
  std::vector<QVec> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<std::vector<std::size_t>> facet_vertices_;
  mutable std::vector<PolytopeFace> faces_;
  mutable std::map<std::vector<std::size_t>, std::size_t> face_index_;
};

}  // namespace syz
