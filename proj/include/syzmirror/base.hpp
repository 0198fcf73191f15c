#pragma once

// The common base of the mirror pair of fibrations. Cells of the boundary of
// the weight polytope are pairs (alpha, beta): alpha a cell of the weight
// subdivision of the boundary of the polytope, beta a cell of the subdivision
// of the boundary of its polar, lying in dual faces. Points are carried in
// product coordinates (M part, N part) on the barycentric subdivision; the
// base identification swaps the two factors.

#include <random>

#include "syzmirror/polytope.hpp"
#include "syzmirror/subdivision.hpp"
#include "syzmirror/weights.hpp"

namespace syz {

struct BoundaryCell {
  std::vector<std::size_t> points;    // indices into BoundarySubdivision::points()
  std::vector<std::size_t> vertices;  // subset of points
  long dim = -1;
  std::size_t face = 0;  // face of the polytope holding the cell's relative interior
  QVec barycenter;
};

// A point of a barycentric subdivision: chain of cells (bottom to top) and
// positive weights on their barycenters.
struct ChainPoint {
  std::vector<std::size_t> chain;
  std::vector<Rational> weights;
};

class BoundarySubdivision {
 public:
  BoundarySubdivision() = default;

  // Regular subdivision of each facet by the weights of the domain points it
  // contains; cells shared between facets are merged.
  static BoundarySubdivision compute(const Polytope& P, const WeightFunction& w) {
    if (w.side() != P.side()) throw SideError("weights and polytope on different sides");
    if (w.rank() != P.rank()) throw DimensionError("weights and polytope of different ranks");
    BoundarySubdivision B;
    B.polytope_ = P;
    B.side_ = P.side();
    for (std::size_t i = 0; i < w.size(); ++i) {
      QVec q = to_q(w.points()[i].coords);
      if (!P.contains(q)) throw PreconditionError("weight point outside the polytope");
      if (P.carrier_dim(q) == P.dim()) continue;
      B.index_.emplace(w.points()[i].coords, B.points_.size());
      B.points_.push_back(w.points()[i]);
      B.heights_.push_back(w.w(i));
    }
    for (const auto& v : P.vertices())
      if (!B.index_.count(to_z(v))) throw PreconditionError("weights are missing at a vertex of the polytope");
    std::map<std::vector<std::size_t>, SubdivisionCell> merged;
    for (const auto& fv : P.hull().facet_vertices()) {
      std::vector<QVec> vs;
      for (auto v : fv) vs.push_back(P.vertices()[v]);
      auto facet = ConvexPolytope::from_points(vs);
      std::vector<std::size_t> local;
      std::vector<QVec> pts;
      std::vector<Rational> hs;
      for (std::size_t i = 0; i < B.points_.size(); ++i) {
        QVec q = to_q(B.points_[i].coords);
        if (!facet.contains(q)) continue;
        local.push_back(i);
        pts.push_back(q);
        hs.push_back(B.heights_[i]);
      }
      auto S = RegularSubdivision::compute(pts, hs);
      for (const auto& c : S.cells()) {
        SubdivisionCell g;
        for (auto i : c.points) g.points.push_back(local[i]);
        for (auto i : c.vertices) g.vertices.push_back(local[i]);
        g.dim = c.dim;
        std::sort(g.points.begin(), g.points.end());
        std::sort(g.vertices.begin(), g.vertices.end());
        auto [it, fresh] = merged.emplace(g.points, g);
        if (!fresh && it->second.vertices != g.vertices)
          throw InvariantError("facet subdivisions disagree on a shared face");
      }
    }
    for (auto& [pts, c] : merged) {
      BoundaryCell b;
      b.points = c.points;
      b.vertices = c.vertices;
      b.dim = c.dim;
      std::vector<QVec> vs;
      for (auto v : c.vertices) vs.push_back(to_q(B.points_[v].coords));
      b.barycenter = barycenter(vs);
      b.face = P.hull().minimal_face(b.barycenter);
      B.cells_.push_back(std::move(b));
    }
    std::sort(B.cells_.begin(), B.cells_.end(), [](const BoundaryCell& a, const BoundaryCell& b) {
      return a.dim != b.dim ? a.dim < b.dim : a.points < b.points;
    });
    B.cells_in_face_.resize(P.faces().size());
    for (std::size_t c = 0; c < B.cells_.size(); ++c) {
      B.cell_index_[B.cells_[c].points] = c;
      B.cells_in_face_[B.cells_[c].face].push_back(c);
    }
    return B;
  }

  Side side() const { return side_; }
  std::size_t rank() const { return polytope_.rank(); }
  const Polytope& polytope() const { return polytope_; }
  const std::vector<LatticeVector>& points() const { return points_; }
  const std::vector<Rational>& heights() const { return heights_; }
  const std::vector<BoundaryCell>& cells() const { return cells_; }
  const std::vector<std::size_t>& cells_in_face(std::size_t f) const { return cells_in_face_.at(f); }
  long face_dim(std::size_t c) const { return polytope_.faces()[cells_.at(c).face].dim; }

  std::optional<std::size_t> point_index(const ZVec& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> cell_with_points(const std::vector<std::size_t>& pts) const {
    auto it = cell_index_.find(pts);
    if (it == cell_index_.end()) return std::nullopt;
    return it->second;
  }

  // Cell made of the single point x, if x is a vertex of the subdivision.
  std::optional<std::size_t> vertex_cell(const ZVec& x) const {
    auto i = point_index(x);
    if (!i) return std::nullopt;
    auto c = cell_with_points({*i});
    if (c && cells_[*c].dim == 0) return c;
    return std::nullopt;
  }

  bool is_face(std::size_t small, std::size_t big) const {
    const auto& a = cells_[small].points;
    const auto& b = cells_[big].points;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  // Every domain point on a face of dimension <= max_face_dim is a vertex.
  std::optional<std::size_t> first_non_vertex(long max_face_dim) const {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (polytope_.carrier_dim(to_q(points_[i].coords)) > max_face_dim) continue;
      auto c = cell_with_points({i});
      if (!c || cells_[*c].dim != 0) return i;
    }
    return std::nullopt;
  }

  bool trivial() const {
    for (const auto& c : cells_)
      if (c.vertices != face_vertex_points(c.face)) return false;
    return true;
  }

  const ConvexPolytope& cell_polytope(std::size_t c) const {
    auto it = hulls_.find(c);
    if (it != hulls_.end()) return it->second;
    std::vector<QVec> vs;
    for (auto v : cells_[c].vertices) vs.push_back(to_q(points_[v].coords));
    return hulls_.emplace(c, ConvexPolytope::from_points(vs)).first->second;
  }

  // Smallest cell holding x in its relative interior.
  std::size_t minimal_cell(const QVec& x) const {
    if (x.size() != rank()) throw DimensionError("point of the wrong length");
    if (!polytope_.contains(x)) throw PreconditionError("point is outside the polytope");
    std::size_t f = polytope_.hull().minimal_face(x);
    if (polytope_.faces()[f].dim == polytope_.dim()) throw PreconditionError("point is not on the boundary");
    for (auto c : cells_in_face_[f])
      if (cell_polytope(c).relint_contains(x)) return c;
    throw InvariantError("boundary point lies in no cell");
  }

  // Position of x in the barycentric subdivision: walk from the minimal cell
  // down along rays from barycenters.
  ChainPoint locate(const QVec& x) const {
    ChainPoint out;
    Rational remaining = 1;
    QVec cur = x;
    std::size_t cell = minimal_cell(x);
    while (true) {
      const QVec& b = cells_[cell].barycenter;
      if (cur == b) {
        out.chain.push_back(cell);
        out.weights.push_back(remaining);
        break;
      }
      QVec d = sub(cur, b);
      std::optional<Rational> t;
      for (const auto& h : cell_polytope(cell).facets()) {
        Rational nd = dot(h.normal, d);
        if (nd >= 0) continue;
        Rational tf = (h.offset - dot(h.normal, b)) / nd;
        if (!t || tf < *t) t = tf;
      }
      ensure(t.has_value() && *t >= 1, "ray from a cell barycenter does not leave the cell");
      QVec exit = add(b, scale(d, *t));
      out.chain.push_back(cell);
      out.weights.push_back(remaining * (1 - 1 / *t));
      remaining /= *t;
      cur = exit;
      std::size_t next = minimal_cell(cur);
      ensure(is_face(next, cell) && next != cell, "exit point left the cell");
      cell = next;
    }
    std::reverse(out.chain.begin(), out.chain.end());
    std::reverse(out.weights.begin(), out.weights.end());
    return out;
  }

 private:
  std::vector<std::size_t> face_vertex_points(std::size_t f) const {
    std::vector<std::size_t> out;
    for (auto v : polytope_.faces()[f].vertices) out.push_back(*point_index(to_z(polytope_.vertices()[v])));
    std::sort(out.begin(), out.end());
    return out;
  }

  Side side_ = Side::M;
  Polytope polytope_;
  std::vector<LatticeVector> points_;
  std::vector<Rational> heights_;
  std::map<ZVec, std::size_t> index_;
  std::vector<BoundaryCell> cells_;
  std::vector<std::vector<std::size_t>> cells_in_face_;
  std::map<std::vector<std::size_t>, std::size_t> cell_index_;
  mutable std::map<std::size_t, ConvexPolytope> hulls_;
};

// Faces f of P and g of Q are dual: complementary dimensions and every vertex
// pair pairs to -1.
inline bool dual_faces(const Polytope& P, std::size_t f, const Polytope& Q, std::size_t g) {
  const auto& a = P.faces()[f];
  const auto& b = Q.faces()[g];
  if (a.dim + b.dim != static_cast<long>(P.rank()) - 1) return false;
  for (auto i : a.vertices)
    for (auto j : b.vertices)
      if (dot(P.vertices()[i], Q.vertices()[j]) != -1) return false;
  return true;
}

struct BaseCell {
  std::size_t alpha = 0;  // cell of the primary subdivision
  std::size_t beta = 0;   // cell of the fibre subdivision
  long dim = 0;           // dimension as a cell of this side's base
  long mirror_dim = 0;    // dimension of the partner cell on the mirror side
};

class BaseComplex {
 public:
  BaseComplex() = default;

  // Base for (Delta, w, v): primary = w on the boundary of Delta,
  // fibre = v on the boundary of the polar.
  BaseComplex(const ReflexivePolytope& R, const WeightFunction& w, const WeightFunction& v)
      : BaseComplex(BoundarySubdivision::compute(R.base(), w), BoundarySubdivision::compute(R.dual(), v), w, v) {}

  BaseComplex(BoundarySubdivision primary, BoundarySubdivision fibre, WeightFunction w, WeightFunction v)
      : primary_(std::move(primary)), fibre_(std::move(fibre)), w_(std::move(w)), v_(std::move(v)) {
    if (primary_.side() == fibre_.side()) throw SideError("primary and fibre subdivisions on the same side");
    if (primary_.rank() != fibre_.rank()) throw DimensionError("primary and fibre of different ranks");
    const Polytope& P = primary_.polytope();
    const Polytope& Q = fibre_.polytope();
    std::map<std::size_t, std::size_t> dual_of;
    for (std::size_t f = 0; f < P.faces().size(); ++f) {
      if (P.faces()[f].dim == P.dim()) continue;
      for (std::size_t g = 0; g < Q.faces().size(); ++g)
        if (dual_faces(P, f, Q, g)) dual_of[f] = g;
      if (!dual_of.count(f)) throw NotReflexiveError("a face has no dual face");
    }
    for (std::size_t a = 0; a < primary_.cells().size(); ++a) {
      std::size_t f = primary_.cells()[a].face;
      for (auto b : fibre_.cells_in_face(dual_of.at(f))) {
        BaseCell c;
        c.alpha = a;
        c.beta = b;
        c.dim = primary_.cells()[a].dim + fibre_.face_dim(b) - fibre_.cells()[b].dim;
        c.mirror_dim = fibre_.cells()[b].dim + primary_.face_dim(a) - primary_.cells()[a].dim;
        key_[{a, b}] = cells_.size();
        cells_.push_back(c);
      }
    }
  }

  std::size_t rank() const { return primary_.rank(); }
  const BoundarySubdivision& primary() const { return primary_; }
  const BoundarySubdivision& fibre() const { return fibre_; }
  const WeightFunction& primary_weights() const { return w_; }
  const WeightFunction& fibre_weights() const { return v_; }
  const std::vector<BaseCell>& cells() const { return cells_; }

  std::optional<std::size_t> cell_of(std::size_t alpha, std::size_t beta) const {
    auto it = key_.find({alpha, beta});
    if (it == key_.end()) return std::nullopt;
    return it->second;
  }

  // Face order: alpha grows while beta shrinks.
  bool leq(std::size_t i, std::size_t j) const {
    return primary_.is_face(cells_[i].alpha, cells_[j].alpha) && fibre_.is_face(cells_[j].beta, cells_[i].beta);
  }

  // The same cells with the roles of the two factors exchanged.
  BaseComplex mirror() const { return BaseComplex(fibre_, primary_, v_, w_); }

  // Index of cell i's partner in the mirror complex.
  std::size_t partner(std::size_t i, const BaseComplex& mirror) const {
    auto j = mirror.cell_of(cells_.at(i).beta, cells_[i].alpha);
    ensure(j.has_value(), "cell has no partner in the mirror complex");
    return *j;
  }

  // Product coordinates of the barycenter vertex of cell i.
  QVec vertex_point(std::size_t i) const {
    QVec p = primary_.cells()[cells_.at(i).alpha].barycenter;
    const QVec& q = fibre_.cells()[cells_[i].beta].barycenter;
    p.insert(p.end(), q.begin(), q.end());
    return p;
  }

  QVec point_of(const ChainPoint& c) const {
    QVec p(2 * rank(), Rational(0));
    for (std::size_t k = 0; k < c.chain.size(); ++k) p = add(p, scale(vertex_point(c.chain[k]), c.weights[k]));
    return p;
  }

  // Simplex of the barycentric subdivision holding b (product coordinates),
  // with positive weights; chain ordered bottom to top.
  ChainPoint locate(const QVec& b) const {
    std::size_t r = rank();
    if (b.size() != 2 * r) throw DimensionError("base point needs both coordinate blocks");
    QVec x(b.begin(), b.begin() + static_cast<long>(r)), y(b.begin() + static_cast<long>(r), b.end());
    auto a = primary_.locate(x);
    auto f = fibre_.locate(y);
    // alpha increases along the chain while beta decreases: merge the two
    // cumulative weight sequences (staircase).
    std::reverse(f.chain.begin(), f.chain.end());
    std::reverse(f.weights.begin(), f.weights.end());
    ChainPoint out;
    std::size_t i = 0, j = 0;
    Rational ai = a.weights[0], bj = f.weights[0];
    while (true) {
      auto c = cell_of(a.chain[i], f.chain[j]);
      if (!c) throw PreconditionError("point is off the base complex");
      Rational step = std::min(ai, bj);
      out.chain.push_back(*c);
      out.weights.push_back(step);
      ai -= step;
      bj -= step;
      bool last_a = i + 1 == a.chain.size(), last_b = j + 1 == f.chain.size();
      if (ai == 0 && !last_a) ai = a.weights[++i];
      if (bj == 0 && !last_b) bj = f.weights[++j];
      if (ai == 0 && bj == 0) break;
      ensure(ai > 0 && bj > 0, "staircase merge ran out of weight");
    }
    return out;
  }

  QVec pi_hat(const QVec& b) const {
    locate(b);
    return QVec(b.begin(), b.begin() + static_cast<long>(rank()));
  }

  // Point of the boundary of the weight polytope. Available when the fibre
  // subdivision is the anticanonical one (the base is the polytope itself) or
  // when the primary subdivision is trivial (barycenters of weight polytope faces).
  QVec realize(const QVec& b) const {
    auto c = locate(b);
    bool anticanonical = true;
    for (const auto& p : v_.p_values()) anticanonical = anticanonical && p == -1;
    if (anticanonical) return QVec(b.begin(), b.begin() + static_cast<long>(rank()));
    if (!primary_.trivial())
      throw PreconditionError("realization needs anticanonical fibre weights or a trivial primary subdivision");
    QVec out(rank(), Rational(0));
    for (std::size_t k = 0; k < c.chain.size(); ++k)
      out = add(out, scale(weight_face_barycenter(cells_[c.chain[k]].beta), c.weights[k]));
    return out;
  }

  // The face alpha_n = {m in base polytope : <m,n> = p(n)} of the weight polytope.
  std::size_t alpha_face(const LatticeVector& n) const {
    auto i = v_.index_of(n.coords);
    if (!i || n.side != v_.side()) throw InputError("point is not in the fibre weight domain");
    const auto& P = weight_polytope_cached();
    std::vector<std::size_t> verts;
    for (std::size_t k = 0; k < P.vertices().size(); ++k)
      if (dot(n.coords, P.vertices()[k]) == v_.p(*i)) verts.push_back(k);
    if (verts.empty()) throw NotMovableError("fibre weights do not support this point");
    return P.hull().face_index(verts);
  }

  // b lies in the open face alpha_n: the top cell of its chain has beta = {n}.
  bool in_alpha_interior(const ChainPoint& c, const LatticeVector& n) const {
    auto vc = fibre_.vertex_cell(n.coords);
    return vc && cells_[c.chain.back()].beta == *vc;
  }

  // b lies in the open star of the preimage of m: the bottom cell has alpha = {m}.
  bool in_star(const ChainPoint& c, const LatticeVector& m) const {
    auto vc = primary_.vertex_cell(m.coords);
    return vc && cells_[c.chain.front()].alpha == *vc;
  }

  // Random point in the relative interior of a random maximal simplex.
  QVec random_point(std::mt19937_64& rng, std::size_t max_den = 97) const {
    ChainPoint c = random_chain(rng);
    std::uniform_int_distribution<long> d(1, static_cast<long>(max_den));
    Rational total = 0;
    for (std::size_t k = 0; k < c.chain.size(); ++k) {
      c.weights.push_back(Rational(d(rng)));
      total += c.weights.back();
    }
    for (auto& x : c.weights) x /= total;
    return point_of(c);
  }

  // Cells directly above i in the face order.
  const std::vector<std::size_t>& covers(std::size_t i) const {
    build_covers();
    return up_.at(i);
  }

  std::vector<std::size_t> minimal_cells() const {
    build_covers();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (down_[i].empty()) out.push_back(i);
    return out;
  }

  ChainPoint random_chain(std::mt19937_64& rng) const {
    auto mins = minimal_cells();
    ChainPoint c;
    std::size_t cur = mins[std::uniform_int_distribution<std::size_t>(0, mins.size() - 1)(rng)];
    c.chain.push_back(cur);
    while (!up_[cur].empty()) {
      cur = up_[cur][std::uniform_int_distribution<std::size_t>(0, up_[cur].size() - 1)(rng)];
      c.chain.push_back(cur);
    }
    return c;
  }

 private:
  void build_covers() const {
    if (!up_.empty() || cells_.empty()) return;
    std::size_t n = cells_.size();
    std::vector<std::vector<std::size_t>> above(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && leq(i, j)) above[i].push_back(j);
    up_.assign(n, {});
    down_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
      for (auto j : above[i]) {
        bool cover = true;
        for (auto k : above[i])
          if (k != j && leq(k, j)) {
            cover = false;
            break;
          }
        if (cover) {
          up_[i].push_back(j);
          down_[j].push_back(i);
        }
      }
  }

  const Polytope& weight_polytope_cached() const {
    if (!weight_polytope_) weight_polytope_ = weight_polytope(v_);
    return *weight_polytope_;
  }

  QVec weight_face_barycenter(std::size_t beta) const {
    const auto& P = weight_polytope_cached();
    std::vector<std::size_t> verts;
    for (std::size_t k = 0; k < P.vertices().size(); ++k) {
      bool on = true;
      for (auto v : fibre_.cells()[beta].vertices) {
        auto i = v_.index_of(fibre_.points()[v].coords);
        ensure(i.has_value(), "fibre vertex without a weight");
        on = on && dot(fibre_.points()[v].coords, P.vertices()[k]) == v_.p(*i);
      }
      if (on) verts.push_back(k);
    }
    ensure(!verts.empty(), "fibre cell has no face on the weight polytope");
    return P.hull().barycenter_of(verts);
  }

  BoundarySubdivision primary_, fibre_;
  WeightFunction w_, v_;
  std::vector<BaseCell> cells_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> key_;
  mutable std::vector<std::vector<std::size_t>> up_, down_;
  mutable std::optional<Polytope> weight_polytope_;
};

// Base identification: a point of the mirror base (product coordinates of the
// mirror complex) is sent to the point of this base on the partner simplex
// with the same weights.
inline QVec phi_apply(const BaseComplex& from, const BaseComplex& to, const QVec& b) {
  auto c = from.locate(b);
  ChainPoint img;
  for (std::size_t k = c.chain.size(); k-- > 0;) {
    img.chain.push_back(from.partner(c.chain[k], to));
    img.weights.push_back(c.weights[k]);
  }
  return to.point_of(img);
}

}  // namespace syz
