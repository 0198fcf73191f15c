#pragma once

// The singular locus inside the base: per 2-face graphs lifted into the base
// complex, glued along the edges of the polytope, with vertex strata and
// fibre types.

#include <memory>

#include "syzmirror/base.hpp"
#include "syzmirror/gamma.hpp"

namespace syz {

enum class Stratum { Smooth, FaceVertex, EdgeVertex };  // G1, G2, G3
enum class FiberType { Torus, I, II, III };

inline const char* stratum_name(Stratum s) {
  switch (s) {
    case Stratum::Smooth: return "G1";
    case Stratum::FaceVertex: return "G2";
    case Stratum::EdgeVertex: return "G3";
  }
  return "?";
}

inline const char* fiber_type_name(FiberType t) {
  switch (t) {
    case FiberType::Torus: return "T3";
    case FiberType::I: return "I";
    case FiberType::II: return "II";
    case FiberType::III: return "III";
  }
  return "?";
}

// One copy of a 2-face graph: the face, the segment of its dual edge it sits
// over, and the base cell of every graph vertex.
struct LocusPiece {
  bool mirror_side = false;  // graph of a face of the polar, carried over by the base identification
  std::size_t face = 0;      // face index in the polytope the graph lives on
  std::size_t segment = 0;   // cell of the other side's subdivision (a segment)
  GammaGraph graph;
  std::vector<std::size_t> base_cell;  // per graph vertex
};

struct LocusComplex {
  std::shared_ptr<const BaseComplex> base;
  std::vector<std::size_t> vertices;                // base cells, sorted
  std::vector<std::array<std::size_t, 2>> edges;    // (lower, upper) base cells, sorted
  std::map<std::size_t, Stratum> strata;
  std::vector<LocusPiece> pieces;

  bool has_vertex(std::size_t cell) const { return std::binary_search(vertices.begin(), vertices.end(), cell); }

  std::size_t valence(std::size_t cell) const {
    std::size_t k = 0;
    for (const auto& e : edges) k += (e[0] == cell) + (e[1] == cell);
    return k;
  }

  std::size_t count(Stratum s) const {
    std::size_t k = 0;
    for (const auto& [c, t] : strata) k += t == s;
    return k;
  }
};

namespace detail {

// Graph of face f of the subdivision's polytope, computed from the domain
// points on that face.
inline std::pair<RegularSubdivision, std::vector<std::size_t>> face_subdivision(const BoundarySubdivision& Z,
                                                                                std::size_t f) {
  const auto& P = Z.polytope();
  auto face = ConvexPolytope::from_points(P.hull().face_points(f));
  std::vector<std::size_t> local;
  std::vector<QVec> pts;
  std::vector<Rational> hs;
  for (std::size_t i = 0; i < Z.points().size(); ++i) {
    QVec q = to_q(Z.points()[i].coords);
    if (!face.contains(q)) continue;
    local.push_back(i);
    pts.push_back(q);
    hs.push_back(Z.heights()[i]);
  }
  return {RegularSubdivision::compute(pts, hs), local};
}

inline std::size_t global_cell(const BoundarySubdivision& Z, const RegularSubdivision& S,
                               const std::vector<std::size_t>& local, std::size_t c) {
  std::vector<std::size_t> g;
  for (auto i : S.cells()[c].points) g.push_back(local[i]);
  std::sort(g.begin(), g.end());
  auto cell = Z.cell_with_points(g);
  ensure(cell.has_value(), "face subdivision cell missing from the boundary subdivision");
  return *cell;
}

// Copies of the graphs of all 2-faces of B's primary side, one per segment
// of the dual edge. Returned cells are indices into B.
inline std::vector<LocusPiece> primary_pieces(const BaseComplex& B, bool mirror_side) {
  const auto& Zp = B.primary();
  const auto& Zf = B.fibre();
  const auto& P = Zp.polytope();
  const auto& Q = Zf.polytope();
  std::vector<LocusPiece> out;
  for (std::size_t f = 0; f < P.faces().size(); ++f) {
    if (P.faces()[f].dim != 2) continue;
    auto [S, local] = face_subdivision(Zp, f);
    if (!S.all_points_are_vertices()) {
      std::size_t bad = 0;
      auto verts = S.cells_of_dim(0);
      std::set<std::size_t> vs;
      for (auto c : verts) vs.insert(S.cells()[c].points[0]);
      while (vs.count(bad)) ++bad;
      std::ostringstream os;
      os << "weights are not strictly convex on 2-face " << f << " at point " << Zp.points()[local[bad]];
      throw NotConvexError(os.str());
    }
    GammaGraph G = gamma_graph(S);
    std::size_t g = 0;
    for (std::size_t k = 0; k < Q.faces().size(); ++k)
      if (dual_faces(P, f, Q, k)) g = k;
    for (auto beta : Zf.cells_in_face(g)) {
      if (Zf.cells()[beta].dim != 1) continue;
      LocusPiece piece;
      piece.mirror_side = mirror_side;
      piece.face = f;
      piece.segment = beta;
      for (const auto& v : G.vertices) {
        std::size_t alpha = global_cell(Zp, S, local, v.cell);
        std::optional<std::size_t> cell;
        if (!v.boundary) {
          cell = B.cell_of(alpha, beta);
        } else {
          // Leg end on an edge of the face: pair the segment with the 2-cell of
          // the dual 2-face that has beta as a side.
          std::size_t tau = Zp.cells()[alpha].face;
          std::size_t dual2 = 0;
          for (std::size_t k = 0; k < Q.faces().size(); ++k)
            if (dual_faces(P, tau, Q, k)) dual2 = k;
          for (auto b2 : Zf.cells_in_face(dual2))
            if (Zf.cells()[b2].dim == 2 && Zf.is_face(beta, b2)) {
              ensure(!cell.has_value(), "segment lies on two 2-cells of a dual 2-face");
              cell = B.cell_of(alpha, b2);
            }
        }
        ensure(cell.has_value(), "graph vertex has no base cell");
        piece.base_cell.push_back(*cell);
      }
      piece.graph = G;
      out.push_back(std::move(piece));
    }
  }
  return out;
}

}  // namespace detail

// Cells with both factors of positive dimension, joined by the face order.
inline std::pair<std::vector<std::size_t>, std::vector<std::array<std::size_t, 2>>> locus_by_dimension(
    const BaseComplex& B) {
  std::vector<std::size_t> vs;
  for (std::size_t i = 0; i < B.cells().size(); ++i)
    if (B.primary().cells()[B.cells()[i].alpha].dim >= 1 && B.fibre().cells()[B.cells()[i].beta].dim >= 1)
      vs.push_back(i);
  std::vector<std::array<std::size_t, 2>> es;
  for (auto i : vs)
    for (auto j : vs)
      if (i != j && B.leq(i, j)) es.push_back({i, j});
  std::sort(es.begin(), es.end());
  return {vs, es};
}

// Locus of (Delta, w, v) in rank 4, assembled from the 2-face graphs of both
// sides and checked against the dimension description.
inline LocusComplex build_locus(const ReflexivePolytope& R, const WeightFunction& w, const WeightFunction& v) {
  if (R.rank() != 4) throw PreconditionError("locus construction needs rank 4");
  auto base = std::make_shared<BaseComplex>(R, w, v);
  LocusComplex L;
  L.base = base;
  auto mirror = base->mirror();
  L.pieces = detail::primary_pieces(*base, false);
  auto mp = detail::primary_pieces(mirror, true);
  for (auto& piece : mp) {
    for (auto& c : piece.base_cell) c = mirror.partner(c, *base);
    L.pieces.push_back(std::move(piece));
  }
  std::set<std::size_t> vs;
  std::set<std::array<std::size_t, 2>> es;
  for (const auto& piece : L.pieces) {
    for (auto c : piece.base_cell) vs.insert(c);
    for (const auto& e : piece.graph.edges) {
      std::size_t a = piece.base_cell[e[0]], b = piece.base_cell[e[1]];
      if (base->leq(b, a)) std::swap(a, b);
      ensure(base->leq(a, b) && a != b, "graph edge joins incomparable base cells");
      es.insert({a, b});
    }
  }
  L.vertices.assign(vs.begin(), vs.end());
  L.edges.assign(es.begin(), es.end());
  auto [cv, ce] = locus_by_dimension(*base);
  ensure(cv == L.vertices && ce == L.edges, "assembled locus differs from the dimension description");
  const auto& P = R.base();
  for (auto c : L.vertices) {
    std::size_t val = L.valence(c);
    long fdim = P.faces()[base->primary().cells()[base->cells()[c].alpha].face].dim;
    Stratum s = Stratum::Smooth;
    if (val >= 3) s = fdim == 2 ? Stratum::FaceVertex : Stratum::EdgeVertex;
    ensure(val >= 2 || val == 0, "locus has a free end");
    ensure(fdim == 1 || fdim == 2, "locus vertex over a vertex or facet of the polytope");
    if (s == Stratum::FaceVertex) ensure(val == 3, "face vertex of the locus is not trivalent");
    L.strata[c] = s;
  }
  return L;
}

// Fibre type over b (product coordinates of the base).
inline FiberType fiber_type(const LocusComplex& L, const QVec& b) {
  auto c = L.base->locate(b);
  for (auto i : c.chain)
    if (!L.has_vertex(i)) return FiberType::Torus;
  if (c.chain.size() >= 2) return FiberType::I;
  switch (L.strata.at(c.chain[0])) {
    case Stratum::Smooth: return FiberType::I;
    case Stratum::FaceVertex: return FiberType::II;
    case Stratum::EdgeVertex: return FiberType::III;
  }
  return FiberType::Torus;
}

}  // namespace syz
