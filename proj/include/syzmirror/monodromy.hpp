#pragma once

// Monodromy of the fibre lattices around the loop that visits the charts
// of n, m, n', m' in turn, its dual on the orthogonal lattice, and the local
// operator triples at the vertices of the locus.

#include <array>
#include <sstream>

#include "syzmirror/lattice.hpp"
#include "syzmirror/linalg.hpp"
#include "syzmirror/locus.hpp"

namespace syz {

// Loop witness (n, m, n', m').
struct Loop {
  LatticeVector n, m, n2, m2;
};

// Integer matrix acting on column vectors of coordinates in lattice's basis.
struct MonodromyOperator {
  SublatticeBasis lattice;
  ZMat matrix;
  Loop loop;
};

enum class VertexClass { II, III, Inconsistent };

inline const char* vertex_class_name(VertexClass c) {
  switch (c) {
    case VertexClass::II: return "II";
    case VertexClass::III: return "III";
    case VertexClass::Inconsistent: return "inconsistent";
  }
  return "?";
}

namespace detail {

inline void check_loop(const Loop& l) {
  std::ostringstream bad;
  auto test = [&](const LatticeVector& a, const char* an, const LatticeVector& b, const char* bn) {
    Integer p = pair(a, b);
    if (p != -1) bad << (bad.tellp() > 0 ? ", " : "") << "<" << an << "," << bn << "> = " << p << " for " << an
                     << "=" << a << " " << bn << "=" << b;
  };
  test(l.m, "m", l.n, "n");
  test(l.m, "m", l.n2, "n'");
  test(l.m2, "m'", l.n, "n");
  test(l.m2, "m'", l.n2, "n'");
  if (bad.tellp() > 0) throw ConstraintViolation("loop pairing must be -1: " + bad.str());
}

inline ZMat sub_identity(ZMat a) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i][i] -= 1;
  return a;
}

inline void check_unipotent(const ZMat& t) {
  ensure(determinant(t) == 1, "monodromy operator has determinant other than 1");
  auto d = sub_identity(t);
  auto d2 = multiply(d, d);
  for (const auto& row : d2) ensure(is_zero(row), "monodromy operator is not unipotent of order 2");
}

// Matrix whose column j is the image of basis vector j.
template <class F>
ZMat matrix_of(const SublatticeBasis& b, F&& image) {
  std::size_t k = b.rank();
  ZMat t(k, ZVec(k));
  for (std::size_t j = 0; j < k; ++j) {
    ZVec e(k, Integer(0));
    e[j] = 1;
    ZVec c = b.coordinates(image(b.lift(e)));
    for (std::size_t i = 0; i < k; ++i) t[i][j] = c[i];
  }
  return t;
}

}  // namespace detail

// Composition of the four chart transfers, on coordinates of N/Zn.
inline ZMat transfer_composition(const Loop& l) {
  detail::check_loop(l);
  auto Q = quotient_lattice(l.n);
  return detail::matrix_of(Q, [&](const LatticeVector& x) {
    auto y = transfer_section(l.m, l.n, x);  // into m^perp
    return transfer_section(l.m2, l.n2, y);  // through N/Zn' into m'^perp
  });
}

// [x] -> [x] + <m'-m, x> [n'] on N/Zn.
inline MonodromyOperator loop_monodromy(const Loop& l) {
  detail::check_loop(l);
  MonodromyOperator T;
  T.loop = l;
  T.lattice = quotient_lattice(l.n);
  LatticeVector dm = l.m2 - l.m;
  T.matrix = detail::matrix_of(T.lattice, [&](const LatticeVector& x) { return x + pair(dm, x) * l.n2; });
  ensure(T.matrix == transfer_composition(l), "closed monodromy formula disagrees with the chart transfers");
  detail::check_unipotent(T.matrix);
  return T;
}

// y -> y + <y, n'> (m - m') on n^perp.
inline MonodromyOperator dual_loop_monodromy(const Loop& l) {
  detail::check_loop(l);
  MonodromyOperator D;
  D.loop = l;
  D.lattice = orthogonal_sublattice(l.n);
  LatticeVector dm = l.m - l.m2;
  D.matrix = detail::matrix_of(D.lattice, [&](const LatticeVector& y) { return y + pair(y, l.n2) * dm; });
  detail::check_unipotent(D.matrix);
  return D;
}

// <D y, T x> = <y, x> on all basis pairs, for T on N/Zn and D on n^perp.
inline bool verify_duality(const MonodromyOperator& T, const MonodromyOperator& D) {
  if (T.lattice.kind != SublatticeBasis::Kind::Quotient || D.lattice.kind != SublatticeBasis::Kind::Orthogonal)
    throw PreconditionError("duality check needs a quotient operator and an orthogonal operator");
  if (!(T.lattice.anchor == D.lattice.anchor)) throw PreconditionError("operators have different anchors");
  std::size_t k = T.lattice.rank();
  if (T.matrix.size() != k || D.matrix.size() != k) throw DimensionError("operator size mismatch");
  ZMat G(k, ZVec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) G[i][j] = dot(D.lattice.basis[i], T.lattice.basis[j]);
  ensure(abs(determinant(G)) == 1, "pairing between quotient and orthogonal lattices is not perfect");
  return multiply(multiply(transpose(D.matrix), G), T.matrix) == G;
}

inline VertexClass classify_vertex(const ZMat& t1, const ZMat& t2, const ZMat& t3) {
  std::size_t k = t1.size();
  if (t2.size() != k || t3.size() != k) throw DimensionError("operators of different sizes");
  if (multiply(multiply(t1, t2), t3) != identity_z(k)) return VertexClass::Inconsistent;
  ZMat span(k);
  for (const auto& t : {t1, t2, t3}) {
    auto d = detail::sub_identity(t);
    for (std::size_t i = 0; i < k; ++i) span[i].insert(span[i].end(), d[i].begin(), d[i].end());
  }
  switch (rank(span)) {
    case 1: return VertexClass::II;
    case 2: return VertexClass::III;
    default: return VertexClass::Inconsistent;
  }
}

// Basis (as columns) in which T is the elementary matrix I + E12, when T - I
// is [n'] times a primitive functional.
inline std::optional<ZMat> type_one_basis(const MonodromyOperator& T) {
  std::size_t k = T.matrix.size();
  if (k < 2) return std::nullopt;
  ZVec u = T.lattice.coordinates(T.loop.n2);
  if (!is_primitive(u)) return std::nullopt;
  // f(c) = <m'-m, lift(c)>
  LatticeVector dm = T.loop.m2 - T.loop.m;
  ZVec f(k);
  for (std::size_t j = 0; j < k; ++j) f[j] = dot(dm.coords, T.lattice.basis[j]);
  if (is_zero(f) || !is_primitive(f) || dot(f, u) != 0) return std::nullopt;
  // x with f(x) = 1
  auto h = hermite_normal_form(transpose(ZMat{f}));
  ZVec x = h.U[0];
  if (dot(f, x) != 1) return std::nullopt;
  // Complete u to a basis of ker f.
  ZMat K = integer_kernel(ZMat{f}, k);
  auto cu = echelon_coordinates(K, echelon_pivots(K), to_q(u));
  ensure(cu.has_value() && is_integral(*cu), "primitive vector outside the kernel lattice");
  ZVec c = to_z(*cu);
  // Unimodular completion of c inside Z^(k-1).
  auto hc = hermite_normal_form(transpose(ZMat{c}));
  ZMat inv_rows = hc.U;  // U c = e1, so columns of U^-1 start with c
  auto Uinv = inverse(to_q(inv_rows));
  ensure(Uinv.has_value(), "singular completion");
  ZMat B(k, ZVec(k, Integer(0)));
  auto put = [&](std::size_t col, const ZVec& v) {
    for (std::size_t i = 0; i < k; ++i) B[i][col] = v[i];
  };
  put(0, u);
  put(1, x);
  for (std::size_t j = 1; j < K.size(); ++j) {
    ZVec y(k, Integer(0));
    for (std::size_t a = 0; a < K.size(); ++a) {
      Rational coef = (*Uinv)[a][j];
      ensure(coef.get_den() == 1, "non-integral completion");
      for (std::size_t i = 0; i < k; ++i) y[i] += coef.get_num() * K[a][i];
    }
    put(j + 1, y);
  }
  if (determinant(B) < 0 && k < 3) return std::nullopt;
  if (determinant(B) < 0)
    for (std::size_t i = 0; i < k; ++i) B[i][k - 1] = -B[i][k - 1];
  ensure(abs(determinant(B)) == 1, "exhibited basis is not unimodular");
  return B;
}

// Two endpoints of a segment cell, sorted.
inline std::array<LatticeVector, 2> segment_ends(const BoundarySubdivision& Z, std::size_t cell) {
  const auto& c = Z.cells().at(cell);
  if (c.dim != 1 || c.vertices.size() != 2) throw PreconditionError("cell is not a segment");
  auto a = Z.points()[c.vertices[0]], b = Z.points()[c.vertices[1]];
  if (b < a) std::swap(a, b);
  return {a, b};
}

// Monodromy around the leg (lower, upper) of the locus: m, m' from the
// primary segment of the lower cell, n, n' from the fibre segment of the
// upper cell.
inline MonodromyOperator leg_monodromy(const LocusComplex& L, const std::array<std::size_t, 2>& leg) {
  if (!std::binary_search(L.edges.begin(), L.edges.end(), leg)) throw PreconditionError("not an edge of the locus");
  const auto& B = *L.base;
  const auto& lo = B.cells()[leg[0]];
  const auto& hi = B.cells()[leg[1]];
  if (lo.alpha == hi.alpha) throw PreconditionError("leg lies over an edge of the polytope, not inside a 2-face");
  auto ms = segment_ends(B.primary(), lo.alpha);
  auto ns = segment_ends(B.fibre(), hi.beta);
  return loop_monodromy({ns[0], ms[0], ns[1], ms[1]});
}

// The three legs at a trivalent vertex with their operators, cyclically
// oriented so that the product is the identity. Face vertices act on N/Zn;
// edge vertices act on the orthogonal lattice of the segment on the edge.
struct VertexMonodromy {
  std::size_t cell = 0;
  Stratum stratum = Stratum::Smooth;
  std::vector<std::array<std::size_t, 2>> legs;
  std::vector<MonodromyOperator> operators;
};

inline VertexMonodromy vertex_monodromy(const LocusComplex& L, std::size_t cell) {
  auto it = L.strata.find(cell);
  if (it == L.strata.end() || it->second == Stratum::Smooth)
    throw PreconditionError("cell is not a vertex of the locus");
  const auto& B = *L.base;
  VertexMonodromy V;
  V.cell = cell;
  V.stratum = it->second;
  bool face = V.stratum == Stratum::FaceVertex;
  // Face vertex: triangle in the primary subdivision, crossed edges are primary
  // segments. Edge vertex: triangle in the fibre subdivision.
  const BoundarySubdivision& tri_side = face ? B.primary() : B.fibre();
  const BoundarySubdivision& seg_side = face ? B.fibre() : B.primary();
  std::size_t tri = face ? B.cells()[cell].alpha : B.cells()[cell].beta;
  std::size_t seg = face ? B.cells()[cell].beta : B.cells()[cell].alpha;
  const auto& tv = tri_side.cells()[tri].vertices;
  if (tv.size() != 3) throw PreconditionError("vertex cell is not a triangle");
  std::vector<LatticeVector> corners;
  for (auto p : tv) corners.push_back(tri_side.points()[p]);
  std::sort(corners.begin(), corners.end());
  auto anchors = segment_ends(seg_side, seg);
  std::map<std::pair<LatticeVector, LatticeVector>, std::array<std::size_t, 2>> crossing;
  for (const auto& e : L.edges) {
    if (e[0] != cell && e[1] != cell) continue;
    std::size_t other = e[0] == cell ? e[1] : e[0];
    std::size_t edge_cell = face ? B.cells()[other].alpha : B.cells()[other].beta;
    if (tri_side.cells()[edge_cell].dim != 1) throw InvariantError("leg does not cross an edge of the vertex triangle");
    auto ends = segment_ends(tri_side, edge_cell);
    crossing[{ends[0], ends[1]}] = e;
  }
  for (int k = 0; k < 3; ++k) {
    const auto& a = corners[k];
    const auto& b = corners[(k + 1) % 3];
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto c = crossing.find(key);
    if (c == crossing.end()) throw InvariantError("vertex triangle edge without a leg");
    V.legs.push_back(c->second);
    Loop l{anchors[0], a, anchors[1], b};
    V.operators.push_back(face ? loop_monodromy(l) : dual_loop_monodromy(l));
  }
  return V;
}

inline VertexClass classify_vertex(const VertexMonodromy& V) {
  return classify_vertex(V.operators[0].matrix, V.operators[1].matrix, V.operators[2].matrix);
}

}  // namespace syz
