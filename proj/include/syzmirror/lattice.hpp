#pragma once

// Dual lattices M and N, the pairing, and the rank r-1 lattices attached to
// a primitive vector: its orthogonal sublattice and the quotient by it.

#include <ostream>

#include "syzmirror/linalg.hpp"

namespace syz {

enum class Side { M, N };

inline Side opposite(Side s) { return s == Side::M ? Side::N : Side::M; }
inline const char* side_name(Side s) { return s == Side::M ? "M" : "N"; }

struct LatticeVector {
  Side side = Side::M;
  ZVec coords;

  LatticeVector() = default;
  LatticeVector(Side s, ZVec c) : side(s), coords(std::move(c)) {}
  std::size_t rank() const { return coords.size(); }
  bool operator==(const LatticeVector& o) const { return side == o.side && coords == o.coords; }
  bool operator<(const LatticeVector& o) const {
    return side != o.side ? side < o.side : coords < o.coords;
  }
};

struct RationalVector {
  Side side = Side::M;
  QVec coords;

  RationalVector() = default;
  RationalVector(Side s, QVec c) : side(s), coords(std::move(c)) {}
  explicit RationalVector(const LatticeVector& v) : side(v.side), coords(to_q(v.coords)) {}
  std::size_t rank() const { return coords.size(); }
  bool operator==(const RationalVector& o) const { return side == o.side && coords == o.coords; }
  bool operator<(const RationalVector& o) const {
    return side != o.side ? side < o.side : coords < o.coords;
  }
};

inline std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
  os << side_name(v.side) << "(";
  for (std::size_t i = 0; i < v.coords.size(); ++i) os << (i ? "," : "") << v.coords[i];
  return os << ")";
}

namespace detail {
inline void check_pairable(Side a, std::size_t ra, Side b, std::size_t rb) {
  if (a == b) throw SideError(std::string("cannot pair two vectors of side ") + side_name(a));
  if (ra != rb) throw DimensionError("rank mismatch in pairing: " + std::to_string(ra) + " vs " + std::to_string(rb));
}
inline void check_same(Side a, std::size_t ra, Side b, std::size_t rb) {
  if (a != b) throw SideError("mixing M and N vectors");
  if (ra != rb) throw DimensionError("rank mismatch: " + std::to_string(ra) + " vs " + std::to_string(rb));
}
}  // namespace detail

inline Integer pair(const LatticeVector& a, const LatticeVector& b) {
  detail::check_pairable(a.side, a.rank(), b.side, b.rank());
  return dot(a.coords, b.coords);
}

inline Rational pair(const RationalVector& a, const RationalVector& b) {
  detail::check_pairable(a.side, a.rank(), b.side, b.rank());
  return dot(a.coords, b.coords);
}

inline Rational pair(const RationalVector& a, const LatticeVector& b) {
  detail::check_pairable(a.side, a.rank(), b.side, b.rank());
  return dot(a.coords, b.coords);
}

inline Rational pair(const LatticeVector& a, const RationalVector& b) { return pair(b, a); }

inline LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
  detail::check_same(a.side, a.rank(), b.side, b.rank());
  return {a.side, add(a.coords, b.coords)};
}

inline LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
  detail::check_same(a.side, a.rank(), b.side, b.rank());
  return {a.side, sub(a.coords, b.coords)};
}

inline LatticeVector operator*(const Integer& k, const LatticeVector& a) { return {a.side, scale(a.coords, k)}; }

inline bool is_primitive(const ZVec& v) { return content(v) == 1; }

inline LatticeVector unit_vector(Side s, std::size_t rank, std::size_t i) {
  ZVec c(rank, Integer(0));
  c[i] = 1;
  return {s, c};
}

// A rank r-1 lattice attached to a primitive anchor vector.
//  Orthogonal: anchor^perp on the opposite side, basis rows in Hermite form.
//  Quotient: (anchor's lattice) / Z anchor, basis rows are representatives and
//  coordinate_map sends a vector to its quotient coordinates.
struct SublatticeBasis {
  enum class Kind { Orthogonal, Quotient };
  Kind kind = Kind::Orthogonal;
  LatticeVector anchor;
  Side side = Side::M;  // side of the lattice the basis vectors live in
  ZMat basis;
  ZMat coordinate_map;  // Quotient only: rows of a basis of anchor^perp

  std::size_t rank() const { return basis.size(); }

  ZVec coordinates(const LatticeVector& x) const {
    if (x.side != side) throw SideError("vector on the wrong side for this lattice");
    if (x.rank() != anchor.rank()) throw DimensionError("rank mismatch in lattice coordinates");
    if (kind == Kind::Quotient) return apply(coordinate_map, x.coords);
    if (dot(anchor.coords, x.coords) != 0) throw ConstraintViolation("vector is not orthogonal to the anchor");
    auto c = echelon_coordinates(basis, echelon_pivots(basis), to_q(x.coords));
    if (!c || !is_integral(*c)) throw InvariantError("orthogonal basis does not span the sublattice");
    return to_z(*c);
  }

  LatticeVector lift(const ZVec& c) const {
    if (c.size() != basis.size()) throw DimensionError("coordinate vector has the wrong length");
    ZVec x(anchor.rank(), Integer(0));
    for (std::size_t j = 0; j < c.size(); ++j)
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += c[j] * basis[j][i];
    return {side, x};
  }
};

inline void require_primitive(const LatticeVector& v, const char* what) {
  if (is_zero(v.coords)) throw NotPrimitiveError(std::string(what) + " is zero");
  if (!is_primitive(v.coords)) throw NotPrimitiveError(std::string(what) + " is not primitive");
}

inline SublatticeBasis orthogonal_sublattice(const LatticeVector& m) {
  require_primitive(m, "anchor");
  SublatticeBasis b;
  b.kind = SublatticeBasis::Kind::Orthogonal;
  b.anchor = m;
  b.side = opposite(m.side);
  b.basis = integer_kernel(ZMat{m.coords}, m.rank());
  return b;
}

inline SublatticeBasis quotient_lattice(const LatticeVector& n) {
  require_primitive(n, "anchor");
  std::size_t r = n.rank();
  SublatticeBasis b;
  b.kind = SublatticeBasis::Kind::Quotient;
  b.anchor = n;
  b.side = n.side;
  b.coordinate_map = integer_kernel(ZMat{n.coords}, r);
  // A functional u with <u, n> = 1 completes coordinate_map to a unimodular
  // matrix; prefer a signed unit vector so representatives stay short.
  ZVec u;
  for (std::size_t i = 0; i < r && u.empty(); ++i)
    if (abs(n.coords[i]) == 1) {
      u.assign(r, Integer(0));
      u[i] = n.coords[i];
    }
  if (u.empty()) {
    auto f = hermite_normal_form(transpose(ZMat{n.coords}));
    u = f.U[0];
  }
  ensure(dot(u, n.coords) == 1, "quotient completion functional");
  ZMat full = b.coordinate_map;
  full.push_back(u);
  auto inv = inverse(to_q(full));
  ensure(inv.has_value(), "quotient completion is singular");
  for (std::size_t j = 0; j + 1 < r; ++j) {
    QVec col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = (*inv)[i][j];
    b.basis.push_back(to_z(col));
  }
  return b;
}

// x + <m, x> n : the section N_n -> m^perp when <m, n> = -1.
inline LatticeVector transfer_section(const LatticeVector& m, const LatticeVector& n, const LatticeVector& x) {
  Integer mn = pair(m, n);
  if (mn != -1) throw ConstraintViolation("transfer requires <m,n> = -1, got " + mn.get_str());
  detail::check_same(n.side, n.rank(), x.side, x.rank());
  LatticeVector y = x + pair(m, x) * n;
  ensure(pair(m, y) == 0, "transfer section left m^perp");
  return y;
}

}  // namespace syz
