#pragma once

// Exact linear algebra over Z and Q on row-major dense matrices.

#include <optional>
#include <utility>

#include "syzmirror/rational.hpp"

namespace syz {

inline ZMat identity_z(std::size_t n) {
  ZMat I(n, ZVec(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline QMat identity_q(std::size_t n) {
  QMat I(n, QVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

template <class M>
M transpose(const M& a) {
  if (a.empty()) return {};
  M t(a[0].size(), typename M::value_type(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline ZMat multiply(const ZMat& a, const ZMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  ZMat c(n, ZVec(m, Integer(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline QMat multiply(const QMat& a, const QMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat c(n, QVec(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline ZVec apply(const ZMat& a, const ZVec& x) {
  ZVec y(a.size(), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = dot(a[i], x);
  return y;
}

inline QMat to_q(const ZMat& a) {
  QMat q;
  q.reserve(a.size());
  for (const auto& r : a) q.push_back(to_q(r));
  return q;
}

// Reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref_in_place(QMat& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  return pivots;
}

inline std::size_t rank(QMat a) { return rref_in_place(a).size(); }
inline std::size_t rank(const ZMat& a) { return rank(to_q(a)); }

// Affine rank of a point set (dimension of its affine hull), -1 for empty.
inline long affine_dimension(const std::vector<QVec>& pts) {
  if (pts.empty()) return -1;
  QMat d;
  for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(sub(pts[i], pts[0]));
  return d.empty() ? 0 : static_cast<long>(rank(d));
}

inline Integer determinant(ZMat a) {
  // Bareiss fraction-free elimination.
  std::size_t n = a.size();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline std::optional<QMat> inverse(const QMat& a) {
  std::size_t n = a.size();
  QMat aug(n, QVec(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto piv = rref_in_place(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  QMat inv(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

// Solve x * B = v for x where B has full row rank; nullopt if v is not in the row space.
inline std::optional<QVec> solve_row_combination(const QMat& basis, const QVec& v) {
  std::size_t k = basis.size();
  if (k == 0) return is_zero(v) ? std::optional<QVec>(QVec{}) : std::nullopt;
  std::size_t d = v.size();
  // Columns of [B^T | v] reduced.
  QMat sys(d, QVec(k + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) sys[i][j] = basis[j][i];
    sys[i][k] = v[i];
  }
  auto piv = rref_in_place(sys);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  if (piv.size() != k) throw InvariantError("basis rows are not independent");
  QVec x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = sys[i][k];
  return x;
}

struct HermiteForm {
  ZMat H;  // U * A
  ZMat U;  // unimodular
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

// Row-style Hermite normal form: echelon, positive pivots, entries above a
// pivot reduced into [0, pivot).
inline HermiteForm hermite_normal_form(const ZMat& a) {
  HermiteForm f;
  f.H = a;
  std::size_t m = a.size();
  f.U = identity_z(m);
  if (m == 0) return f;
  std::size_t n = a[0].size(), r = 0;
  auto row_sub = [&](std::size_t i, std::size_t j, const Integer& q) {
    if (q == 0) return;
    for (auto k = 0u; k < n; ++k) f.H[i][k] -= q * f.H[j][k];
    for (auto k = 0u; k < m; ++k) f.U[i][k] -= q * f.U[j][k];
  };
  for (std::size_t c = 0; c < n && r < m; ++c) {
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (f.H[i][c] != 0 && (best == m || abs(f.H[i][c]) < abs(f.H[best][c]))) best = i;
      if (best == m) break;
      std::swap(f.H[best], f.H[r]);
      std::swap(f.U[best], f.U[r]);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (f.H[i][c] == 0) continue;
        Integer q = f.H[i][c] / f.H[r][c];
        row_sub(i, r, q);
        if (f.H[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (f.H[r][c] == 0) continue;
    if (f.H[r][c] < 0) {
      for (auto& x : f.H[r]) x = -x;
      for (auto& x : f.U[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) row_sub(i, r, floor_div(f.H[i][c], f.H[r][c]));
    f.pivots.push_back(c);
    ++r;
  }
  f.rank = r;
  return f;
}

// Nonzero rows of the Hermite form: canonical basis of the row lattice.
inline ZMat hermite_basis(const ZMat& a) {
  auto f = hermite_normal_form(a);
  f.H.resize(f.rank);
  return f.H;
}

// Basis (rows, Hermite form) of {x in Z^n : A x = 0}.
inline ZMat integer_kernel(const ZMat& a, std::size_t n) {
  if (a.empty()) return identity_z(n);
  auto f = hermite_normal_form(transpose(a));
  ZMat k(f.U.begin() + static_cast<long>(f.rank), f.U.end());
  return hermite_basis(k);
}

// Basis of (span_Q rows) intersected with Z^n.
inline ZMat saturation(const ZMat& rows, std::size_t n) {
  if (rows.empty()) return {};
  return integer_kernel(integer_kernel(rows, n), n);
}

// Coordinates of v in an echelon basis (rows), exact over Q.
inline std::optional<QVec> echelon_coordinates(const ZMat& basis, const std::vector<std::size_t>& pivots,
                                               const QVec& v) {
  QVec rest = v;
  QVec c(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    c[i] = rest[pivots[i]] / Rational(basis[i][pivots[i]]);
    for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= c[i] * basis[i][j];
  }
  if (!is_zero(rest)) return std::nullopt;
  return c;
}

inline std::vector<std::size_t> echelon_pivots(const ZMat& basis) {
  std::vector<std::size_t> p;
  for (const auto& row : basis) {
    std::size_t j = 0;
    while (j < row.size() && row[j] == 0) ++j;
    if (j == row.size()) throw InvariantError("zero row in echelon basis");
    p.push_back(j);
  }
  return p;
}

struct SmithForm {
  ZMat D;  // U * A * V
  ZMat U;
  ZMat V;
  std::vector<Integer> invariants;  // nonzero diagonal entries
};

inline SmithForm smith_normal_form(const ZMat& a) {
  SmithForm s;
  s.D = a;
  std::size_t m = a.size(), n = m ? a[0].size() : 0;
  s.U = identity_z(m);
  s.V = identity_z(n);
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& r : s.D) std::swap(r[i], r[j]);
    for (auto& r : s.V) std::swap(r[i], r[j]);
  };
  auto row_op = [&](std::size_t i, std::size_t j, const Integer& q) {  // row_i -= q row_j
    for (std::size_t k = 0; k < n; ++k) s.D[i][k] -= q * s.D[j][k];
    for (std::size_t k = 0; k < m; ++k) s.U[i][k] -= q * s.U[j][k];
  };
  auto col_op = [&](std::size_t i, std::size_t j, const Integer& q) {  // col_i -= q col_j
    for (std::size_t k = 0; k < m; ++k) s.D[k][i] -= q * s.D[k][j];
    for (std::size_t k = 0; k < n; ++k) s.V[k][i] -= q * s.V[k][j];
  };
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s.D[i][j] != 0 && (bi == m || abs(s.D[i][j]) < abs(s.D[bi][bj]))) bi = i, bj = j;
      if (bi == m) break;
      std::swap(s.D[bi], s.D[t]);
      std::swap(s.U[bi], s.U[t]);
      swap_cols(bj, t);
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        row_op(i, t, s.D[i][t] / s.D[t][t]);
        if (s.D[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        col_op(j, t, s.D[t][j] / s.D[t][t]);
        if (s.D[t][j] != 0) dirty = true;
      }
      if (dirty) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s.D[i][j] % s.D[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_op(t, bad, Integer(-1));
    }
    if (s.D[t][t] < 0) {
      for (auto& x : s.D[t]) x = -x;
      for (auto& x : s.U[t]) x = -x;
    }
    if (s.D[t][t] != 0) s.invariants.push_back(s.D[t][t]);
  }
  return s;
}

}  // namespace syz
