#pragma once

// Reduction of a section to coefficients supported on the codimension-2
// skeleton by the unipotent toric automorphisms attached to facet-interior
// lattice points.

#include <complex>
#include <sstream>

#include "syzmirror/polytope.hpp"

namespace syz {

using Complex = std::complex<double>;

// Coefficients indexed by the lattice points of the polytope (sorted).
struct SectionVector {
  std::vector<LatticeVector> points;
  std::vector<Complex> coeffs;

  std::size_t index_of(const ZVec& m) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].coords == m) return i;
    throw InputError("lattice point is not in the section's support");
  }
  Complex psi() const { return coeffs[index_of(ZVec(points.at(0).rank(), Integer(0)))]; }
};

// Vector field of m acting on coefficients: (L a)[to] += factor * a[from].
struct LieAction {
  LatticeVector m;
  LatticeVector e_sigma;  // the dual vertex with <m, e_sigma> = -1
  struct Entry {
    std::size_t to, from;
    Integer factor;
  };
  std::vector<Entry> entries;
  std::size_t nilpotency_order = 0;  // least k with L^k = 0
};

struct SliceExponent {
  std::vector<Complex> c;  // X = sum c[k] L_k over the context's off-slice points
};

struct SliceResult {
  SectionVector section;
  std::vector<SliceExponent> record;
  std::vector<double> trace;  // off-slice residual before each step and after the last
};

class SliceDivergence : public PreconditionError {
 public:
  SliceDivergence(const std::string& what, std::vector<double> trace)
      : PreconditionError(what), trace_(std::move(trace)) {}
  const std::vector<double>& trace() const { return trace_; }

 private:
  std::vector<double> trace_;
};

inline LieAction lie_action_matrix(const ReflexivePolytope& R, const LatticeVector& m) {
  const auto& P = R.base();
  if (m.side != P.side()) throw SideError("point on the wrong side");
  if (m.rank() != P.rank()) throw DimensionError("point of the wrong rank");
  if (is_zero(m.coords)) throw PreconditionError("the origin has no vector field");
  QVec q = to_q(m.coords);
  if (!P.contains(q)) throw PreconditionError("point is outside the polytope");
  std::vector<std::size_t> tight;
  for (std::size_t k = 0; k < R.dual().vertices().size(); ++k)
    if (dot(q, R.dual().vertices()[k]) == -1) tight.push_back(k);
  if (tight.size() != 1) {
    std::ostringstream os;
    os << "point " << m << " is not interior to a facet (" << tight.size() << " supporting dual vertices)";
    throw PreconditionError(os.str());
  }
  LieAction L;
  L.m = m;
  L.e_sigma = {opposite(P.side()), to_z(R.dual().vertices()[tight[0]])};
  auto pts = lattice_points(P);
  std::map<ZVec, std::size_t> idx;
  for (std::size_t i = 0; i < pts.size(); ++i) idx[pts[i].coords] = i;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Integer f = dot(pts[i].coords, L.e_sigma.coords) + 1;
    if (f == 0) continue;
    auto it = idx.find(add(pts[i].coords, m.coords));
    if (it == idx.end()) {
      std::ostringstream os;
      os << "shift of " << pts[i] << " by " << m << " leaves the polytope with factor " << f;
      throw InvariantError(os.str());
    }
    L.entries.push_back({it->second, i, f});
  }
  // Nilpotency by repeated application to every basis vector.
  Integer maxpair = 0;
  for (const auto& p : pts) maxpair = std::max(maxpair, Integer(dot(p.coords, L.e_sigma.coords)));
  std::size_t bound = maxpair.get_ui() + 2;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    std::map<std::size_t, Integer> v{{j, Integer(1)}};
    std::size_t k = 0;
    while (!v.empty()) {
      std::map<std::size_t, Integer> w;
      for (const auto& e : L.entries) {
        auto it = v.find(e.from);
        if (it != v.end()) w[e.to] += e.factor * it->second;
      }
      std::erase_if(w, [](const auto& kv) { return kv.second == 0; });
      v = std::move(w);
      ++k;
      ensure(k <= bound, "vector field is not nilpotent within the expected order");
    }
    L.nilpotency_order = std::max(L.nilpotency_order, k);
  }
  return L;
}

// All facet-interior vector fields of a polytope, in lexicographic point order.
class SliceContext {
 public:
  explicit SliceContext(const ReflexivePolytope& R) : points_(lattice_points(R.base())) {
    auto skel = skeleton_points(R.base(), 2);
    std::set<ZVec> on_slice;
    for (const auto& p : skel) on_slice.insert(p.coords);
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (is_zero(points_[i].coords) || on_slice.count(points_[i].coords)) continue;
      off_.push_back(i);
      actions_.push_back(lie_action_matrix(R, points_[i]));
    }
    origin_ = 0;
    while (!is_zero(points_[origin_].coords)) ++origin_;
  }

  const std::vector<LatticeVector>& points() const { return points_; }
  const std::vector<std::size_t>& off_slice() const { return off_; }
  const std::vector<LieAction>& actions() const { return actions_; }
  std::size_t origin() const { return origin_; }

  SectionVector zero_section() const { return {points_, std::vector<Complex>(points_.size())}; }

  void check(const SectionVector& s) const {
    if (s.points != points_) throw InputError("section support differs from the polytope's lattice points");
    if (s.coeffs.size() != points_.size()) throw InputError("coefficient count mismatch");
  }

  double residual(const SectionVector& s) const {
    double r = 0;
    for (auto i : off_) r = std::max(r, std::abs(s.coeffs[i]));
    return r;
  }

  // X v with X = sum c_k L_k; fixed summation order.
  std::vector<Complex> apply_sum(const SliceExponent& X, const std::vector<Complex>& v) const {
    std::vector<Complex> out(v.size());
    for (std::size_t k = 0; k < actions_.size(); ++k) {
      if (X.c[k] == Complex(0)) continue;
      for (const auto& e : actions_[k].entries) out[e.to] += X.c[k] * e.factor.get_d() * v[e.from];
    }
    return out;
  }

  // exp(X) s by its Taylor series; the sum of the fields is not nilpotent in
  // general, so the series runs until the terms drop below rounding.
  SectionVector apply(const SliceExponent& X, const SectionVector& s) const {
    check(s);
    SectionVector out = s;
    std::vector<Complex> term = s.coeffs;
    double scale = 0;
    for (auto z : s.coeffs) scale = std::max(scale, std::abs(z));
    for (int k = 1; k <= 400; ++k) {
      term = apply_sum(X, term);
      double t = 0;
      for (auto& z : term) {
        z /= static_cast<double>(k);
        t = std::max(t, std::abs(z));
      }
      for (std::size_t i = 0; i < term.size(); ++i) out.coeffs[i] += term[i];
      if (t == 0 || t < 1e-18 * scale) return out;
    }
    throw InvariantError("exponential series did not converge");
  }

 private:
  std::vector<LatticeVector> points_;
  std::vector<std::size_t> off_;
  std::vector<LieAction> actions_;
  std::size_t origin_ = 0;
};

inline std::pair<SectionVector, SliceExponent> slice_step(const SliceContext& ctx, const SectionVector& s) {
  ctx.check(s);
  Complex psi = s.coeffs[ctx.origin()];
  if (psi == Complex(0)) throw PreconditionError("coefficient at the origin is zero");
  SliceExponent X;
  for (auto i : ctx.off_slice()) X.c.push_back(-s.coeffs[i] / psi);
  return {ctx.apply(X, s), X};
}

inline SectionVector replay(const SliceContext& ctx, const std::vector<SliceExponent>& record, SectionVector s) {
  for (const auto& X : record) s = ctx.apply(X, s);
  return s;
}

inline SliceResult slice_reduce(const SliceContext& ctx, const SectionVector& s, double tol, int max_iter) {
  ctx.check(s);
  Complex psi = s.coeffs[ctx.origin()];
  if (psi == Complex(0)) throw PreconditionError("coefficient at the origin is zero");
  double ratio = ctx.residual(s) / std::abs(psi);
  if (ratio >= 0.5) {
    std::ostringstream os;
    os << "section is too far from the large limit: max off-slice |a/psi| = " << ratio << " (must be < 0.5)";
    throw PreconditionError(os.str());
  }
  SliceResult res;
  res.section = s;
  res.trace.push_back(ctx.residual(s));
  for (int it = 0; res.trace.back() >= tol; ++it) {
    if (it == max_iter) {
      std::ostringstream os;
      os << "no convergence in " << max_iter << " iterations; residuals:";
      for (double r : res.trace) os << ' ' << r;
      throw SliceDivergence(os.str(), res.trace);
    }
    auto [next, X] = slice_step(ctx, res.section);
    res.section = std::move(next);
    res.record.push_back(std::move(X));
    res.trace.push_back(ctx.residual(res.section));
  }
  return res;
}

}  // namespace syz
