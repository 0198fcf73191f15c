#pragma once

// Piecewise linear weights on lattice points: membership in the movable cone,
// PL extension, the weight polytope and strict convexity tests.

#include <cmath>
#include <complex>
#include <optional>

#include "syzmirror/polytope.hpp"
#include "syzmirror/subdivision.hpp"

namespace syz {

// Values are stored as p-values; the weight is w = -p.
class WeightFunction {
 public:
  WeightFunction() = default;
  WeightFunction(Side side, std::vector<LatticeVector> points, std::vector<Rational> p_values)
      : side_(side), points_(std::move(points)), p_(std::move(p_values)) {
    if (points_.size() != p_.size()) throw InputError("weight points and values differ in number");
    if (points_.empty()) throw InputError("weight function has an empty domain");
    for (const auto& x : points_) {
      if (x.side != side_) throw SideError("weight point on the wrong side");
      if (x.rank() != points_[0].rank()) throw DimensionError("weight points of different ranks");
    }
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (!index_.emplace(points_[i].coords, i).second) throw InputError("repeated weight point");
  }

  static WeightFunction from_w(Side side, std::vector<LatticeVector> points, const std::vector<Rational>& w) {
    std::vector<Rational> p;
    for (const auto& x : w) p.push_back(-x);
    return {side, std::move(points), std::move(p)};
  }

  Side side() const { return side_; }
  std::size_t rank() const { return points_.at(0).rank(); }
  std::size_t size() const { return points_.size(); }
  const std::vector<LatticeVector>& points() const { return points_; }
  const std::vector<Rational>& p_values() const { return p_; }
  Rational p(std::size_t i) const { return p_.at(i); }
  Rational w(std::size_t i) const { return -p_.at(i); }

  std::optional<std::size_t> index_of(const ZVec& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Rational> w_at(const ZVec& x) const {
    auto i = index_of(x);
    if (!i) return std::nullopt;
    return w(*i);
  }

  // Restriction to the points satisfying pred.
  template <class Pred>
  WeightFunction restrict_to(Pred pred) const {
    std::vector<LatticeVector> pts;
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (pred(points_[i])) pts.push_back(points_[i]), vals.push_back(p_[i]);
    return {side_, pts, vals};
  }

 private:
  Side side_ = Side::M;
  std::vector<LatticeVector> points_;
  std::vector<Rational> p_;
  std::map<ZVec, std::size_t> index_;
};

// Halfspaces <e, x> >= p(e) on the opposite side.
inline std::vector<Halfspace> weight_halfspaces(const WeightFunction& w) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < w.size(); ++i) hs.push_back({w.points()[i].coords, w.p(i)});
  return hs;
}

// {x : <e, x> >= p(e) for all domain points e}; requires p < 0 so the origin is interior.
inline Polytope weight_polytope(const WeightFunction& w) {
  for (const auto& p : w.p_values())
    if (p >= 0) throw PreconditionError("weight polytope needs every p-value negative");
  return {opposite(w.side()), ConvexPolytope::from_halfspaces(weight_halfspaces(w), w.rank())};
}

struct MovableReport {
  bool member = false;
  bool integral_witnesses = true;
  std::vector<std::optional<QVec>> witnesses;  // per domain point, a vertex of the weight polytope
  std::vector<std::size_t> unsupported;
};

// Every checked domain point e has a witness x with <e,x> = p(e) and
// <e',x> >= p(e') for all e'. With skeleton_only, only points of the
// (rank-2)-skeleton of `domain` are checked.
inline MovableReport movable_cone_member(const WeightFunction& w, bool skeleton_only = false,
                                         const Polytope* domain = nullptr) {
  if (skeleton_only && !domain) throw InputError("skeleton restriction needs the domain polytope");
  MovableReport rep;
  rep.witnesses.resize(w.size());
  ConvexPolytope P;
  try {
    P = ConvexPolytope::from_halfspaces(weight_halfspaces(w), w.rank());
  } catch (const PreconditionError&) {
    for (std::size_t i = 0; i < w.size(); ++i) rep.unsupported.push_back(i);
    return rep;
  }
  long top = static_cast<long>(w.rank()) - 2;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (skeleton_only && domain->carrier_dim(to_q(w.points()[i].coords)) > top) continue;
    const ZVec& e = w.points()[i].coords;
    std::optional<Rational> best;
    std::size_t arg = 0;
    for (std::size_t v = 0; v < P.vertices().size(); ++v) {
      Rational val = dot(e, P.vertices()[v]);
      if (!best || val < *best) best = val, arg = v;
    }
    if (best && *best == w.p(i)) {
      rep.witnesses[i] = P.vertices()[arg];
      if (!is_integral(P.vertices()[arg])) rep.integral_witnesses = false;
    } else {
      rep.unsupported.push_back(i);
    }
  }
  rep.member = rep.unsupported.empty();
  return rep;
}

// The PL function min_{x in weight polytope} <n, x>.
inline Rational extend_pl(const WeightFunction& w, const LatticeVector& n) {
  if (n.side != w.side()) throw SideError("extension point on the wrong side");
  if (n.rank() != w.rank()) throw DimensionError("extension point of wrong rank");
  auto rep = movable_cone_member(w);
  if (!rep.member) throw NotMovableError("weights are not in the movable cone");
  auto P = ConvexPolytope::from_halfspaces(weight_halfspaces(w), w.rank());
  std::optional<Rational> best;
  for (const auto& v : P.vertices()) {
    Rational val = dot(n.coords, v);
    if (!best || val < *best) best = val;
  }
  return *best;
}

inline RegularSubdivision subdivision_by_weights(const WeightFunction& w) {
  std::vector<QVec> pts;
  std::vector<Rational> hs;
  for (std::size_t i = 0; i < w.size(); ++i) {
    pts.push_back(to_q(w.points()[i].coords));
    hs.push_back(w.w(i));
  }
  return RegularSubdivision::compute(pts, hs);
}

struct ConvexityReport {
  bool convex = false;
  std::optional<std::size_t> violating;  // first domain point that is not a vertex
  // Per domain point: affine function (chart coordinates) equal to w there and
  // strictly below w at every other domain point.
  std::vector<ChartAffine> witnesses;
};

// Strict convexity: each lifted point (m, w_m) is a vertex of the lower hull.
inline ConvexityReport convexity_report(const WeightFunction& w) {
  ConvexityReport rep;
  auto S = subdivision_by_weights(w);
  std::set<std::size_t> verts;
  for (auto c : S.cells_of_dim(0)) verts.insert(S.cells()[c].points[0]);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!verts.count(i)) {
      rep.violating = i;
      return rep;
    }
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto g = S.strict_support(i);
    if (!g) throw InvariantError("convexity witness is not strict");
    rep.witnesses.push_back(*g);
  }
  rep.convex = true;
  return rep;
}

inline bool convex_on_polygon(const WeightFunction& w) { return convexity_report(w).convex; }

// Best rational approximation with denominator <= max_den (continued fractions).
inline Rational snap_rational(double x, long long max_den = 1000000) {
  if (!std::isfinite(x)) throw InputError("cannot snap a non-finite value");
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    long long ai = static_cast<long long>(a);
    long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    double frac = r - a;
    if (frac < 1e-12) break;
    r = 1.0 / frac;
  }
  return make_rational(Integer(static_cast<long>(h1)), Integer(static_cast<long>(k1)));
}

struct NearLimitReport {
  bool near_limit = false;
  bool convex = false;
  bool above_threshold = false;
  Rational min_weight;
  WeightFunction weights;
  std::vector<std::size_t> nonconvex_faces;  // faces of P where strict convexity fails
};

// Coefficients a_m on lattice points of a reflexive P with rank >= 3. Weights
// w_m = -log|a_m| are snapped to rationals; the family is near the large
// limit when the weights are strictly convex on every face of dimension
// rank-2 and every weight is at least `threshold`.
inline NearLimitReport near_large_limit_check(const Polytope& P,
                                              const std::vector<std::pair<LatticeVector, std::complex<double>>>& a,
                                              double threshold) {
  if (P.rank() < 3) throw PreconditionError("large limit check needs rank at least 3");
  NearLimitReport rep;
  std::vector<LatticeVector> pts;
  std::vector<Rational> wv;
  for (const auto& [m, c] : a) {
    P.check(m);
    if (std::abs(c) == 0) throw PreconditionError("zero coefficient has no weight");
    pts.push_back(m);
    wv.push_back(snap_rational(-std::log(std::abs(c))));
  }
  rep.weights = WeightFunction::from_w(P.side(), pts, wv);
  rep.min_weight = *std::min_element(wv.begin(), wv.end());
  rep.above_threshold = rep.min_weight.get_d() >= threshold;
  rep.convex = true;
  long d = static_cast<long>(P.rank()) - 2;
  for (std::size_t f = 0; f < P.faces().size(); ++f) {
    if (P.faces()[f].dim != d) continue;
    auto face = ConvexPolytope::from_points(P.hull().face_points(f));
    auto local = rep.weights.restrict_to([&](const LatticeVector& m) { return face.contains(to_q(m.coords)); });
    std::size_t expected = lattice_points(Polytope(P.side(), face)).size();
    if (local.size() != expected) throw InputError("coefficients missing on a face of dimension rank-2");
    if (!convex_on_polygon(local)) {
      rep.convex = false;
      rep.nonconvex_faces.push_back(f);
    }
  }
  rep.near_limit = rep.convex && rep.above_threshold;
  return rep;
}

}  // namespace syz
