#include <gtest/gtest.h>

#include <random>

#include "syzmirror/corpus.hpp"
#include "syzmirror/slicing.hpp"

using namespace syz;
using corpus::v;

namespace {

SectionVector random_section(const SliceContext& ctx, double mag, unsigned seed, Complex psi = 1) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ph(0, 2 * M_PI);
  auto s = ctx.zero_section();
  s.coeffs[ctx.origin()] = psi;
  for (auto i : ctx.off_slice()) s.coeffs[i] = std::polar(mag, ph(rng));
  return s;
}

double rel_diff(const SectionVector& a, const SectionVector& b) {
  double d = 0, n = 0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    d = std::max(d, std::abs(a.coeffs[i] - b.coeffs[i]));
    n = std::max(n, std::abs(b.coeffs[i]));
  }
  return d / n;
}

}  // namespace

TEST(Slicing, LieActionEntries) {
  ReflexivePolytope R(corpus::plane_cubic());
  auto pts = lattice_points(R.base());
  auto at = [&](long x, long y) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i].coords == ZVec{Integer(x), Integer(y)}) return i;
    return pts.size();
  };
  auto L = lie_action_matrix(R, v(Side::M, {-1, 0}));
  EXPECT_EQ(L.e_sigma.coords, (ZVec{Integer(1), Integer(0)}));
  std::map<std::pair<std::size_t, std::size_t>, Integer> e;
  for (const auto& x : L.entries) e[{x.to, x.from}] = x.factor;
  EXPECT_EQ(e[std::make_pair(at(-1, 0), at(0, 0))], 1);    // s_0 -> s_m
  EXPECT_EQ(e[std::make_pair(at(1, -1), at(2, -1))], 3);   // <(2,-1),e>+1
  EXPECT_FALSE(e.count(std::make_pair(at(-2, 1), at(-1, 1))));  // factor 0 on the facet itself
  for (const auto& x : L.entries) EXPECT_NE(dot(pts[x.from].coords, L.e_sigma.coords), -1);
  EXPECT_LE(L.nilpotency_order, 4u);
  EXPECT_THROW(lie_action_matrix(R, v(Side::M, {-1, -1})), PreconditionError);
  EXPECT_THROW(lie_action_matrix(R, v(Side::M, {0, 0})), PreconditionError);
}

TEST(Slicing, NilpotencyOnTheCorpus) {
  for (auto P : {corpus::plane_cubic(), corpus::quartic(), corpus::quintic()}) {
    ReflexivePolytope R(P);
    SliceContext ctx(R);
    for (const auto& L : ctx.actions()) {
      Integer maxpair = 0;
      for (const auto& p : ctx.points()) maxpair = std::max(maxpair, Integer(dot(p.coords, L.e_sigma.coords)));
      EXPECT_LE(L.nilpotency_order, maxpair.get_ui() + 2);
      EXPECT_GE(L.nilpotency_order, 2u);
    }
  }
  EXPECT_EQ(SliceContext(ReflexivePolytope(corpus::quintic())).off_slice().size(), 20u);
  EXPECT_EQ(SliceContext(ReflexivePolytope(corpus::plane_cubic())).off_slice().size(), 6u);
}

TEST(Slicing, OnSliceInputIsFixed) {
  ReflexivePolytope R(corpus::plane_cubic());
  SliceContext ctx(R);
  auto s = ctx.zero_section();
  s.coeffs[ctx.origin()] = 2.0;
  s.coeffs[0] = Complex(0.3, 0.1);
  auto r = slice_reduce(ctx, s, 1e-12, 30);
  EXPECT_TRUE(r.record.empty());
  EXPECT_EQ(r.section.coeffs, s.coeffs);
  auto [t, X] = slice_step(ctx, s);
  EXPECT_EQ(t.coeffs, s.coeffs);
  for (auto c : X.c) EXPECT_EQ(c, Complex(0));
}

TEST(Slicing, SingleCoefficientIsRemovedExactly) {
  // exp(-a L_m) kills a s_m against psi s_0 with nothing left over, since L_m s_m = 0.
  ReflexivePolytope R(corpus::plane_cubic());
  SliceContext ctx(R);
  for (double a : {0.1, 0.01}) {
    auto s = ctx.zero_section();
    s.coeffs[ctx.origin()] = 1;
    s.coeffs[ctx.off_slice()[2]] = a;
    auto [t, X] = slice_step(ctx, s);
    EXPECT_LE(ctx.residual(t), 1e-17);
  }
  // All six at once: quadratic remainder, measured constant about 1.5.
  for (double a : {0.05, 0.01, 0.001}) {
    auto s = ctx.zero_section();
    s.coeffs[ctx.origin()] = 1;
    for (auto i : ctx.off_slice()) s.coeffs[i] = a;
    auto [t, X] = slice_step(ctx, s);
    EXPECT_LE(ctx.residual(t), 1.6 * a * a);
  }
}

TEST(Slicing, LargePsiLeavesInverseOrderRemainder) {
  ReflexivePolytope R(corpus::plane_cubic());
  SliceContext ctx(R);
  // residual * psi measured over 200 phase draws: at most 2.50 (psi 10), 1.59 (psi 100).
  std::vector<double> res;
  for (double psi : {10.0, 100.0}) {
    auto s = random_section(ctx, 1.0, 3, psi);
    auto [t, X] = slice_step(ctx, s);
    EXPECT_LE(ctx.residual(t) * psi, 3.0);
    res.push_back(ctx.residual(t));
  }
  EXPECT_GE(res[0] / res[1], 5.0);
}

TEST(Slicing, CubicConvergesGeometrically) {
  ReflexivePolytope R(corpus::plane_cubic());
  SliceContext ctx(R);
  auto s = random_section(ctx, 0.05, 7);
  auto r = slice_reduce(ctx, s, 1e-12, 30);
  EXPECT_LT(r.trace.back(), 1e-12);
  EXPECT_LE(r.record.size(), 30u);
  for (std::size_t k = 1; k < r.trace.size(); ++k) EXPECT_LE(r.trace[k] / r.trace[k - 1], 0.1);
  EXPECT_LE(rel_diff(replay(ctx, r.record, s), r.section), 1e-10);
  // Recomputing a step from the stored exponent is bit-identical.
  auto [t, X] = slice_step(ctx, s);
  EXPECT_EQ(ctx.apply(X, s).coeffs, t.coeffs);
}

TEST(Slicing, QuinticDeskInstance) {
  ReflexivePolytope R(corpus::quintic());
  SliceContext ctx(R);
  EXPECT_EQ(ctx.points().size(), 126u);
  auto s = random_section(ctx, 0.01, 2);
  auto r = slice_reduce(ctx, s, 1e-12, 30);
  EXPECT_LT(r.record.size(), 30u);
  EXPECT_LE(rel_diff(replay(ctx, r.record, s), r.section), 1e-10);
}

TEST(Slicing, Guards) {
  ReflexivePolytope R(corpus::plane_cubic());
  SliceContext ctx(R);
  EXPECT_THROW(slice_reduce(ctx, random_section(ctx, 0.6, 1), 1e-12, 30), PreconditionError);
  EXPECT_THROW(slice_step(ctx, random_section(ctx, 0.1, 1, 0.0)), PreconditionError);
  try {
    slice_reduce(ctx, random_section(ctx, 0.05, 1), 1e-12, 1);
    FAIL();
  } catch (const SliceDivergence& e) {
    EXPECT_EQ(e.trace().size(), 2u);
  }
}
