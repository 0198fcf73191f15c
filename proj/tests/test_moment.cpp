#include <gtest/gtest.h>

#include "syzmirror/corpus.hpp"
#include "syzmirror/moment.hpp"

using namespace syz;
using corpus::v;

namespace {

WeightFunction quadratic() {
  auto P = corpus::corner_triangle(5);
  return corpus::slack_weights(P, lattice_points(P), 1, 0);
}

std::vector<double> random_phases(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ph(0, 2 * M_PI);
  std::vector<double> out(n);
  for (auto& x : out) x = ph(rng);
  return out;
}

double mean_distance(const AmoebaSample& s, const GammaGraph& g) {
  double t = 0;
  for (const auto& p : s.points) t += distance_to_graph(p, g);
  return t / static_cast<double>(s.points.size());
}

}  // namespace

TEST(Moment, SinglePointAndSymmetry) {
  auto one = WeightFunction::from_w(Side::M, {v(Side::M, {2, 3})}, {Rational(5)});
  auto F = moment_eval(one.points(), one, {{0.7, -3.0}, {0, 0}});
  EXPECT_EQ(F, (std::vector<double>{2, 3}));
  auto tri = WeightFunction::from_w(Side::M, {v(Side::M, {0, 0}), v(Side::M, {1, 0}), v(Side::M, {0, 1})},
                                    {Rational(0), Rational(0), Rational(0)});
  auto G = moment_eval(tri.points(), tri, {{0, 0}, {0, 0}});
  EXPECT_NEAR(G[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(G[1], 1.0 / 3, 1e-15);
  EXPECT_THROW(moment_eval({v(Side::M, {9, 9})}, tri, {{0, 0}, {0, 0}}), InputError);
}

TEST(Moment, ConvexCombinationAndAngleIndependence) {
  auto w = corpus::triangle_weights(corpus::TriangleVariant::Standard);
  auto M = MomentMap::of(w);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-200, 200);
  for (int k = 0; k < 10000; ++k) {
    std::vector<double> x{u(rng), u(rng)};
    auto r = M.rho(x);
    double s = 0;
    for (double p : r) {
      EXPECT_GE(p, 0.0);
      s += p;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
    auto F = M.eval(x);
    EXPECT_GE(F[0], -1e-9);
    EXPECT_GE(F[1], -1e-9);
    EXPECT_LE(F[0] + F[1], 5 + 1e-9);
  }
  TorusPoint a{{0.3, -0.2}, {0, 0}}, b{{0.3, -0.2}, {1.1, 2.9}};
  EXPECT_EQ(moment_eval(w.points(), w, a), moment_eval(w.points(), w, b));
}

TEST(Moment, RhoArgmaxLandsOnEachPoint) {
  auto M = MomentMap::of(corpus::triangle_weights(corpus::TriangleVariant::Standard));
  ASSERT_EQ(M.size(), 21u);
  for (std::size_t i = 0; i < M.size(); ++i) {
    auto a = rho_argmax(M, i);
    EXPECT_LT(std::hypot(a.F[0] - M.points()[i][0], a.F[1] - M.points()[i][1]), 1e-3) << i;
  }
}

TEST(Moment, LineAmoebaStaysInside) {
  auto tri = WeightFunction::from_w(Side::M, {v(Side::M, {0, 0}), v(Side::M, {1, 0}), v(Side::M, {0, 1})},
                                    {Rational(0), Rational(0), Rational(0)});
  auto s = amoeba_sample(tri, {0, 1, 2}, 1, 500, 3);
  ASSERT_EQ(s.points.size(), 500u);
  for (const auto& p : s.points) {
    EXPECT_GE(p[0], -1e-9);
    EXPECT_GE(p[1], -1e-9);
    EXPECT_LE(p[0] + p[1], 1 + 1e-9);
  }
  auto G = gamma_graph(subdivision_by_weights(tri));
  EXPECT_LT(fattening_distance(s.points, G).max_dist, std::sqrt(2.0));
}

TEST(Moment, GraphVerticesHaveZeroDistance) {
  auto G = gamma_graph(subdivision_by_weights(quadratic()));
  std::vector<std::array<double, 2>> pts;
  for (const auto& x : G.vertices) pts.push_back({x.coords[0].get_d(), x.coords[1].get_d()});
  auto r = fattening_distance(pts, G);
  EXPECT_EQ(r.max_dist, 0.0);
  EXPECT_EQ(r.histogram[0], pts.size());
  EXPECT_THROW(fattening_distance({}, G), InputError);
}

TEST(Moment, FatteningShrinksWithScale) {
  auto w = quadratic();
  auto G = gamma_graph(subdivision_by_weights(w));
  auto ph = random_phases(w.size(), 99);
  double prev = INFINITY;
  for (double t : {1.0, 2.0, 4.0}) {
    auto s = amoeba_sample(w, ph, t, 5000, 1);
    ASSERT_EQ(s.points.size(), 5000u);
    double d = fattening_distance(s.points, G).max_dist;
    EXPECT_LT(d, prev) << "t=" << t;
    prev = d;
  }
}

TEST(Moment, PhasesDoNotChangeDistanceStatistics) {
  auto w = quadratic();
  auto G = gamma_graph(subdivision_by_weights(w));
  double a = mean_distance(amoeba_sample(w, random_phases(w.size(), 1), 2, 3000, 5), G);
  double b = mean_distance(amoeba_sample(w, random_phases(w.size(), 2), 2, 3000, 5), G);
  EXPECT_LT(std::abs(a - b) / a, 0.10);
}

TEST(Moment, DeterministicPerSeedAndCoefficientCheck) {
  auto w = quadratic();
  auto ph = random_phases(w.size(), 8);
  auto s1 = amoeba_sample(w, ph, 1, 300, 42);
  auto s2 = amoeba_sample(w, ph, 1, 300, 42);
  EXPECT_EQ(s1.points, s2.points);
  std::vector<std::complex<double>> a;
  for (std::size_t i = 0; i < w.size(); ++i) a.push_back(std::polar(std::exp(-w.w(i).get_d()), ph[i]));
  auto back = coefficient_phases(w, a, 1);
  for (std::size_t i = 0; i < ph.size(); ++i) EXPECT_NEAR(std::remainder(back[i] - ph[i], 2 * M_PI), 0, 1e-12);
  a[3] *= 2;
  EXPECT_THROW(coefficient_phases(w, a, 1), PreconditionError);
}
