#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "syzmirror/corpus.hpp"
#include "syzmirror/io.hpp"
#include "syzmirror/svg.hpp"

using namespace syz;
using corpus::TriangleVariant;
using corpus::v;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t occurrences(const std::string& s, const std::string& needle) {
  std::size_t k = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++k;
  return k;
}

// Text round trip: dump, parse, read.
json reparse(const json& j) { return io::parse(j.dump(2)); }

}  // namespace

TEST(Io, ScalarsAndVectors) {
  EXPECT_EQ(io::of(Integer(-7)), json(-7));
  Integer big("123456789012345678901234567890");
  EXPECT_EQ(io::of(big), json("123456789012345678901234567890"));
  EXPECT_EQ(io::integer(io::of(big)), big);
  EXPECT_EQ(io::of(Rational(-3, 4)), json("-3/4"));
  EXPECT_EQ(io::rational(json(5)), Rational(5));
  EXPECT_EQ(io::rational(json("10/4")), Rational(5, 2));
  EXPECT_THROW(io::rational(json(0.5)), InputError);
  EXPECT_THROW(io::integer(json("1/2")), InputError);
  EXPECT_THROW(io::parse("{\"a\":"), InputError);
  EXPECT_THROW(io::zmat(json::parse("[[1,2],[3]]")), DimensionError);
}

TEST(Io, PolytopeAndPointsRoundTrip) {
  for (auto P : {corpus::quintic(), corpus::plane_cubic(), corpus::square(), corpus::quartic()}) {
    auto Q = io::read_polytope(reparse(io::of(P)));
    EXPECT_EQ(Q.vertices(), P.vertices());
    EXPECT_EQ(Q.side(), P.side());
    auto D = dual_polytope(P);
    EXPECT_EQ(io::read_polytope(reparse(io::of(D))).vertices(), D.vertices());
    auto pts = lattice_points(P);
    EXPECT_EQ(io::read_points(reparse(io::of(P.side(), pts))), pts);
  }
  // Non-lattice vertices are written as strings.
  auto R = Polytope::from_points(Side::M, {{Rational(1, 2), Rational(0)}, {Rational(-1), Rational(1)},
                                           {Rational(-1), Rational(-1)}});
  auto j = io::of(R);
  EXPECT_TRUE(j["vertices"][0][0].is_string() || j["vertices"][1][0].is_string() || j["vertices"][2][0].is_string());
  EXPECT_EQ(io::read_polytope(reparse(j)).vertices(), R.vertices());
  EXPECT_THROW(io::read_polytope(json::parse(R"({"side":"X","vertices":[[0,0]]})")), InputError);
  EXPECT_THROW(io::read_polytope(json::parse(R"({"side":"M","vertices":[[0,0],[1]]})")), DimensionError);
  EXPECT_THROW(io::read_polytope(json::parse(R"({"side":"M"})")), InputError);
}

TEST(Io, WeightsRoundTripAndKinds) {
  auto w = corpus::triangle_weights(TriangleVariant::DoubleFlip);
  auto back = io::read_weights(reparse(io::of(w)));
  EXPECT_EQ(back.points(), w.points());
  EXPECT_EQ(back.p_values(), w.p_values());
  auto j = io::of(w);
  j["kind"] = "p";
  EXPECT_EQ(io::read_weights(j).w(3), -w.w(3));
  j.erase("kind");
  EXPECT_EQ(io::read_weights(j).w(3), w.w(3));
  j["kind"] = "q";
  EXPECT_THROW(io::read_weights(j), InputError);
  j["kind"] = "w";
  j["values"].erase(0);
  EXPECT_THROW(io::read_weights(j), InputError);
}

TEST(Io, FanSubdivisionGraphRoundTrip) {
  ReflexivePolytope R(corpus::quartic());
  auto F = max_crepant_subdivision(normal_fan(R), R);
  auto G = io::read_fan(reparse(io::of(F)));
  EXPECT_EQ(G.rays, F.rays);
  EXPECT_EQ(G.cones, F.cones);
  EXPECT_EQ(G.all_cones, F.all_cones);
  auto S = subdivision_by_weights(corpus::triangle_weights(TriangleVariant::SingleFlip));
  auto S2 = io::read_subdivision(reparse(io::of(S)));
  EXPECT_EQ(io::of(S2), io::of(S));
  auto bad = io::of(S);
  bad["cells"].erase(0);
  EXPECT_THROW(io::read_subdivision(bad), InputError);
  auto g = gamma_graph(S);
  auto g2 = io::read_gamma(reparse(io::of(g)));
  EXPECT_EQ(io::of(g2), io::of(g));
  EXPECT_EQ(g2.first_betti(), 6);
  EXPECT_EQ(g2.adjacency, g.adjacency);
}

TEST(Io, OperatorSectionSliceAmoebaRoundTrip) {
  Loop l{v(Side::N, {1, 0, 0, 0}), v(Side::M, {-1, -1, 4, -1}), v(Side::N, {0, 1, 0, 0}), v(Side::M, {-1, -1, -1, 4})};
  for (const auto& T : {loop_monodromy(l), dual_loop_monodromy(l)}) {
    auto U = io::read_operator(reparse(io::of(T)));
    EXPECT_EQ(U.matrix, T.matrix);
    EXPECT_EQ(U.lattice.basis, T.lattice.basis);
    EXPECT_EQ(U.lattice.coordinate_map, T.lattice.coordinate_map);
    EXPECT_EQ(U.lattice.anchor, T.lattice.anchor);
    EXPECT_TRUE(U.loop.m2 == T.loop.m2 && U.loop.n == T.loop.n);
  }
  EXPECT_TRUE(verify_duality(io::read_operator(io::of(loop_monodromy(l))),
                             io::read_operator(io::of(dual_loop_monodromy(l)))));

  ReflexivePolytope R(corpus::plane_cubic());
  SliceContext ctx(R);
  auto s = ctx.zero_section();
  s.coeffs[ctx.origin()] = 1;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-0.04, 0.04);
  for (auto i : ctx.off_slice()) s.coeffs[i] = {u(rng), u(rng)};
  auto s2 = io::read_section(reparse(io::of(s)), ctx);
  EXPECT_EQ(s2.coeffs, s.coeffs);  // shortest round-trip doubles are exact
  auto r = slice_reduce(ctx, s, 1e-12, 30);
  auto r2 = io::read_slice_result(reparse(io::of(r)), ctx);
  EXPECT_EQ(r2.section.coeffs, r.section.coeffs);
  EXPECT_EQ(r2.trace, r.trace);
  ASSERT_EQ(r2.record.size(), r.record.size());
  for (std::size_t k = 0; k < r.record.size(); ++k) EXPECT_EQ(r2.record[k].c, r.record[k].c);
  // Sparse section input: unlisted points are zero, unknown points rejected.
  auto sparse = json::parse(R"({"side":"M","coeffs":[{"point":[0,0],"re":2,"im":0}]})");
  EXPECT_EQ(io::read_section(sparse, ctx).psi(), Complex(2));
  sparse["coeffs"].push_back({{"point", {5, 5}}, {"re", 1}, {"im", 0}});
  EXPECT_THROW(io::read_section(sparse, ctx), InputError);

  auto w = corpus::slack_weights(corpus::corner_triangle(2), lattice_points(corpus::corner_triangle(2)), 1, 0);
  auto a = amoeba_sample(w, std::vector<double>(w.size(), 0.3), 1.5, 50, 9);
  auto a2 = io::read_amoeba(reparse(io::of(a)));
  EXPECT_EQ(a2.points, a.points);
  EXPECT_EQ(a2.scale, a.scale);
  EXPECT_EQ(a2.seed, a.seed);
}

TEST(Io, JsonIsByteStable) {
  auto S = subdivision_by_weights(corpus::triangle_weights(TriangleVariant::Standard));
  auto a = io::of(gamma_graph(S)).dump(2), b = io::of(gamma_graph(S)).dump(2);
  EXPECT_EQ(a, b);
  // Keys are sorted.
  auto j = io::of(corpus::triangle_weights(TriangleVariant::Standard));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
}

TEST(Svg, UnitTriangleIsThreeDotsAndOneSpider) {
  auto w = WeightFunction::from_w(Side::M, {v(Side::M, {0, 0}), v(Side::M, {0, 1}), v(Side::M, {1, 0})},
                                  {Rational(0), Rational(0), Rational(0)});
  auto S = subdivision_by_weights(w);
  auto G = gamma_graph(S);
  auto svg = render_svg(S, &G);
  EXPECT_EQ(occurrences(svg, "<circle"), 3u);
  EXPECT_EQ(occurrences(svg, "<polyline"), 3u);
  EXPECT_EQ(occurrences(svg, "<line"), 3u);
  EXPECT_EQ(svg, render_svg(S, &G));
}

TEST(Svg, FigureStyleOutput) {
  auto S = subdivision_by_weights(corpus::triangle_weights(TriangleVariant::Standard));
  auto G = gamma_graph(S);
  auto svg = render_svg(S, &G);
  EXPECT_EQ(occurrences(svg, "<circle"), 21u);
  EXPECT_EQ(occurrences(svg, "<line"), 45u);
  EXPECT_EQ(occurrences(svg, "<polyline"), 75u);
  // Neighbouring lattice points sit 36 units apart along the bottom row.
  EXPECT_NE(svg.find("<circle cx=\"18.000\" cy=\"168.000\""), std::string::npos);
  EXPECT_NE(svg.find("<circle cx=\"54.000\" cy=\"168.000\""), std::string::npos);
  EXPECT_NE(svg.find("<circle cx=\"108.000\" cy=\"18.000\""), std::string::npos);
  EXPECT_EQ(render_svg(S), render_svg(S, nullptr));
  EXPECT_EQ(occurrences(render_svg(S), "<polyline"), 0u);
}

TEST(Svg, ParallelogramCellGivesFourValentVertex) {
  auto S = subdivision_by_weights(corpus::triangle_weights(TriangleVariant::Parallelogram));
  auto G = gamma_graph(S);
  std::size_t four = 0;
  for (std::size_t i = 0; i < G.vertices.size(); ++i) four += G.valence(i) == 4;
  EXPECT_EQ(four, 1u);
  EXPECT_EQ(G.first_betti(), 6);
  auto svg = render_svg(S, &G);
  EXPECT_EQ(occurrences(svg, "<line"), 44u);
  EXPECT_EQ(occurrences(svg, "<polyline"), G.edges.size());
}

TEST(Svg, RejectsOtherRanks) {
  auto w = corpus::skeleton_quadratic(corpus::quartic());
  auto S = subdivision_by_weights(w);
  EXPECT_THROW(render_svg(S), DimensionError);
  auto line = WeightFunction::from_w(Side::M, {v(Side::M, {0, 0}), v(Side::M, {1, 0}), v(Side::M, {2, 0})},
                                     {Rational(0), Rational(1), Rational(0)});
  EXPECT_THROW(render_svg(subdivision_by_weights(line)), DimensionError);
}

TEST(Svg, GoldenFigures) {
  const std::string dir = SYZ_GOLDEN_DIR;
  struct Case {
    const char* file;
    TriangleVariant variant;
    bool gamma;
  };
  for (auto c : {Case{"figure1.svg", TriangleVariant::Standard, false}, Case{"figure3.svg", TriangleVariant::Standard, true},
                 Case{"figure4.svg", TriangleVariant::SingleFlip, false},
                 Case{"figure5.svg", TriangleVariant::SingleFlip, true}}) {
    auto S = subdivision_by_weights(corpus::triangle_weights(c.variant));
    auto G = gamma_graph(S);
    auto golden = slurp(dir + "/" + c.file);
    ASSERT_FALSE(golden.empty()) << c.file;
    EXPECT_EQ(render_svg(S, c.gamma ? &G : nullptr), golden) << c.file;
  }
}
