// Acceptance run: one PASS/FAIL line per criterion with its wall time.
// Usage: acceptance [--golden DIR] [--cli PATH --data DIR]

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "syzmirror/corpus.hpp"
#include "syzmirror/io.hpp"
#include "syzmirror/svg.hpp"

using namespace syz;
using corpus::TriangleVariant;
using corpus::v;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Checker {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && out_.ok) out_ = {false, what};
  }
  Outcome result(std::string detail) {
    if (out_.ok) out_.detail = std::move(detail);
    return out_;
  }

 private:
  Outcome out_;
};

// ---- oracles -------------------------------------------------------------

std::size_t rank_q(QMat a) {
  std::size_t r = 0;
  for (std::size_t c = 0; !a.empty() && c < a[0].size() && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

Rational dotq(const ZVec& a, const ZVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void box(std::size_t r, long lo, long hi, const std::function<void(const ZVec&)>& f) {
  ZVec x(r, Integer(lo));
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < r && x[i] == hi) x[i++] = lo;
    if (i == r) return;
    x[i] += 1;
  }
}

// Dual vertices of a reflexive polytope with integral vertices: integer points
// n of a box with <m,n> >= -1 for every vertex m whose tight set has full rank.
std::vector<ZVec> dual_vertices_oracle(const std::vector<ZVec>& verts, long bound) {
  std::size_t r = verts[0].size();
  std::vector<ZVec> out;
  box(r, -bound, bound, [&](const ZVec& n) {
    QMat tight;
    for (const auto& m : verts) {
      Rational p = dotq(m, n);
      if (p < -1) return;
      if (p == -1) tight.push_back(to_q(m));
    }
    if (rank_q(tight) == r) out.push_back(n);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ZVec> integral_vertices(const Polytope& P) {
  std::vector<ZVec> out;
  for (const auto& x : P.vertices()) out.push_back(to_z(x));
  std::sort(out.begin(), out.end());
  return out;
}

// Lattice points of a reflexive polytope by box scan against its dual vertices.
std::vector<ZVec> points_oracle(const std::vector<ZVec>& dual_verts, std::size_t r, long bound) {
  std::vector<ZVec> out;
  box(r, -bound, bound, [&](const ZVec& m) {
    for (const auto& n : dual_verts)
      if (dotq(m, n) < -1) return;
    out.push_back(m);
  });
  return out;
}

std::size_t tight_count(const ZVec& m, const std::vector<ZVec>& dual_verts) {
  std::size_t k = 0;
  for (const auto& n : dual_verts) k += dotq(m, n) == -1;
  return k;
}

ZMat matmul(const ZMat& a, const ZMat& b) {
  ZMat c(a.size(), ZVec(b[0].size(), Integer(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

ZMat eye(std::size_t n) {
  ZMat a(n, ZVec(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

Rational det_q(QMat a) {
  Rational d = 1;
  std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) std::swap(a[p], a[c]), d = -d;
    d *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

// Image of basis vector x under the two transfers, written in quotient
// coordinates by solving x = sum c_i basis_i + t n.
ZMat transfer_oracle(const Loop& l, const SublatticeBasis& Q) {
  std::size_t k = Q.rank(), r = l.n.rank();
  QMat A;  // columns: basis vectors then n
  for (std::size_t i = 0; i < r; ++i) {
    QVec row;
    for (std::size_t j = 0; j < k; ++j) row.push_back(Q.basis[j][i]);
    row.push_back(l.n.coords[i]);
    A.push_back(row);
  }
  ZMat t(k, ZVec(k));
  for (std::size_t j = 0; j < k; ++j) {
    ZVec x = Q.basis[j];
    Integer a = 0, b = 0;
    for (std::size_t i = 0; i < r; ++i) a += l.m.coords[i] * x[i];
    for (std::size_t i = 0; i < r; ++i) x[i] += a * l.n.coords[i];
    for (std::size_t i = 0; i < r; ++i) b += l.m2.coords[i] * x[i];
    for (std::size_t i = 0; i < r; ++i) x[i] += b * l.n2.coords[i];
    // Cramer's rule on the square system A c = x.
    Rational D = det_q(A);
    for (std::size_t i = 0; i < k; ++i) {
      QMat Ai = A;
      for (std::size_t p = 0; p < r; ++p) Ai[p][i] = x[p];
      Rational c = det_q(Ai) / D;
      if (c.get_den() != 1) throw InvariantError("oracle produced a non-integral coordinate");
      t[i][j] = c.get_num();
    }
  }
  return t;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  status = pclose(p);
  return out;
}

std::vector<Polytope> reflexive_corpus() {
  return {corpus::plane_cubic(), corpus::square(), corpus::quartic(), corpus::quintic()};
}

// ---- criteria ------------------------------------------------------------

Outcome reflexive_duality() {
  Checker c;
  auto q = corpus::quintic();
  auto qd = dual_polytope(q);
  std::vector<ZVec> expect{{-1, -1, -1, -1}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
  c.require(integral_vertices(qd) == expect, "quintic dual vertices");
  c.require(dual_vertices_oracle(integral_vertices(q), 2) == expect, "oracle disagrees on the quintic dual");
  for (const auto& P : reflexive_corpus()) {
    auto D = dual_polytope(P);
    c.require(is_integral(D.vertices().front()) && integral_vertices(D) == dual_vertices_oracle(integral_vertices(P), 3),
              "dual differs from the oracle");
    c.require(dual_polytope(D).vertices() == P.vertices(), "dual of dual is not the identity");
  }
  return c.result("quintic dual = {e1..e4, -(1,1,1,1)}; dual-dual = id on 4 polytopes");
}

Outcome lattice_counts() {
  Checker c;
  auto q = corpus::quintic();
  auto qv = integral_vertices(q), dv = integral_vertices(dual_polytope(q));
  auto pts = points_oracle(dv, 4, 5);
  auto dpts = points_oracle(qv, 4, 2);
  std::size_t skel = 0;
  for (const auto& m : pts) skel += tight_count(m, dv) >= 2;  // simplex: face dim = 4 - #tight
  c.require(pts.size() == 126 && lattice_points(q).size() == 126, "quintic point count");
  c.require(dpts.size() == 6 && lattice_points(dual_polytope(q)).size() == 6, "dual point count");
  c.require(skel == 105 && skeleton_points(q, 2).size() == 105, "codimension-2 skeleton count");
  std::size_t tri = 0, inner = 0;
  for (long i = 0; i <= 5; ++i)
    for (long j = 0; j <= 5; ++j)
      if (i + j <= 5) ++tri, inner += i > 0 && j > 0 && i + j < 5;
  auto T = corpus::corner_triangle(5);
  c.require(tri == 21 && lattice_points(T).size() == 21, "triangle point count");
  c.require(inner == 6 && interior_lattice_points(T).size() == 6, "triangle interior count");
  std::vector<ZVec> lib;
  for (const auto& p : lattice_points(q)) lib.push_back(p.coords);
  std::sort(pts.begin(), pts.end());
  c.require(lib == pts, "quintic point sets differ");
  return c.result("126 / 6 / 105; 21 with 6 interior");
}

Outcome sum_property() {
  Checker c;
  std::size_t pairs = 0, bad = 0;
  std::vector<Polytope> all;
  for (const auto& P : reflexive_corpus()) all.push_back(P), all.push_back(dual_polytope(P));
  for (const auto& P : all) {
    auto dv = integral_vertices(dual_polytope(P));
    auto pts = boundary_lattice_points(P);
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        bool common = false, inside = true;
        ZVec s = add(pts[a].coords, pts[b].coords);
        for (const auto& n : dv) {
          common = common || (dotq(pts[a].coords, n) == -1 && dotq(pts[b].coords, n) == -1);
          inside = inside && dotq(s, n) >= -1;
        }
        c.require(common == !share_no_face(P, pts[a], pts[b]), "face-sharing test differs from the oracle");
        c.require(inside == sum_in_polytope_check(P, pts[a], pts[b]), "sum test differs from the oracle");
        if (common) continue;
        ++pairs;
        bad += !inside;
      }
  }
  c.require(bad == 0, std::to_string(bad) + " counterexamples");
  c.require(pairs > 0, "no pairs checked");
  return c.result(std::to_string(pairs) + " pairs without a common face, 0 counterexamples");
}

Outcome gamma_combinatorics() {
  Checker c;
  std::string detail;
  for (auto var : {TriangleVariant::Standard, TriangleVariant::SingleFlip, TriangleVariant::DoubleFlip}) {
    auto S = subdivision_by_weights(corpus::triangle_weights(var));
    auto G = gamma_graph(S);
    std::size_t tri = 0;
    for (std::size_t i = 0; i < G.vertices.size(); ++i) tri += G.vertices[i].kind == GammaVertex::Kind::CellBarycenter && G.valence(i) == 3;
    // Euler characteristic from scratch: b1 = E - V + components.
    std::vector<std::size_t> parent(G.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& e : G.edges) parent[find(e[0])] = find(e[1]);
    long comps = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) comps += find(i) == i;
    long b1 = static_cast<long>(G.edges.size()) - static_cast<long>(G.vertices.size()) + comps;
    c.require(S.top_cells().size() == 25, "cell count");
    c.require(tri == 25, "trivalent vertex count");
    c.require(G.edges.size() == 75, "edge count");
    c.require(b1 == 6 && G.first_betti() == 6, "first Betti number");
  }
  return c.result("25 cells, 25 trivalent vertices, 75 edges, b1 = 6 for three weight variants");
}

Outcome monodromy_loops() {
  Checker c;
  ReflexivePolytope R(corpus::quintic());
  auto ns = boundary_lattice_points(R.dual());
  auto ms = lattice_points(R.base());
  std::mt19937 rng(2024);
  int done = 0;
  while (done < 100) {
    const auto& n = ns[rng() % ns.size()];
    const auto& n2 = ns[rng() % ns.size()];
    if (n == n2) continue;
    std::vector<LatticeVector> ok;
    for (const auto& m : ms)
      if (pair(m, n) == -1 && pair(m, n2) == -1) ok.push_back(m);
    if (ok.empty()) continue;
    Loop l{n, ok[rng() % ok.size()], n2, ok[rng() % ok.size()]};
    auto T = loop_monodromy(l);
    c.require(T.matrix == transfer_oracle(l, T.lattice), "closed formula differs from the transfers");
    c.require(det_q(to_q(T.matrix)) == 1, "determinant is not 1");
    ZMat d = T.matrix;
    for (std::size_t i = 0; i < d.size(); ++i) d[i][i] -= 1;
    c.require(matmul(d, d) == ZMat(3, ZVec(3, Integer(0))), "(T - I)^2 is not zero");
    auto D = dual_loop_monodromy(l);
    c.require(verify_duality(T, D), "pairing not preserved");
    // Pairing preservation on raw lifts: <D y, T x> = <y, x> modulo the anchor.
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        ZVec Ty(4, Integer(0)), Dy(4, Integer(0));
        for (std::size_t k = 0; k < 3; ++k)
          for (std::size_t p = 0; p < 4; ++p) {
            Ty[p] += T.matrix[k][j] * T.lattice.basis[k][p];
            Dy[p] += D.matrix[k][i] * D.lattice.basis[k][p];
          }
        c.require(dotq(Dy, Ty) == dotq(D.lattice.basis[i], T.lattice.basis[j]), "raw pairing changed");
      }
    ++done;
  }
  return c.result("100 loops: formula = transfers, det 1, (T-I)^2 = 0, duality exact");
}

ZMat Z3(std::initializer_list<std::initializer_list<long>> rows) {
  ZMat out;
  for (auto r : rows) {
    ZVec x;
    for (auto a : r) x.push_back(Integer(a));
    out.push_back(x);
  }
  return out;
}

Outcome matrix_identities() {
  Checker c;
  auto t1 = Z3({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), t2 = Z3({{1, 0, -1}, {0, 1, 0}, {0, 0, 1}}),
       t3 = Z3({{1, -1, 1}, {0, 1, 0}, {0, 0, 1}});
  auto s1 = Z3({{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}), s2 = Z3({{1, 0, 0}, {0, 1, 0}, {-1, 0, 1}}),
       s3 = Z3({{1, 0, 0}, {-1, 1, 0}, {1, 0, 1}});
  c.require(matmul(matmul(t1, t2), t3) == eye(3), "type II triple product");
  c.require(matmul(matmul(s1, s2), s3) == eye(3), "type III triple product");
  c.require(classify_vertex(t1, t2, t3) == VertexClass::II, "type II classification");
  c.require(classify_vertex(s1, s2, s3) == VertexClass::III, "type III classification");
  Loop l{v(Side::N, {1, 0, 0, 0}), v(Side::M, {-1, -1, -1, 3}), v(Side::N, {0, 1, 0, 0}), v(Side::M, {-1, -1, 0, 3})};
  c.require(loop_monodromy(l).matrix == t1, "type I matrix not reproduced");
  return c.result("products = I; classes II and III; type I reproduced");
}

Outcome phi_map() {
  Checker c;
  ReflexivePolytope R(corpus::quintic());
  auto w = corpus::skeleton_quadratic(R.base());
  auto vv = corpus::anticanonical(R.dual());
  BaseComplex B(R, w, vv);
  BaseComplex M = B.mirror();
  std::set<std::size_t> image;
  for (std::size_t i = 0; i < M.cells().size(); ++i) {
    auto j = M.partner(i, B);
    image.insert(j);
    c.require(B.partner(j, M) == i, "partner is not an involution");
    c.require(B.cells()[j].dim == M.cells()[i].mirror_dim, "partner dimension");
  }
  c.require(image.size() == B.cells().size() && M.cells().size() == B.cells().size(), "partner is not a bijection");
  std::mt19937_64 rng(2025);
  for (int k = 0; k < 1000; ++k) {
    QVec b = M.random_point(rng);
    c.require(phi_apply(B, M, phi_apply(M, B, b)) == b, "round trip failed");
  }
  auto L = build_locus(R, w, vv);
  ReflexivePolytope D(R.dual());
  auto Lm = build_locus(D, vv, w);
  std::set<std::size_t> verts;
  for (auto x : Lm.vertices) verts.insert(Lm.base->partner(x, *L.base));
  std::set<std::array<std::size_t, 2>> edges, mine(L.edges.begin(), L.edges.end());
  for (const auto& e : Lm.edges) {
    std::array<std::size_t, 2> a{Lm.base->partner(e[0], *L.base), Lm.base->partner(e[1], *L.base)};
    std::sort(a.begin(), a.end());
    edges.insert(a);
  }
  std::set<std::array<std::size_t, 2>> mine_sorted;
  for (auto e : mine) {
    std::sort(e.begin(), e.end());
    mine_sorted.insert(e);
  }
  c.require(verts == std::set<std::size_t>(L.vertices.begin(), L.vertices.end()), "mirror locus vertices differ");
  c.require(edges == mine_sorted, "mirror locus edges differ");
  return c.result(std::to_string(B.cells().size()) + " cells matched; 1000 round trips; locus " +
                  std::to_string(L.vertices.size()) + " vertices / " + std::to_string(L.edges.size()) + " edges");
}

Outcome slicing() {
  Checker c;
  ReflexivePolytope R(corpus::plane_cubic());
  SliceContext ctx(R);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ph(0, 2 * M_PI);
  auto s = ctx.zero_section();
  s.coeffs[ctx.origin()] = 1;
  for (auto i : ctx.off_slice()) s.coeffs[i] = std::polar(0.05, ph(rng));
  auto r = slice_reduce(ctx, s, 1e-12, 30);
  double worst = 0;
  for (std::size_t k = 1; k < r.trace.size(); ++k) worst = std::max(worst, r.trace[k] / r.trace[k - 1]);
  auto rep = replay(ctx, r.record, s);
  double d = 0, n = 0;
  for (std::size_t i = 0; i < rep.coeffs.size(); ++i) {
    d = std::max(d, std::abs(rep.coeffs[i] - r.section.coeffs[i]));
    n = std::max(n, std::abs(r.section.coeffs[i]));
  }
  c.require(r.trace.back() < 1e-12, "residual not below 1e-12");
  c.require(r.record.size() <= 30, "too many iterations");
  c.require(worst <= 0.1, "residual ratio above 0.1");
  c.require(d / n <= 1e-10, "replay mismatch");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu iterations, final %.2e, worst ratio %.3f, replay %.1e", r.record.size(),
                r.trace.back(), worst, d / n);
  return c.result(buf);
}

Outcome moment_properties() {
  Checker c;
  auto w = corpus::triangle_weights(TriangleVariant::Standard);
  auto M = MomentMap::of(w);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-200, 200);
  for (int k = 0; k < 10000; ++k) {
    std::vector<double> x{u(rng), u(rng)};
    auto F = M.eval(x);
    c.require(F[0] >= -1e-9 && F[1] >= -1e-9 && F[0] + F[1] <= 5 + 1e-9, "moment image outside the polygon");
  }
  double worst = 0;
  for (std::size_t i = 0; i < M.size(); ++i) {
    auto a = rho_argmax(M, i);
    worst = std::max(worst, std::hypot(a.F[0] - M.points()[i][0], a.F[1] - M.points()[i][1]));
  }
  c.require(worst < 1e-3, "argmax away from its lattice point");
  auto P = corpus::corner_triangle(5);
  auto q = corpus::slack_weights(P, lattice_points(P), 1, 0);
  auto G = gamma_graph(subdivision_by_weights(q));
  std::mt19937_64 prng(99);
  std::uniform_real_distribution<double> ph(0, 2 * M_PI);
  std::vector<double> phases(q.size());
  for (auto& x : phases) x = ph(prng);
  std::vector<double> dist;
  for (double t : {1.0, 2.0, 4.0}) dist.push_back(fattening_distance(amoeba_sample(q, phases, t, 5000, 1).points, G).max_dist);
  c.require(dist[0] > dist[1] && dist[1] > dist[2], "fattening does not shrink");
  char buf[160];
  std::snprintf(buf, sizeof buf, "argmax error %.1e; max distance %.3f > %.3f > %.3f", worst, dist[0], dist[1], dist[2]);
  return c.result(buf);
}

Outcome determinism(const std::string& golden, const std::string& cli, const std::string& data) {
  Checker c;
  struct Fig {
    const char* file;
    TriangleVariant var;
    bool gamma;
  };
  std::size_t goldens = 0;
  for (auto f : {Fig{"figure1.svg", TriangleVariant::Standard, false}, Fig{"figure3.svg", TriangleVariant::Standard, true},
                 Fig{"figure4.svg", TriangleVariant::SingleFlip, false}, Fig{"figure5.svg", TriangleVariant::SingleFlip, true}}) {
    auto S = subdivision_by_weights(corpus::triangle_weights(f.var));
    auto G = gamma_graph(S);
    auto a = render_svg(S, f.gamma ? &G : nullptr), b = render_svg(S, f.gamma ? &G : nullptr);
    c.require(a == b, std::string("repeat render differs: ") + f.file);
    if (!golden.empty()) {
      c.require(a == slurp(golden + "/" + f.file), std::string("golden mismatch: ") + f.file);
      ++goldens;
    }
  }
  auto q = corpus::slack_weights(corpus::corner_triangle(5), lattice_points(corpus::corner_triangle(5)), 1, 0);
  std::vector<double> ph(q.size(), 0.5);
  c.require(io::of(amoeba_sample(q, ph, 2, 500, 3)).dump() == io::of(amoeba_sample(q, ph, 2, 500, 3)).dump(),
            "amoeba JSON differs between runs");
  ReflexivePolytope R(corpus::plane_cubic());
  SliceContext ctx(R);
  auto s = ctx.zero_section();
  s.coeffs[ctx.origin()] = 1;
  for (std::size_t k = 0; k < ctx.off_slice().size(); ++k) s.coeffs[ctx.off_slice()[k]] = {0.01 * k, -0.02};
  c.require(io::of(slice_reduce(ctx, s, 1e-12, 30)).dump() == io::of(slice_reduce(ctx, s, 1e-12, 30)).dump(),
            "slice JSON differs between runs");
  std::size_t cli_runs = 0;
  if (!cli.empty()) {
    std::vector<std::string> cmds = {
        "gamma svg --polygon " + data + "/deg5.json --weights " + data + "/deg5_standard.json",
        "gamma build --polygon " + data + "/deg5.json --weights " + data + "/deg5_single_flip.json",
        "moment amoeba --polygon " + data + "/deg5.json --weights " + data + "/deg5_quadratic.json --count 300 --seed 4",
        "slice reduce --polytope " + data + "/cubic.json --section " + data + "/cubic_section.json",
        "locus build --polytope " + data + "/quintic.json"};
    for (const auto& cmd : cmds) {
      int s1 = 0, s2 = 0;
      auto a = run_capture("'" + cli + "' " + cmd, s1), b = run_capture("'" + cli + "' " + cmd, s2);
      c.require(s1 == 0 && s2 == 0 && !a.empty(), "command failed: " + cmd);
      c.require(a == b, "output differs between runs: " + cmd);
      cli_runs += 2;
    }
    int st = 0;
    auto fig3 = run_capture("'" + cli + "' gamma svg --polygon " + data + "/deg5.json --weights " + data +
                                "/deg5_standard.json",
                            st);
    if (!golden.empty()) c.require(fig3 == slurp(golden + "/figure3.svg"), "command-line figure 3 differs from golden");
  }
  return c.result(std::to_string(goldens) + " golden SVGs matched; " + std::to_string(cli_runs) +
                  " command-line runs byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
  std::string golden, cli, data;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string k = argv[i];
    if (k == "--golden") golden = argv[i + 1];
    else if (k == "--cli") cli = argv[i + 1];
    else if (k == "--data") data = argv[i + 1];
    else {
      std::cerr << "unknown option " << k << "\n";
      return 2;
    }
  }
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all = {
      {1, "reflexive duality", 1, reflexive_duality},
      {2, "lattice counts", 1, lattice_counts},
      {3, "boundary sums stay inside", 10, sum_property},
      {4, "graph combinatorics", 1, gamma_combinatorics},
      {5, "monodromy loops", 5, monodromy_loops},
      {6, "vertex matrix identities", 1, matrix_identities},
      {7, "base identification", 30, phi_map},
      {8, "slicing convergence", 5, slicing},
      {9, "moment map and amoebas", 60, moment_properties},
      {10, "determinism", 1e9, [&] { return determinism(golden, cli, data); }},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.budget) o = {false, "took longer than " + std::to_string(c.budget) + " s"};
    std::printf("%s %2d %-28s %7.3f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    failed += !o.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
