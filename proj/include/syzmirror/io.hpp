#pragma once

// JSON forms of the library types. Keys come out sorted (nlohmann's default
// object map). Integers are numbers when they fit in 64 bits and decimal
// strings otherwise; rationals are always "p/q" strings. Readers accept
// either form wherever a number is expected.

#include <json.hpp>

#include "syzmirror/fan.hpp"
#include "syzmirror/locus.hpp"
#include "syzmirror/moment.hpp"
#include "syzmirror/monodromy.hpp"
#include "syzmirror/slicing.hpp"

namespace syz {

using json = nlohmann::json;

namespace io {

// Runs a reader, turning nlohmann access errors into InputError.
template <class F>
auto reading(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

inline json parse(const std::string& text, const char* what = "JSON") {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("unparsable ") + what + ": " + e.what());
  }
}

inline json of(const Integer& z) {
  if (z.fits_slong_p()) return json(static_cast<std::int64_t>(z.get_si()));
  return json(z.get_str());
}
inline json of(const Rational& q) { return json(to_string(q)); }

inline Integer integer(const json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (q.get_den() != 1) throw InputError("expected an integer, got " + j.get<std::string>());
    return q.get_num();
  }
  throw InputError("expected an integer, got " + j.dump());
}

inline Rational rational(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected a rational (integer or \"p/q\" string), got " + j.dump());
}

inline json of(const ZVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(of(x));
  return a;
}
inline json of(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(of(x));
  return a;
}
inline json of(const ZMat& m) {
  json a = json::array();
  for (const auto& r : m) a.push_back(of(r));
  return a;
}

inline ZVec zvec(const json& j) {
  if (!j.is_array()) throw InputError("expected an integer array, got " + j.dump());
  ZVec v;
  for (const auto& x : j) v.push_back(integer(x));
  return v;
}
inline QVec qvec(const json& j) {
  if (!j.is_array()) throw InputError("expected a rational array, got " + j.dump());
  QVec v;
  for (const auto& x : j) v.push_back(rational(x));
  return v;
}
inline ZMat zmat(const json& j) {
  if (!j.is_array()) throw InputError("expected a matrix, got " + j.dump());
  ZMat m;
  for (const auto& r : j) m.push_back(zvec(r));
  for (const auto& r : m)
    if (r.size() != m[0].size()) throw DimensionError("ragged matrix rows");
  return m;
}

// Integral vectors print as numbers, the rest as rational strings.
inline json of_point(const QVec& v) { return is_integral(v) ? of(to_z(v)) : of(v); }

inline Side side(const json& j) {
  auto s = j.get<std::string>();
  if (s == "M") return Side::M;
  if (s == "N") return Side::N;
  throw InputError("side must be \"M\" or \"N\", got \"" + s + "\"");
}

inline std::vector<std::size_t> indices(const json& j) { return j.get<std::vector<std::size_t>>(); }

inline void check_ranks(const std::vector<QVec>& pts) {
  if (pts.empty()) throw InputError("empty point list");
  for (const auto& p : pts)
    if (p.size() != pts[0].size()) throw DimensionError("points of different ranks");
}

// Polytope: {"side", "vertices"}.
inline json of(const Polytope& P) {
  json vs = json::array();
  for (const auto& v : P.vertices()) vs.push_back(of_point(v));
  return {{"side", side_name(P.side())}, {"vertices", vs}};
}

inline Polytope read_polytope(const json& j) {
  return reading("polytope", [&] {
    std::vector<QVec> pts;
    for (const auto& v : j.at("vertices")) pts.push_back(qvec(v));
    check_ranks(pts);
    return Polytope::from_points(side(j.at("side")), pts);
  });
}

// Point list: {"side", "points"}.
inline json of(Side s, const std::vector<LatticeVector>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(of(p.coords));
  return {{"side", side_name(s)}, {"points", a}};
}

inline std::vector<LatticeVector> read_points(const json& j) {
  return reading("point list", [&] {
    Side s = side(j.at("side"));
    std::vector<LatticeVector> out;
    for (const auto& p : j.at("points")) out.push_back({s, zvec(p)});
    for (const auto& p : out)
      if (p.rank() != out.at(0).rank()) throw DimensionError("points of different ranks");
    return out;
  });
}

// Weights: {"side", "points", "kind", "values"}; kind "w" holds lifting
// heights, kind "p" holds support values p = -w. Written as "w".
inline json of(const WeightFunction& w) {
  json j = of(w.side(), w.points());
  json vals = json::array();
  for (std::size_t i = 0; i < w.size(); ++i) vals.push_back(of(w.w(i)));
  j["kind"] = "w";
  j["values"] = vals;
  return j;
}

inline WeightFunction read_weights(const json& j) {
  return reading("weights", [&] {
    auto pts = read_points(j);
    std::vector<Rational> vals;
    for (const auto& x : j.at("values")) vals.push_back(rational(x));
    if (vals.size() != pts.size()) throw InputError("weights need one value per point");
    std::string kind = j.value("kind", "w");
    if (kind == "w") return WeightFunction::from_w(pts.at(0).side, pts, vals);
    if (kind == "p") return WeightFunction(pts.at(0).side, pts, vals);
    throw InputError("weight kind must be \"w\" or \"p\", got \"" + kind + "\"");
  });
}

// Fan: {"side", "rays", "cones", "all_cones"}.
inline json of(const Fan& F) {
  json rays = json::array();
  for (const auto& r : F.rays) rays.push_back(of(r.coords));
  return {{"side", side_name(F.side)}, {"rays", rays}, {"cones", F.cones}, {"all_cones", F.all_cones}};
}

inline Fan read_fan(const json& j) {
  return reading("fan", [&] {
    Fan F;
    F.side = side(j.at("side"));
    for (const auto& r : j.at("rays")) F.rays.push_back({F.side, zvec(r)});
    F.cones = j.at("cones").get<std::vector<std::vector<std::size_t>>>();
    F.all_cones = j.at("all_cones").get<std::vector<std::vector<std::size_t>>>();
    for (const auto& list : {F.cones, F.all_cones})
      for (const auto& c : list)
        for (auto i : c)
          if (i >= F.rays.size()) throw InputError("cone refers to a missing ray");
    return F;
  });
}

// Subdivision: the configuration with heights plus the cells it induces.
// The reader recomputes the cells and insists they match.
inline json of(const RegularSubdivision& S) {
  json pts = json::array(), hs = json::array(), cells = json::array();
  for (const auto& p : S.points()) pts.push_back(of_point(p));
  for (const auto& h : S.heights()) hs.push_back(of(h));
  for (const auto& c : S.cells()) cells.push_back({{"dim", c.dim}, {"points", c.points}, {"vertices", c.vertices}});
  return {{"points", pts}, {"heights", hs}, {"cells", cells}};
}

inline RegularSubdivision read_subdivision(const json& j) {
  return reading("subdivision", [&] {
    std::vector<QVec> pts;
    std::vector<Rational> hs;
    for (const auto& p : j.at("points")) pts.push_back(qvec(p));
    for (const auto& h : j.at("heights")) hs.push_back(rational(h));
    check_ranks(pts);
    auto S = RegularSubdivision::compute(pts, hs);
    if (j.contains("cells") && j.at("cells") != of(S).at("cells"))
      throw InputError("listed cells differ from the subdivision induced by the heights");
    return S;
  });
}

// Graph: vertices with their cell and coordinates, edges, and the point owning
// each complementary region.
inline json of(const GammaGraph& G) {
  json vs = json::array();
  for (const auto& v : G.vertices)
    vs.push_back({{"kind", v.kind == GammaVertex::Kind::CellBarycenter ? "barycenter" : "midpoint"},
                  {"cell", v.cell},
                  {"coords", of(v.coords)},
                  {"boundary", v.boundary}});
  json es = json::array();
  for (const auto& e : G.edges) es.push_back({e[0], e[1]});
  return {{"vertices", vs}, {"edges", es}, {"regions", G.regions}, {"first_betti", G.first_betti()}};
}

inline GammaGraph read_gamma(const json& j) {
  return reading("graph", [&] {
    GammaGraph G;
    for (const auto& v : j.at("vertices")) {
      GammaVertex x;
      auto k = v.at("kind").get<std::string>();
      if (k != "barycenter" && k != "midpoint") throw InputError("unknown graph vertex kind \"" + k + "\"");
      x.kind = k == "barycenter" ? GammaVertex::Kind::CellBarycenter : GammaVertex::Kind::EdgeMidpoint;
      x.cell = v.at("cell").get<std::size_t>();
      x.coords = qvec(v.at("coords"));
      x.boundary = v.at("boundary").get<bool>();
      G.vertices.push_back(std::move(x));
    }
    G.adjacency.resize(G.vertices.size());
    for (const auto& e : j.at("edges")) {
      std::array<std::size_t, 2> a{e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()};
      if (a[0] >= G.vertices.size() || a[1] >= G.vertices.size()) throw InputError("edge refers to a missing vertex");
      G.edges.push_back(a);
      G.adjacency[a[0]].push_back(a[1]);
      G.adjacency[a[1]].push_back(a[0]);
    }
    G.regions = indices(j.at("regions"));
    return G;
  });
}

inline json of(const LatticeVector& v) { return {{"side", side_name(v.side)}, {"coords", of(v.coords)}}; }

inline LatticeVector read_vector(const json& j) {
  return reading("lattice vector", [&] { return LatticeVector(side(j.at("side")), zvec(j.at("coords"))); });
}

inline json of(const Loop& l) { return {{"n", of(l.n)}, {"m", of(l.m)}, {"n2", of(l.n2)}, {"m2", of(l.m2)}}; }

inline Loop read_loop(const json& j) {
  return reading("loop", [&] {
    return Loop{read_vector(j.at("n")), read_vector(j.at("m")), read_vector(j.at("n2")), read_vector(j.at("m2"))};
  });
}

// Operator on a rank r-1 lattice; column j of "matrix" is the image of basis row j.
inline json of(const MonodromyOperator& T) {
  const auto& L = T.lattice;
  json lat = {{"kind", L.kind == SublatticeBasis::Kind::Quotient ? "quotient" : "orthogonal"},
              {"anchor", of(L.anchor)},
              {"side", side_name(L.side)},
              {"basis", of(L.basis)}};
  if (L.kind == SublatticeBasis::Kind::Quotient) lat["coordinate_map"] = of(L.coordinate_map);
  return {{"lattice", lat}, {"matrix", of(T.matrix)}, {"loop", of(T.loop)}};
}

inline MonodromyOperator read_operator(const json& j) {
  return reading("monodromy operator", [&] {
    MonodromyOperator T;
    const auto& lat = j.at("lattice");
    auto k = lat.at("kind").get<std::string>();
    if (k != "quotient" && k != "orthogonal") throw InputError("unknown lattice kind \"" + k + "\"");
    T.lattice.kind = k == "quotient" ? SublatticeBasis::Kind::Quotient : SublatticeBasis::Kind::Orthogonal;
    T.lattice.anchor = read_vector(lat.at("anchor"));
    T.lattice.side = side(lat.at("side"));
    T.lattice.basis = zmat(lat.at("basis"));
    if (lat.contains("coordinate_map")) T.lattice.coordinate_map = zmat(lat.at("coordinate_map"));
    T.matrix = zmat(j.at("matrix"));
    T.loop = read_loop(j.at("loop"));
    if (T.matrix.size() != T.lattice.rank()) throw DimensionError("matrix size differs from the lattice rank");
    return T;
  });
}

inline json of(const std::vector<Complex>& c) {
  json a = json::array();
  for (auto z : c) a.push_back({{"re", z.real()}, {"im", z.imag()}});
  return a;
}

inline Complex complex(const json& j) {
  if (!j.at("re").is_number() || !j.at("im").is_number()) throw InputError("complex parts must be numbers");
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

// Section: {"side", "coeffs": [{"point", "re", "im"}]}; absent points are zero.
inline json of(const SectionVector& s) {
  json a = json::array();
  for (std::size_t i = 0; i < s.points.size(); ++i)
    a.push_back({{"point", of(s.points[i].coords)}, {"re", s.coeffs[i].real()}, {"im", s.coeffs[i].imag()}});
  return {{"side", side_name(s.points.at(0).side)}, {"coeffs", a}};
}

inline SectionVector read_section(const json& j, const SliceContext& ctx) {
  return reading("section", [&] {
    auto s = ctx.zero_section();
    if (side(j.at("side")) != s.points.at(0).side) throw SideError("section on the wrong side");
    std::set<std::size_t> seen;
    for (const auto& c : j.at("coeffs")) {
      ZVec m = zvec(c.at("point"));
      if (m.size() != s.points[0].rank()) throw DimensionError("section point of the wrong rank");
      std::size_t i = s.index_of(m);
      if (!seen.insert(i).second) throw InputError("section lists a point twice");
      s.coeffs[i] = complex(c);
    }
    return s;
  });
}

inline json of(const SliceResult& r) {
  json rec = json::array();
  for (const auto& X : r.record) rec.push_back(of(X.c));
  return {{"section", of(r.section)}, {"record", rec}, {"trace", r.trace}, {"iterations", r.record.size()}};
}

inline SliceResult read_slice_result(const json& j, const SliceContext& ctx) {
  return reading("slice result", [&] {
    SliceResult r;
    r.section = read_section(j.at("section"), ctx);
    for (const auto& X : j.at("record")) {
      SliceExponent e;
      for (const auto& c : X) e.c.push_back(complex(c));
      if (e.c.size() != ctx.off_slice().size()) throw DimensionError("exponent length differs from the off-slice count");
      r.record.push_back(std::move(e));
    }
    r.trace = j.at("trace").get<std::vector<double>>();
    return r;
  });
}

inline json of(const AmoebaSample& s) {
  return {{"points", s.points}, {"scale", s.scale}, {"seed", s.seed}, {"skipped", s.skipped}};
}

inline AmoebaSample read_amoeba(const json& j) {
  return reading("amoeba sample", [&] {
    AmoebaSample s;
    s.points = j.at("points").get<std::vector<std::array<double, 2>>>();
    s.scale = j.at("scale").get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.skipped = j.at("skipped").get<std::size_t>();
    return s;
  });
}

// Locus summary: vertices with stratum and base point, edges, counts.
inline json of(const LocusComplex& L) {
  json vs = json::array();
  for (auto c : L.vertices)
    vs.push_back({{"cell", c}, {"stratum", stratum_name(L.strata.at(c))}, {"point", of(L.base->vertex_point(c))}});
  json es = json::array();
  for (const auto& e : L.edges) es.push_back({e[0], e[1]});
  json counts;
  for (auto s : {Stratum::Smooth, Stratum::FaceVertex, Stratum::EdgeVertex}) counts[stratum_name(s)] = L.count(s);
  return {{"vertices", vs}, {"edges", es}, {"counts", counts}, {"pieces", L.pieces.size()}};
}

}  // namespace io
}  // namespace syz
