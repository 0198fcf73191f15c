#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <random>

#include "manifest.hpp"
#include "syzmirror/corpus.hpp"
#include "syzmirror/io.hpp"
#include "syzmirror/svg.hpp"

using namespace syz;
using syz::cli::RunManifest;

namespace {

constexpr const char* kVersion = "0.1.0";

QVec parse_qlist(const std::string& s) {
  QVec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw InputError("empty entry in list '" + s + "'");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

ZVec parse_zlist(const std::string& s) {
  QVec q = parse_qlist(s);
  if (!is_integral(q)) throw InputError("expected integers in '" + s + "'");
  return to_z(q);
}

struct Session {
  RunManifest man;

  json load(const std::string& path, const char* what) { return io::parse(man.read_input(path), what); }
  Polytope polytope(const std::string& path) { return io::read_polytope(load(path, "polytope")); }
  WeightFunction weights(const std::string& path) { return io::read_weights(load(path, "weights")); }
};

// Weights for a polygon must cover exactly its lattice points.
void check_cover(const Polytope& P, const WeightFunction& w) {
  if (P.rank() != 2) throw DimensionError("polygon must have rank 2");
  if (w.side() != P.side()) throw SideError("weights and polygon on different sides");
  auto pts = lattice_points(P);
  auto got = w.points();
  std::sort(got.begin(), got.end());
  if (got != pts) throw InputError("weights must be given on exactly the lattice points of the polygon");
}

// Base data shared by the locus, base and monodromy commands.
struct BaseArgs {
  std::string polytope, weights, fibre_weights;

  void add(CLI::App* c) {
    c->add_option("--polytope", polytope, "reflexive polytope JSON")->required();
    c->add_option("--weights", weights, "weights on the polytope's lattice points (default: facet-slack quadratic)");
    c->add_option("--fibre-weights", fibre_weights, "weights on the dual's lattice points (default: anticanonical)");
  }

  std::tuple<ReflexivePolytope, WeightFunction, WeightFunction> load(Session& s) const {
    ReflexivePolytope R(s.polytope(polytope));
    auto w = weights.empty() ? corpus::skeleton_quadratic(R.base()) : s.weights(weights);
    auto v = fibre_weights.empty() ? corpus::anticanonical(R.dual()) : s.weights(fibre_weights);
    return {std::move(R), std::move(w), std::move(v)};
  }
};

std::vector<double> parse_dlist(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(' ', used) != std::string::npos || !std::isfinite(x))
      throw InputError("malformed number '" + item + "'");
    out.push_back(x);
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<double> seeded_phases(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ph(0, 2 * M_PI);
  std::vector<double> out(n);
  for (auto& x : out) x = ph(rng);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric mirror pairs: polytopes, subdivisions, singular loci, monodromy, slicing, amoebas"};
  app.set_version_flag("--version", kVersion);
  app.fallthrough();
  app.require_subcommand(1);
  std::string manifest_path, out_path;
  app.add_option("--manifest", manifest_path, "write a run manifest to this file");
  app.add_option("--out", out_path, "write the result here instead of stdout");

  Session S;
  S.man.version = kVersion;
  for (int i = 0; i < argc; ++i) S.man.command.emplace_back(argv[i]);

  std::vector<std::pair<CLI::App*, std::function<std::string()>>> leaves;
  auto group = [&](const char* name, const char* help) {
    auto g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  auto leaf = [&](CLI::App* g, const char* name, const char* help) {
    auto c = g->add_subcommand(name, help);
    leaves.emplace_back(c, nullptr);
    return std::make_pair(c, &leaves.back().second);
  };
  leaves.reserve(32);

  // polytope
  auto gp = group("polytope", "lattice polytopes and their duals");
  std::string poly_file, which = "all";
  std::size_t codim = 2;
  bool require = false;
  {
    auto [c, f] = leaf(gp, "dual", "vertices of the polar dual");
    c->add_option("file", poly_file)->required();
    *f = [&] { return dump(io::of(dual_polytope(S.polytope(poly_file)))); };
  }
  {
    auto [c, f] = leaf(gp, "points", "lattice points");
    c->add_option("file", poly_file)->required();
    c->add_option("--which", which, "all, interior, boundary or skeleton")
        ->check(CLI::IsMember({"all", "interior", "boundary", "skeleton"}));
    c->add_option("--codim", codim, "skeleton codimension (with --which skeleton)");
    *f = [&] {
      auto P = S.polytope(poly_file);
      auto pts = which == "interior"   ? interior_lattice_points(P)
                 : which == "boundary" ? boundary_lattice_points(P)
                 : which == "skeleton" ? skeleton_points(P, codim)
                                       : lattice_points(P);
      json j = io::of(P.side(), pts);
      j["count"] = pts.size();
      return dump(j);
    };
  }
  {
    auto [c, f] = leaf(gp, "check-reflexive", "reflexivity test");
    c->add_option("file", poly_file)->required();
    c->add_flag("--require", require, "exit 4 unless reflexive");
    *f = [&] {
      auto P = S.polytope(poly_file);
      bool refl = is_reflexive(P);
      if (require && !refl) throw NotReflexiveError("polytope is not reflexive");
      json j = {{"reflexive", refl}, {"lattice", P.is_lattice_polytope()}, {"dim", P.dim()}};
      if (refl) j["dual"] = io::of(dual_polytope(P));
      return dump(j);
    };
  }

  // fan
  auto gf = group("fan", "normal fans and their crepant refinement");
  bool crepant = false;
  auto fan_of = [&] {
    ReflexivePolytope R(S.polytope(poly_file));
    auto F = normal_fan(R);
    return crepant ? max_crepant_subdivision(F, R) : F;
  };
  {
    auto [c, f] = leaf(gf, "build", "fan of the polytope");
    c->add_option("file", poly_file)->required();
    c->add_flag("--crepant", crepant, "use every boundary point of the dual as a ray");
    *f = [&] { return dump(io::of(fan_of())); };
  }
  {
    auto [c, f] = leaf(gf, "report", "cone volumes and smoothness");
    c->add_option("file", poly_file)->required();
    c->add_flag("--crepant", crepant, "use every boundary point of the dual as a ray");
    *f = [&] {
      auto F = fan_of();
      json cones = json::array();
      bool all = true;
      for (const auto& cv : primitivity_report(F)) {
        bool prim = cv.volume && *cv.volume == 1;
        all = all && prim;
        cones.push_back({{"rays", cv.cone},
                         {"dim", cv.dim},
                         {"volume", cv.volume ? io::of(*cv.volume) : json(nullptr)},
                         {"primitive", prim}});
      }
      return dump({{"cones", cones}, {"all_primitive", all}, {"maximal_cones", F.cones.size()}});
    };
  }

  // weights
  auto gw = group("weights", "weight functions");
  std::string weights_file, point_arg;
  {
    auto [c, f] = leaf(gw, "check", "convexity and movability");
    c->add_option("--weights", weights_file)->required();
    *f = [&] {
      auto w = S.weights(weights_file);
      auto mv = movable_cone_member(w);
      auto cv = convexity_report(w);
      json j = {{"movable", mv.member},
                {"integral_witnesses", mv.integral_witnesses},
                {"unsupported", mv.unsupported},
                {"strictly_convex", cv.convex}};
      if (cv.violating) j["violating_point"] = io::of(w.points()[*cv.violating].coords);
      return dump(j);
    };
  }
  {
    auto [c, f] = leaf(gw, "extend", "value of the piecewise linear extension at a point");
    c->add_option("--weights", weights_file)->required();
    c->add_option("--point", point_arg, "comma-separated integer coordinates")->required();
    *f = [&] {
      auto w = S.weights(weights_file);
      LatticeVector n{w.side(), parse_zlist(point_arg)};
      return dump({{"point", io::of(n.coords)}, {"value", io::of(extend_pl(w, n))}});
    };
  }

  // gamma
  auto gg = group("gamma", "subdivisions of a polygon and their graphs");
  std::string polygon_file;
  bool no_gamma = false;
  auto polygon_data = [&] {
    auto P = S.polytope(polygon_file);
    auto w = S.weights(weights_file);
    check_cover(P, w);
    auto Sub = subdivision_by_weights(w);
    return std::make_pair(Sub, gamma_graph(Sub));
  };
  {
    auto [c, f] = leaf(gg, "build", "subdivision and graph as JSON");
    c->add_option("--polygon", polygon_file)->required();
    c->add_option("--weights", weights_file)->required();
    *f = [&] {
      auto [Sub, G] = polygon_data();
      return dump({{"subdivision", io::of(Sub)}, {"gamma", io::of(G)}});
    };
  }
  {
    auto [c, f] = leaf(gg, "svg", "drawing of the subdivision with its graph");
    c->add_option("--polygon", polygon_file)->required();
    c->add_option("--weights", weights_file)->required();
    c->add_flag("--no-gamma", no_gamma, "draw the subdivision only");
    *f = [&] {
      auto [Sub, G] = polygon_data();
      return render_svg(Sub, no_gamma ? nullptr : &G);
    };
  }

  // locus, base
  BaseArgs base_args;
  std::string base_point;
  bool inverse = false;
  auto gl = group("locus", "discriminant locus in the base");
  {
    auto [c, f] = leaf(gl, "build", "vertices, edges and strata");
    base_args.add(c);
    *f = [&] {
      auto [R, w, v] = base_args.load(S);
      return dump(io::of(build_locus(R, w, v)));
    };
  }
  {
    auto [c, f] = leaf(gl, "type", "singular fibre type over a base point");
    base_args.add(c);
    c->add_option("--point", base_point, "comma-separated rational product coordinates")->required();
    *f = [&] {
      auto [R, w, v] = base_args.load(S);
      auto L = build_locus(R, w, v);
      QVec b = parse_qlist(base_point);
      return dump({{"point", io::of(b)}, {"type", fiber_type_name(fiber_type(L, b))}});
    };
  }
  auto gb = group("base", "the common base of the two fibrations");
  {
    auto [c, f] = leaf(gb, "build", "cells of the base");
    base_args.add(c);
    *f = [&] {
      auto [R, w, v] = base_args.load(S);
      BaseComplex B(R, w, v);
      json cells = json::array();
      std::map<std::string, std::size_t> by_dim;
      for (const auto& x : B.cells()) {
        cells.push_back({{"alpha", x.alpha}, {"beta", x.beta}, {"dim", x.dim}, {"mirror_dim", x.mirror_dim}});
        ++by_dim[std::to_string(x.dim)];
      }
      return dump({{"cells", cells}, {"count_by_dim", by_dim}});
    };
  }
  {
    auto [c, f] = leaf(gb, "phi", "identification of the mirror base with this one");
    base_args.add(c);
    c->add_option("--point", base_point, "comma-separated rational product coordinates")->required();
    c->add_flag("--inverse", inverse, "map from this base to the mirror base");
    *f = [&] {
      auto [R, w, v] = base_args.load(S);
      BaseComplex B(R, w, v);
      auto M = B.mirror();
      QVec b = parse_qlist(base_point);
      QVec img = inverse ? phi_apply(B, M, b) : phi_apply(M, B, b);
      return dump({{"point", io::of(b)}, {"image", io::of(img)}});
    };
  }
  {
    auto [c, f] = leaf(gb, "pihat", "projection to the polytope boundary");
    base_args.add(c);
    c->add_option("--point", base_point, "comma-separated rational product coordinates")->required();
    *f = [&] {
      auto [R, w, v] = base_args.load(S);
      BaseComplex B(R, w, v);
      QVec b = parse_qlist(base_point);
      return dump({{"point", io::of(b)}, {"image", io::of(B.pi_hat(b))}});
    };
  }

  // monodromy
  auto gm = group("monodromy", "monodromy operators");
  std::string n_arg, m_arg, n2_arg, m2_arg, edge_arg, matrices_file;
  bool dual = false;
  std::optional<std::size_t> cell;
  {
    auto [c, f] = leaf(gm, "loop", "operator of the loop through regions m and m' around n, n'");
    c->add_option("--n", n_arg, "first N point")->required();
    c->add_option("--m", m_arg, "M point of the first region")->required();
    c->add_option("--n2", n2_arg, "second N point")->required();
    c->add_option("--m2", m2_arg, "M point of the second region")->required();
    c->add_flag("--dual", dual, "operator on the orthogonal lattice of n instead of N/Zn");
    *f = [&] {
      Loop l{{Side::N, parse_zlist(n_arg)}, {Side::M, parse_zlist(m_arg)}, {Side::N, parse_zlist(n2_arg)},
             {Side::M, parse_zlist(m2_arg)}};
      return dump(io::of(dual ? dual_loop_monodromy(l) : loop_monodromy(l)));
    };
  }
  {
    auto [c, f] = leaf(gm, "leg", "operator along an edge of the locus");
    base_args.add(c);
    c->add_option("--edge", edge_arg, "lower,upper base cells")->required();
    *f = [&] {
      auto [R, w, v] = base_args.load(S);
      auto L = build_locus(R, w, v);
      auto e = parse_zlist(edge_arg);
      if (e.size() != 2 || e[0] < 0 || e[1] < 0) throw InputError("edge needs two cell indices");
      return dump(io::of(leg_monodromy(L, {e[0].get_ui(), e[1].get_ui()})));
    };
  }
  {
    auto [c, f] = leaf(gm, "classify", "type II or III at trivalent vertices");
    c->add_option("--matrices", matrices_file, "JSON array of three matrices");
    base_args.add(c);
    c->get_option("--polytope")->required(false);
    c->add_option("--cell", cell, "single locus vertex (default: all)");
    *f = [&]() -> std::string {
      if (!matrices_file.empty()) {
        auto j = S.load(matrices_file, "matrices");
        auto ms = io::reading("matrices", [&] {
          if (!j.is_array() || j.size() != 3) throw InputError("expected an array of three matrices");
          return std::array<ZMat, 3>{io::zmat(j[0]), io::zmat(j[1]), io::zmat(j[2])};
        });
        for (const auto& m : ms)
          if (m.size() != ms[0].size() || m.empty() || m[0].size() != m.size())
            throw DimensionError("matrices must be square of one size");
        return dump({{"class", vertex_class_name(classify_vertex(ms[0], ms[1], ms[2]))}});
      }
      if (base_args.polytope.empty()) throw InputError("give --matrices or --polytope");
      auto [R, w, v] = base_args.load(S);
      auto L = build_locus(R, w, v);
      json vs = json::array();
      std::map<std::string, std::size_t> counts;
      for (const auto& [k, st] : L.strata) {
        if (st == Stratum::Smooth || (cell && *cell != k)) continue;
        auto cls = vertex_class_name(classify_vertex(vertex_monodromy(L, k)));
        ++counts[cls];
        vs.push_back({{"cell", k}, {"stratum", stratum_name(st)}, {"class", cls}});
      }
      if (cell && vs.empty()) throw PreconditionError("cell is not a vertex of the locus");
      return dump({{"vertices", vs}, {"counts", counts}});
    };
  }

  // slice
  auto gs = group("slice", "reduction to the codimension-2 skeleton");
  std::string section_file;
  double tol = 1e-12;
  int max_iter = 30;
  {
    auto [c, f] = leaf(gs, "reduce", "iterate the slicing step to tolerance");
    c->add_option("--polytope", poly_file)->required();
    c->add_option("--section", section_file)->required();
    c->add_option("--tol", tol)->check(CLI::PositiveNumber);
    c->add_option("--max-iter", max_iter)->check(CLI::NonNegativeNumber);
    *f = [&] {
      ReflexivePolytope R(S.polytope(poly_file));
      SliceContext ctx(R);
      auto s = io::read_section(S.load(section_file, "section"), ctx);
      return dump(io::of(slice_reduce(ctx, s, tol, max_iter)));
    };
  }

  // moment
  auto gmo = group("moment", "moment map and curve amoebas");
  double scale = 1;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> phase_seed;
  std::string log_radii;
  {
    auto [c, f] = leaf(gmo, "amoeba", "moment-map image of sampled curve points");
    c->add_option("--polygon", polygon_file)->required();
    c->add_option("--weights", weights_file)->required();
    c->add_option("--scale", scale)->check(CLI::PositiveNumber);
    c->add_option("--count", count);
    c->add_option("--seed", seed, "sampling seed");
    c->add_option("--phase-seed", phase_seed, "seed of the coefficient phases (default: --seed)");
    *f = [&] {
      auto P = S.polytope(polygon_file);
      auto w = S.weights(weights_file);
      check_cover(P, w);
      S.man.seed = seed;
      auto s = amoeba_sample(w, seeded_phases(w.size(), phase_seed.value_or(seed)), scale, count, seed);
      json j = io::of(s);
      auto rep = fattening_distance(s.points, gamma_graph(subdivision_by_weights(w)));
      j["fattening"] = {{"max_dist", rep.max_dist}, {"histogram", rep.histogram}};
      return dump(j);
    };
  }
  {
    auto [c, f] = leaf(gmo, "eval", "moment map at a torus point");
    c->add_option("--weights", weights_file)->required();
    c->add_option("--log-radii", log_radii, "comma-separated log|x_i|")->required();
    c->add_option("--scale", scale)->check(CLI::PositiveNumber);
    *f = [&] {
      auto w = S.weights(weights_file);
      auto u = parse_dlist(log_radii);
      if (u.size() != w.rank()) throw DimensionError("one log radius per coordinate required");
      auto M = MomentMap::of(w, scale);
      return dump({{"log_radii", u}, {"value", M.eval(u)}});
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::function<std::string()> run;
    for (auto& [c, f] : leaves)
      if (c->parsed()) run = f;
    if (!run) throw InvariantError("no command selected");
    std::string out = run();
    if (out_path.empty()) {
      std::cout << out << std::flush;
      S.man.outputs["stdout"] = cli::sha256_hex(out);
    } else {
      std::ofstream o(out_path, std::ios::binary);
      if (!o) throw InputError("cannot write '" + out_path + "'");
      o << out;
      S.man.outputs[out_path] = cli::sha256_hex(out);
    }
    if (!manifest_path.empty()) {
      std::ofstream m(manifest_path, std::ios::binary);
      if (!m) throw InputError("cannot write '" + manifest_path + "'");
      m << S.man.to_json().dump(2) << "\n";
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
}
