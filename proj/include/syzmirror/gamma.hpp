#pragma once

// The trivalent graph dual to a 2-dimensional regular subdivision: cell
// barycenters joined to the midpoints of their edges.

#include <array>
#include <functional>
#include <set>

#include "syzmirror/subdivision.hpp"

namespace syz {

struct GammaVertex {
  enum class Kind { CellBarycenter, EdgeMidpoint };
  Kind kind = Kind::CellBarycenter;
  std::size_t cell = 0;  // index into the subdivision's cells
  QVec coords;
  bool boundary = false;  // midpoint of an edge on the boundary of the region
};

struct GammaGraph {
  std::vector<GammaVertex> vertices;
  std::vector<std::array<std::size_t, 2>> edges;
  std::vector<std::vector<std::size_t>> adjacency;
  // Region k of the complement contains exactly the configuration point regions[k].
  std::vector<std::size_t> regions;

  std::size_t valence(std::size_t v) const { return adjacency.at(v).size(); }

  std::size_t components() const {
    std::vector<std::size_t> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& e : edges) parent[find(e[0])] = find(e[1]);
    std::size_t c = 0;
    for (std::size_t i = 0; i < parent.size(); ++i)
      if (find(i) == i) ++c;
    return c;
  }

  long first_betti() const {
    return static_cast<long>(edges.size()) - static_cast<long>(vertices.size()) +
           static_cast<long>(components());
  }

  std::size_t vertex_of_cell(std::size_t cell) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].cell == cell) return i;
    throw InvariantError("cell has no graph vertex");
  }
};

namespace detail {
inline bool on_segment(const QVec& a, const QVec& b, const QVec& p) {
  QVec d = sub(b, a), e = sub(p, a);
  // p = a + t d with 0 <= t <= 1
  std::size_t j = 0;
  while (j < d.size() && d[j] == 0) ++j;
  if (j == d.size()) return p == a;
  Rational t = e[j] / d[j];
  if (t < 0 || t > 1) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (e[i] != t * d[i]) return false;
  return true;
}
}  // namespace detail

inline GammaGraph gamma_graph(const RegularSubdivision& S) {
  if (S.dim() != 2) throw PreconditionError("graph construction needs a 2-dimensional subdivision");
  if (!S.all_points_are_vertices())
    throw NotConvexError("subdivision has lattice points that are not vertices");
  GammaGraph G;
  std::map<std::size_t, std::size_t> vid;
  for (std::size_t c = 0; c < S.cells().size(); ++c) {
    const auto& cell = S.cells()[c];
    if (cell.dim == 1) {
      GammaVertex v;
      v.kind = GammaVertex::Kind::EdgeMidpoint;
      v.cell = c;
      v.coords = S.cell_barycenter(c);
      v.boundary = S.cofaces_top(c).size() == 1;
      vid[c] = G.vertices.size();
      G.vertices.push_back(v);
    } else if (cell.dim == 2) {
      GammaVertex v;
      v.kind = GammaVertex::Kind::CellBarycenter;
      v.cell = c;
      v.coords = S.cell_barycenter(c);
      vid[c] = G.vertices.size();
      G.vertices.push_back(v);
    }
  }
  G.adjacency.resize(G.vertices.size());
  for (auto t : S.top_cells())
    for (auto e : S.facets_of(t)) {
      std::array<std::size_t, 2> edge{vid.at(e), vid.at(t)};
      G.edges.push_back(edge);
      G.adjacency[edge[0]].push_back(edge[1]);
      G.adjacency[edge[1]].push_back(edge[0]);
    }
  std::sort(G.edges.begin(), G.edges.end());

  // Complement regions: barycentric triangles (p, mid e, bary t) glued along
  // sides not on the graph, i.e. the sides through p.
  struct Tri {
    std::size_t t, e, p;
  };
  std::vector<Tri> tris;
  for (auto t : S.top_cells())
    for (auto e : S.facets_of(t))
      for (auto p : S.cells()[e].vertices) tris.push_back({t, e, p});
  std::vector<std::size_t> parent(tris.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_side;  // (p, t) and (p, e) sides
  for (std::size_t i = 0; i < tris.size(); ++i) {
    for (auto key : {std::make_pair(tris[i].p, tris[i].t), std::make_pair(tris[i].p, tris[i].e)}) {
      auto [it, fresh] = by_side.emplace(key, i);
      if (!fresh) parent[find(i)] = find(it->second);
    }
  }
  std::map<std::size_t, std::set<std::size_t>> comp_points;
  for (std::size_t i = 0; i < tris.size(); ++i) comp_points[find(i)].insert(tris[i].p);
  std::set<std::size_t> covered;
  for (const auto& [root, pts] : comp_points) {
    if (pts.size() != 1) throw InvariantError("complement region holds more than one lattice point");
    if (!covered.insert(*pts.begin()).second)
      throw InvariantError("lattice point lies in two complement regions");
    G.regions.push_back(*pts.begin());
  }
  std::sort(G.regions.begin(), G.regions.end());
  if (G.regions.size() != S.points().size()) throw InvariantError("a lattice point has no complement region");
  return G;
}

// Exact check that no configuration point lies on a graph edge.
inline bool gamma_avoids_points(const GammaGraph& G, const RegularSubdivision& S) {
  for (const auto& e : G.edges)
    for (const auto& p : S.points())
      if (detail::on_segment(G.vertices[e[0]].coords, G.vertices[e[1]].coords, p)) return false;
  return true;
}

// The two configuration points adjacent to a graph edge (the endpoints of the
// subdivision edge it crosses).
inline std::array<std::size_t, 2> adjacent_regions(const GammaGraph& G, const RegularSubdivision& S,
                                                   std::size_t edge) {
  const auto& e = G.edges.at(edge);
  for (auto v : e)
    if (G.vertices[v].kind == GammaVertex::Kind::EdgeMidpoint) {
      const auto& vs = S.cells()[G.vertices[v].cell].vertices;
      return {vs[0], vs[1]};
    }
  throw InvariantError("graph edge without a midpoint end");
}

}  // namespace syz
