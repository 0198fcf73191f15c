#pragma once

// Regular subdivisions of point configurations induced by heights (lower hull
// of the lifted points), in any dimension.

#include <map>
#include <numeric>
#include <optional>

#include "syzmirror/hull.hpp"

namespace syz {

struct SubdivisionCell {
  std::vector<std::size_t> points;    // all configuration points lying in the cell
  std::vector<std::size_t> vertices;  // the cell's vertices (subset of points)
  long dim = -1;
};

// Affine function on the configuration's affine hull, in chart coordinates:
// value(y) = constant + slope . y.
struct ChartAffine {
  Rational constant;
  QVec slope;
  Rational operator()(const QVec& y) const { return constant + dot(slope, y); }
};

class RegularSubdivision {
 public:
  RegularSubdivision() = default;

  static RegularSubdivision compute(std::vector<QVec> pts, std::vector<Rational> heights) {
    if (pts.size() != heights.size()) throw InputError("points and heights differ in number");
    if (pts.empty()) throw InputError("empty point configuration");
    RegularSubdivision S;
    S.points_ = std::move(pts);
    S.heights_ = std::move(heights);
    {
      auto sorted = S.points_;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("repeated point in configuration");
    }
    S.chart_ = AffineChart::of(S.points_);
    std::size_t k = S.chart_.dim(), n = S.points_.size();
    for (const auto& p : S.points_) S.coords_.push_back(S.chart_.coordinates(p));
    if (k == 0) {
      S.cells_.push_back({{0}, {0}, 0});
      S.lower_.push_back({S.heights_[0], {}});
      S.lower_points_.push_back({0});
      S.finish();
      return S;
    }
    ZMat gens;
    for (std::size_t i = 0; i < n; ++i) {
      QVec g{Rational(1)};
      g.insert(g.end(), S.coords_[i].begin(), S.coords_[i].end());
      g.push_back(S.heights_[i]);
      gens.push_back(clear_denominators(g));
    }
    ZVec up(k + 2, Integer(0));
    up[k + 1] = 1;
    gens.push_back(up);
    auto rays = cone_extreme_rays(gens, k + 2);
    std::vector<std::vector<std::size_t>> facet_sets;
    for (const auto& r : rays) {
      // r0 + a . y + ah * h >= 0
      std::vector<std::size_t> on;
      for (std::size_t i = 0; i < n; ++i) {
        Rational val = Rational(r[0]) + Rational(r[k + 1]) * S.heights_[i];
        for (std::size_t j = 0; j < k; ++j) val += r[j + 1] * S.coords_[i][j];
        if (val == 0) on.push_back(i);
      }
      facet_sets.push_back(on);
      S.facet_rays_.push_back(r);
      S.facet_points_.push_back(on);
      if (r[k + 1] > 0) {
        ChartAffine g;
        g.constant = -Rational(r[0]) / Rational(r[k + 1]);
        for (std::size_t j = 0; j < k; ++j) g.slope.push_back(-Rational(r[j + 1]) / Rational(r[k + 1]));
        S.lower_.push_back(g);
        S.lower_points_.push_back(on);
      }
    }
    // Faces of the lifted polyhedron as point sets: intersections of facets.
    std::set<std::vector<std::size_t>> seen(facet_sets.begin(), facet_sets.end());
    std::vector<std::vector<std::size_t>> work(seen.begin(), seen.end());
    while (!work.empty()) {
      auto cur = std::move(work.back());
      work.pop_back();
      for (const auto& fs : facet_sets) {
        std::vector<std::size_t> meet;
        std::set_intersection(cur.begin(), cur.end(), fs.begin(), fs.end(), std::back_inserter(meet));
        if (meet.empty() || meet.size() == cur.size()) continue;
        if (seen.insert(meet).second) work.push_back(std::move(meet));
      }
    }
    std::set<std::size_t> singletons;
    for (const auto& s : seen)
      if (s.size() == 1) singletons.insert(s[0]);
    for (const auto& s : seen) {
      bool bounded = false;
      for (const auto& lp : S.lower_points_)
        if (std::includes(lp.begin(), lp.end(), s.begin(), s.end())) {
          bounded = true;
          break;
        }
      if (!bounded) continue;
      SubdivisionCell c;
      c.points = s;
      for (auto i : s)
        if (singletons.count(i)) c.vertices.push_back(i);
      std::vector<QVec> ys;
      for (auto i : s) ys.push_back(S.coords_[i]);
      c.dim = affine_dimension(ys);
      S.cells_.push_back(std::move(c));
    }
    S.finish();
    return S;
  }

  const std::vector<QVec>& points() const { return points_; }
  const std::vector<Rational>& heights() const { return heights_; }
  const std::vector<QVec>& chart_coords() const { return coords_; }
  const AffineChart& chart() const { return chart_; }
  long dim() const { return static_cast<long>(chart_.dim()); }
  const std::vector<SubdivisionCell>& cells() const { return cells_; }
  const std::vector<std::size_t>& top_cells() const { return top_; }
  const std::vector<ChartAffine>& lower_functions() const { return lower_; }
  const std::vector<std::vector<std::size_t>>& lower_point_sets() const { return lower_points_; }

  // Affine function equal to the height at point i and strictly below every
  // other height, when i is a vertex: the sum of all lifted facet inequalities
  // tight at i, vertical ones included.
  std::optional<ChartAffine> strict_support(std::size_t i) const {
    std::size_t k = chart_.dim();
    if (k == 0) return points_.size() == 1 ? std::optional<ChartAffine>(ChartAffine{heights_[0], {}}) : std::nullopt;
    ZVec sum(k + 2, Integer(0));
    for (std::size_t f = 0; f < facet_rays_.size(); ++f)
      if (std::binary_search(facet_points_[f].begin(), facet_points_[f].end(), i))
        for (std::size_t j = 0; j < k + 2; ++j) sum[j] += facet_rays_[f][j];
    if (sgn(sum[k + 1]) <= 0) return std::nullopt;
    ChartAffine g;
    g.constant = -Rational(sum[0]) / Rational(sum[k + 1]);
    for (std::size_t j = 0; j < k; ++j) g.slope.push_back(-Rational(sum[j + 1]) / Rational(sum[k + 1]));
    for (std::size_t j = 0; j < points_.size(); ++j) {
      Rational val = g(coords_[j]);
      if (j == i ? val != heights_[j] : val >= heights_[j]) return std::nullopt;
    }
    return g;
  }

  std::vector<std::size_t> cells_of_dim(long d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i].dim == d) out.push_back(i);
    return out;
  }

  // Every configuration point is a vertex of the subdivision.
  bool all_points_are_vertices() const { return cells_of_dim(0).size() == points_.size(); }

  std::size_t cell_with_points(const std::vector<std::size_t>& pts) const {
    auto it = index_.find(pts);
    if (it == index_.end()) throw InvariantError("point set is not a cell");
    return it->second;
  }

  bool is_face(std::size_t small, std::size_t big) const {
    const auto& a = cells_[small].points;
    const auto& b = cells_[big].points;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  QVec cell_barycenter(std::size_t c) const {
    std::vector<QVec> vs;
    for (auto v : cells_[c].vertices) vs.push_back(points_[v]);
    return barycenter(vs);
  }

  // Cells of dimension d-1 contained in cell c.
  std::vector<std::size_t> facets_of(std::size_t c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i].dim == cells_[c].dim - 1 && is_face(i, c)) out.push_back(i);
    return out;
  }

  // Top cells containing cell c.
  std::vector<std::size_t> cofaces_top(std::size_t c) const {
    std::vector<std::size_t> out;
    for (auto t : top_)
      if (is_face(c, t)) out.push_back(t);
    return out;
  }

  // Minimal cell containing x (x on the configuration's hull): the lower
  // functions attaining their maximum at x are the top cells through x.
  std::size_t locate(const QVec& x) const {
    if (!chart_.on_hull(x)) throw PreconditionError("point is off the configuration's affine hull");
    QVec y = chart_.coordinates(x);
    Rational best;
    std::vector<std::size_t> arg;
    for (std::size_t i = 0; i < lower_.size(); ++i) {
      Rational v = lower_[i](y);
      if (arg.empty() || v > best) {
        best = v;
        arg = {i};
      } else if (v == best) {
        arg.push_back(i);
      }
    }
    // Intersect the top cells, then keep the smallest cell whose hull holds x.
    std::vector<std::size_t> common = lower_points_[arg[0]];
    for (std::size_t j = 1; j < arg.size(); ++j) {
      std::vector<std::size_t> meet;
      std::set_intersection(common.begin(), common.end(), lower_points_[arg[j]].begin(),
                            lower_points_[arg[j]].end(), std::back_inserter(meet));
      common = std::move(meet);
    }
    std::size_t cell = cell_with_points(common);
    if (!cell_polytope(cell).contains(x)) throw PreconditionError("point is outside the subdivided region");
    // Descend to the face holding x in its relative interior.
    while (true) {
      bool moved = false;
      for (auto f : facets_of(cell))
        if (cell_polytope(f).contains(x)) {
          cell = f;
          moved = true;
          break;
        }
      if (!moved) return cell;
    }
  }

  const ConvexPolytope& cell_polytope(std::size_t c) const {
    auto it = cell_hulls_.find(c);
    if (it != cell_hulls_.end()) return it->second;
    std::vector<QVec> vs;
    for (auto v : cells_[c].vertices) vs.push_back(points_[v]);
    return cell_hulls_.emplace(c, ConvexPolytope::from_points(vs)).first->second;
  }

 private:
  void finish() {
    std::sort(cells_.begin(), cells_.end(), [](const SubdivisionCell& a, const SubdivisionCell& b) {
      return a.dim != b.dim ? a.dim < b.dim : a.points < b.points;
    });
    long top = cells_.empty() ? -1 : cells_.back().dim;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      index_[cells_[i].points] = i;
      if (cells_[i].dim == top) top_.push_back(i);
    }
  }

  std::vector<QVec> points_;
  std::vector<Rational> heights_;
  AffineChart chart_;
  std::vector<QVec> coords_;
  std::vector<SubdivisionCell> cells_;
  std::vector<std::size_t> top_;
  std::vector<ChartAffine> lower_;
  std::vector<ZVec> facet_rays_;
  std::vector<std::vector<std::size_t>> facet_points_;
  std::vector<std::vector<std::size_t>> lower_points_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
  mutable std::map<std::size_t, ConvexPolytope> cell_hulls_;
};

}  // namespace syz
