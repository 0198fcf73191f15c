#pragma once

// Weighted moment map F_w(u) = sum rho_m(u) m with
// rho_m proportional to |e^{-w_m} x^m|^2, curve sampling in 2-D charts, and
// distances from the image to the graph of the subdivision.

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "syzmirror/gamma.hpp"
#include "syzmirror/weights.hpp"

namespace syz {

struct TorusPoint {
  std::vector<double> log_radii;
  std::vector<double> angles;
};

class MomentMap {
 public:
  MomentMap(std::vector<std::vector<double>> points, std::vector<double> w)
      : pts_(std::move(points)), w_(std::move(w)) {
    if (pts_.empty()) throw InputError("moment map needs at least one point");
    if (pts_.size() != w_.size()) throw InputError("points and weights differ in number");
    for (const auto& p : pts_)
      if (p.size() != pts_[0].size()) throw DimensionError("points of different ranks");
    for (double x : w_)
      if (!std::isfinite(x)) throw InputError("weights must be finite");
  }

  // All points of w with their weights, optionally scaled.
  static MomentMap of(const WeightFunction& w, double scale = 1) {
    std::vector<std::vector<double>> pts;
    std::vector<double> ws;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::vector<double> p;
      for (const auto& x : w.points()[i].coords) p.push_back(x.get_d());
      pts.push_back(std::move(p));
      ws.push_back(scale * w.w(i).get_d());
    }
    return {std::move(pts), std::move(ws)};
  }

  std::size_t rank() const { return pts_[0].size(); }
  std::size_t size() const { return pts_.size(); }
  const std::vector<std::vector<double>>& points() const { return pts_; }
  const std::vector<double>& weights() const { return w_; }

  std::vector<double> rho(const std::vector<double>& u) const {
    if (u.size() != rank()) throw DimensionError("torus point of the wrong rank");
    std::vector<double> l(size());
    double mx = -INFINITY;
    for (std::size_t i = 0; i < size(); ++i) {
      double d = 0;
      for (std::size_t k = 0; k < rank(); ++k) d += pts_[i][k] * u[k];
      l[i] = 2 * (d - w_[i]);
      mx = std::max(mx, l[i]);
    }
    if (!std::isfinite(mx)) throw PreconditionError("all moment map terms underflow");
    double s = 0;
    for (auto& x : l) s += (x = std::exp(x - mx));
    for (auto& x : l) x /= s;
    return l;
  }

  std::vector<double> eval(const std::vector<double>& u) const {
    auto r = rho(u);
    std::vector<double> F(rank(), 0.0);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t k = 0; k < rank(); ++k) F[k] += r[i] * pts_[i][k];
    return F;
  }

 private:
  std::vector<std::vector<double>> pts_;
  std::vector<double> w_;
};

// F_w at x restricted to the given points (weights looked up in w).
inline std::vector<double> moment_eval(const std::vector<LatticeVector>& points, const WeightFunction& w,
                                       const TorusPoint& x) {
  std::vector<std::vector<double>> pts;
  std::vector<double> ws;
  for (const auto& m : points) {
    auto i = w.index_of(m.coords);
    if (!i) throw InputError("point has no weight");
    std::vector<double> p;
    for (const auto& c : m.coords) p.push_back(c.get_d());
    pts.push_back(std::move(p));
    ws.push_back(w.w(*i).get_d());
  }
  return MomentMap(std::move(pts), std::move(ws)).eval(x.log_radii);
}

struct ArgmaxResult {
  std::vector<double> u;
  std::vector<double> F;
  int iterations = 0;
};

// Maximizes rho_m by damped Newton on f(u) = log sum exp(2(<m',u> - w')) - 2<m,u>,
// whose gradient is 2(F(u) - m). Stops once |F - m| < tol.
inline ArgmaxResult rho_argmax(const MomentMap& M, std::size_t target, double tol = 1e-6, int max_iter = 500) {
  std::size_t r = M.rank();
  const auto& m = M.points().at(target);
  auto f = [&](const std::vector<double>& u) {
    double mx = -INFINITY;
    std::vector<double> l(M.size());
    for (std::size_t i = 0; i < M.size(); ++i) {
      double d = 0;
      for (std::size_t k = 0; k < r; ++k) d += M.points()[i][k] * u[k];
      l[i] = 2 * (d - M.weights()[i]);
      mx = std::max(mx, l[i]);
    }
    double s = 0;
    for (double x : l) s += std::exp(x - mx);
    double dm = 0;
    for (std::size_t k = 0; k < r; ++k) dm += m[k] * u[k];
    return mx + std::log(s) - 2 * dm;
  };
  ArgmaxResult res;
  res.u.assign(r, 0.0);
  double lambda = 1e-3;
  for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
    auto rho = M.rho(res.u);
    Eigen::VectorXd F = Eigen::VectorXd::Zero(static_cast<long>(r));
    for (std::size_t i = 0; i < M.size(); ++i)
      for (std::size_t k = 0; k < r; ++k) F[static_cast<long>(k)] += rho[i] * M.points()[i][k];
    Eigen::VectorXd g(static_cast<long>(r));
    for (std::size_t k = 0; k < r; ++k) g[static_cast<long>(k)] = 2 * (F[static_cast<long>(k)] - m[k]);
    if (g.norm() / 2 < tol) break;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(static_cast<long>(r), static_cast<long>(r));
    for (std::size_t i = 0; i < M.size(); ++i) {
      Eigen::VectorXd d(static_cast<long>(r));
      for (std::size_t k = 0; k < r; ++k) d[static_cast<long>(k)] = M.points()[i][k] - F[static_cast<long>(k)];
      H += 4 * rho[i] * d * d.transpose();
    }
    double f0 = f(res.u);
    bool moved = false;
    for (int tries = 0; tries < 60 && !moved; ++tries) {
      Eigen::MatrixXd A = H + lambda * Eigen::MatrixXd::Identity(static_cast<long>(r), static_cast<long>(r));
      Eigen::VectorXd step = A.ldlt().solve(-g);
      std::vector<double> u = res.u;
      for (std::size_t k = 0; k < r; ++k) u[k] += step[static_cast<long>(k)];
      if (f(u) < f0) {
        res.u = u;
        lambda = std::max(lambda / 3, 1e-12);
        moved = true;
      } else {
        lambda *= 4;
      }
    }
    if (!moved) break;
  }
  res.F = M.eval(res.u);
  return res;
}

struct AmoebaSample {
  std::vector<std::array<double, 2>> points;
  double scale = 1;
  std::uint64_t seed = 0;
  std::size_t skipped = 0;  // slices whose restricted polynomial was degenerate
};

namespace detail {

// Roots of sum_j c_j z^j given log|c_j| and arg c_j (log|c_j| = -inf for
// absent terms). Roots are grouped by the segments of the lower hull of
// (j, -log|c_j|) and found from rescaled companion matrices; returns log|z|
// and arg z.
inline std::vector<std::pair<double, double>> log_roots(const std::vector<double>& lc, const std::vector<double>& ph) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < lc.size(); ++j)
    if (std::isfinite(lc[j])) idx.push_back(j);
  std::vector<std::pair<double, double>> out;
  if (idx.size() < 2) return out;
  std::vector<std::size_t> hull;
  for (auto j : idx) {
    while (hull.size() >= 2) {
      auto a = hull[hull.size() - 2], b = hull.back();
      double ya = -lc[a], yb = -lc[b], yj = -lc[j];
      if ((yb - ya) * static_cast<double>(j - a) >= (yj - ya) * static_cast<double>(b - a))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(j);
  }
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    std::size_t a = hull[h], b = hull[h + 1];
    double s = (lc[a] - lc[b]) / static_cast<double>(b - a);  // log|z| of this group
    std::size_t deg = b - a;
    std::vector<std::complex<double>> c(deg + 1);
    double mx = -INFINITY;
    for (std::size_t j = a; j <= b; ++j)
      if (std::isfinite(lc[j])) mx = std::max(mx, lc[j] + static_cast<double>(j) * s);
    for (std::size_t j = a; j <= b; ++j)
      c[j - a] = std::isfinite(lc[j]) ? std::polar(std::exp(lc[j] + static_cast<double>(j) * s - mx), ph[j])
                                      : std::complex<double>(0);
    if (deg == 1) {
      auto z = -c[0] / c[1];
      out.push_back({std::log(std::abs(z)) + s, std::arg(z)});
      continue;
    }
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(static_cast<long>(deg), static_cast<long>(deg));
    for (std::size_t i = 1; i < deg; ++i) C(static_cast<long>(i), static_cast<long>(i - 1)) = 1;
    for (std::size_t i = 0; i < deg; ++i) C(static_cast<long>(i), static_cast<long>(deg - 1)) = -c[i] / c[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    for (long i = 0; i < es.eigenvalues().size(); ++i) {
      auto z = es.eigenvalues()[i];
      if (std::abs(z) == 0) continue;
      out.push_back({std::log(std::abs(z)) + s, std::arg(z)});
    }
  }
  return out;
}

}  // namespace detail

// Samples F_w on the curve sum a_m x^m = 0 with a_m = exp(-t w_m + i phase_m).
// Slices alternately fix log|x1| or log|x2| (uniform over the range of cell
// slopes of t w, widened 1.5x) and a random angle, then solve for the other
// variable.
inline AmoebaSample amoeba_sample(const WeightFunction& w, const std::vector<double>& phases, double scale,
                                  std::size_t count, std::uint64_t seed) {
  if (w.rank() != 2) throw DimensionError("curve sampling needs a 2-dimensional configuration");
  if (phases.size() != w.size()) throw InputError("one phase per weight point required");
  if (!(scale > 0)) throw InputError("scale must be positive");
  auto M = MomentMap::of(w, scale);
  auto S = subdivision_by_weights(w);
  std::array<double, 2> lo{INFINITY, INFINITY}, hi{-INFINITY, -INFINITY};
  for (const auto& g : S.lower_functions())
    for (std::size_t k = 0; k < 2; ++k) {
      double x = scale * g.slope.at(k).get_d();
      lo[k] = std::min(lo[k], x);
      hi[k] = std::max(hi[k], x);
    }
  for (std::size_t k = 0; k < 2; ++k) {
    double c = (lo[k] + hi[k]) / 2, h = std::max((hi[k] - lo[k]) / 2, 1.0) * 1.5;
    lo[k] = c - h;
    hi[k] = c + h;
  }
  AmoebaSample out;
  out.scale = scale;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI), unit(0, 1);
  long emin = 0, emax = 0;
  for (const auto& p : M.points())
    for (double x : p) emin = std::min(emin, std::lround(x)), emax = std::max(emax, std::lround(x));
  std::size_t span = static_cast<std::size_t>(emax - emin) + 1;
  for (std::size_t slice = 0; out.points.size() < count; ++slice) {
    if (slice > 100 * count + 100) throw PreconditionError("curve sampling produced no points");
    std::size_t fix = slice % 2, other = 1 - fix;
    double uf = lo[fix] + (hi[fix] - lo[fix]) * unit(rng);
    double th = angle(rng);
    // Group terms by the exponent of the free variable, summing in log form.
    std::vector<std::vector<std::complex<double>>> groups(span);
    for (std::size_t i = 0; i < M.size(); ++i) {
      double ef = M.points()[i][fix];
      long eo = std::lround(M.points()[i][other]) - emin;
      groups[static_cast<std::size_t>(eo)].push_back({-M.weights()[i] + ef * uf, phases[i] + ef * th});
    }
    std::vector<double> lc(span, -INFINITY), ph(span, 0.0);
    for (std::size_t j = 0; j < span; ++j) {
      if (groups[j].empty()) continue;
      double mx = -INFINITY;
      for (auto t : groups[j]) mx = std::max(mx, t.real());
      std::complex<double> s = 0;
      for (auto t : groups[j]) s += std::polar(std::exp(t.real() - mx), t.imag());
      if (std::abs(s) < 1e-300) continue;
      lc[j] = mx + std::log(std::abs(s));
      ph[j] = std::arg(s);
    }
    auto roots = detail::log_roots(lc, ph);
    if (roots.empty()) {
      ++out.skipped;
      continue;
    }
    for (const auto& [lr, arg] : roots) {
      (void)arg;
      std::vector<double> u(2);
      u[fix] = uf;
      u[other] = lr;
      auto F = M.eval(u);
      out.points.push_back({F[0], F[1]});
      if (out.points.size() == count) break;
    }
  }
  return out;
}

// Phases from complex coefficients, after checking |a_m| = exp(-t w_m).
inline std::vector<double> coefficient_phases(const WeightFunction& w, const std::vector<std::complex<double>>& a,
                                              double scale, double rel_tol = 1e-9) {
  if (a.size() != w.size()) throw InputError("one coefficient per weight point required");
  std::vector<double> ph;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double expect = -scale * w.w(i).get_d();
    if (std::abs(a[i]) == 0 || std::abs(std::log(std::abs(a[i])) - expect) > rel_tol * std::max(1.0, std::abs(expect)))
      throw PreconditionError("coefficient modulus does not match exp(-w)");
    ph.push_back(std::arg(a[i]));
  }
  return ph;
}

struct FatteningReport {
  double max_dist = 0;
  std::vector<std::size_t> histogram;  // ten equal bins over [0, max_dist]
};

inline double distance_to_graph(const std::array<double, 2>& p, const GammaGraph& g) {
  double best = INFINITY;
  for (const auto& e : g.edges) {
    const auto& a = g.vertices[e[0]].coords;
    const auto& b = g.vertices[e[1]].coords;
    double ax = a[0].get_d(), ay = a[1].get_d(), dx = b[0].get_d() - ax, dy = b[1].get_d() - ay;
    double L = dx * dx + dy * dy;
    double t = L > 0 ? std::clamp(((p[0] - ax) * dx + (p[1] - ay) * dy) / L, 0.0, 1.0) : 0.0;
    best = std::min(best, std::hypot(ax + t * dx - p[0], ay + t * dy - p[1]));
  }
  if (g.edges.empty())
    for (const auto& v : g.vertices)
      best = std::min(best, std::hypot(v.coords[0].get_d() - p[0], v.coords[1].get_d() - p[1]));
  return best;
}

inline FatteningReport fattening_distance(const std::vector<std::array<double, 2>>& pts, const GammaGraph& g) {
  if (pts.empty()) throw InputError("empty sample");
  if (g.vertices.empty()) throw InputError("empty graph");
  std::vector<double> d;
  for (const auto& p : pts) d.push_back(distance_to_graph(p, g));
  FatteningReport r;
  r.max_dist = *std::max_element(d.begin(), d.end());
  r.histogram.assign(10, 0);
  for (double x : d) {
    std::size_t b = r.max_dist > 0 ? std::min<std::size_t>(9, static_cast<std::size_t>(10 * x / r.max_dist)) : 0;
    ++r.histogram[b];
  }
  return r;
}

}  // namespace syz
