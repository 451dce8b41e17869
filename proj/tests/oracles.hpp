#pragma once
// Independent reference computations for the tests. Nothing here calls the
// library code it is used to check.

#include <algorithm>
#include <cmath>
#include <vector>

#include "symlab/direction.hpp"
#include "symlab/polygon.hpp"
#include "symlab/rng.hpp"

namespace oracle {

using symlab::Vec2;
using symlab::Vec3;

inline double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Jarvis march, quadratic time. Counterclockwise, collinear points dropped.
inline std::vector<Vec2> gift_wrap(const std::vector<Vec2>& pts) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].x() < pts[start].x() || (pts[i].x() == pts[start].x() && pts[i].y() < pts[start].y())) start = i;
  std::vector<Vec2> hull;
  std::size_t cur = start;
  do {
    hull.push_back(pts[cur]);
    std::size_t next = cur == 0 ? 1 : 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == cur) continue;
      const double c = cross(pts[cur], pts[next], pts[i]);
      const bool farther = (pts[i] - pts[cur]).squaredNorm() > (pts[next] - pts[cur]).squaredNorm();
      if (c < 0 || (c == 0 && farther)) next = i;
    }
    cur = next;
  } while (cur != start && hull.size() <= pts.size());
  return hull;
}

// Vertex test for points in general position in R^3: p is a vertex iff it
// belongs to a triple whose plane leaves every other point on one side.
inline std::vector<bool> brute_vertices_3d(const std::vector<Vec3>& p) {
  const std::size_t n = p.size();
  std::vector<bool> v(n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        if (v[i] && v[j] && v[k]) continue;
        const Vec3 nrm = (p[j] - p[i]).cross(p[k] - p[i]);
        bool pos = false, neg = false;
        for (std::size_t m = 0; m < n && !(pos && neg); ++m) {
          if (m == i || m == j || m == k) continue;
          const double s = nrm.dot(p[m] - p[i]);
          pos |= s > 0;
          neg |= s < 0;
        }
        if (!(pos && neg)) v[i] = v[j] = v[k] = true;
      }
  return v;
}

inline std::vector<Vec2> random_points_in_disk(symlab::Rng& rng, int n, double r = 1.0) {
  std::vector<Vec2> pts;
  while (static_cast<int>(pts.size()) < n) {
    const Vec2 x(rng.uniform(-r, r), rng.uniform(-r, r));
    if (x.squaredNorm() <= r * r) pts.push_back(x);
  }
  return pts;
}

// Max of <x, theta> over points sampled densely along every edge.
inline double dense_support(const std::vector<Vec2>& cycle, const Vec2& theta, int per_edge = 2000) {
  double best = -1e300;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Vec2& a = cycle[i];
    const Vec2& b = cycle[(i + 1) % cycle.size()];
    for (int k = 0; k <= per_edge; ++k) best = std::max(best, (a + (b - a) * (double(k) / per_edge)).dot(theta));
  }
  return best;
}

inline bool inside_ccw(const std::vector<Vec2>& c, const Vec2& x) {
  if (c.size() < 3) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (cross(c[i], c[(i + 1) % c.size()], x) < 0) return false;
  return true;
}

inline double seg_dist(const Vec2& x, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double l2 = ab.squaredNorm();
  const double t = l2 > 0 ? std::clamp((x - a).dot(ab) / l2, 0.0, 1.0) : 0.0;
  return (x - (a + t * ab)).norm();
}

inline double dist_to_polygon(const Vec2& x, const std::vector<Vec2>& c) {
  if (inside_ccw(c, x)) return 0.0;
  double d = 1e300;
  for (std::size_t i = 0; i < c.size(); ++i) d = std::min(d, seg_dist(x, c[i], c[(i + 1) % c.size()]));
  return d;
}

// For convex sets the farthest point of A from B is a vertex of A.
inline double vertex_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double h = 0.0;
  for (const auto& x : a) h = std::max(h, dist_to_polygon(x, b));
  for (const auto& x : b) h = std::max(h, dist_to_polygon(x, a));
  return h;
}

inline double shoelace(const std::vector<Vec2>& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += cross(Vec2(0, 0), c[i], c[(i + 1) % c.size()]);
  return 0.5 * s;
}

struct McResult {
  double mean;
  double stderr_;
};

// Monte-Carlo mean of an indicator-weighted quantity over a box.
template <class F>
McResult mc_box(symlab::Rng& rng, const Vec2& lo, const Vec2& hi, int n, F&& f) {
  const double area = (hi - lo).prod();
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const Vec2 x(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()));
    const double v = area * f(x);
    s += v;
    s2 += v * v;
  }
  const double m = s / n;
  return {m, std::sqrt(std::max(0.0, s2 / n - m * m) / n)};
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

// Rejection threshold of the two-sample KS test at level alpha.
inline double ks_critical(std::size_t n, std::size_t m, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2));
  return c * std::sqrt(double(n + m) / (double(n) * m));
}

// One-sample KS statistic against a continuous CDF.
template <class Cdf>
double ks_one_sample(std::vector<double> a, Cdf&& cdf) {
  std::sort(a.begin(), a.end());
  double d = 0.0;
  const double n = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return d;
}

inline double ks_one_critical(std::size_t n, double alpha) { return std::sqrt(-0.5 * std::log(alpha / 2) / n); }

// Upper 0.001 quantile of chi-square with 35 degrees of freedom.
inline constexpr double kChi2_35_999 = 66.619;

}  // namespace oracle
