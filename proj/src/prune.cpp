#include <algorithm>
#include <cmath>
#include <numbers>

#include "symlab/error.hpp"
#include "symlab/polygon_metrics.hpp"
#include "symlab/symmetrize.hpp"

namespace symlab {

PruneResult prune_polygon(const ConvexPolygon& p, std::size_t budget, Preserve preserve) {
  if (budget < 3) fail(ErrorKind::InvalidConfig, "vertex budget must be at least 3");
  PruneResult out{p, 0.0};
  if (p.size() <= budget) return out;

  const double area0 = polygon_area(p);
  const double perim0 = polygon_perimeter(p);
  std::vector<Vec2> v = p.vertices();

  while (v.size() > budget) {
    const std::size_t n = v.size();
    const std::size_t need = n - budget;
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = v[(i + n - 1) % n];
      const Vec2& b = v[(i + 1) % n];
      const Vec2 chord = b - a;
      const double len = chord.norm();
      h[i] = len > 0 ? std::abs(cross2(chord, v[i] - a)) / len : (v[i] - a).norm();
    }
    // Candidates in increasing height. Non-adjacency caps removals at n/2,
    // so only the smallest ~n/2 + need heights can ever be taken.
    std::vector<std::pair<double, std::size_t>> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = {h[i], i};
    const std::size_t take = std::min(n, 2 * need + 16);
    if (take < n) std::nth_element(order.begin(), order.begin() + take, order.end());
    std::sort(order.begin(), order.begin() + take);

    std::vector<char> removed(n, 0);
    std::size_t count = 0;
    double pass_err = 0.0;
    for (std::size_t k = 0; k < take && count < need; ++k) {
      const std::size_t i = order[k].second;
      if (removed[(i + n - 1) % n] || removed[(i + 1) % n]) continue;
      removed[i] = 1;
      ++count;
      pass_err = std::max(pass_err, h[i]);
    }
    std::vector<Vec2> next;
    next.reserve(n - count);
    for (std::size_t i = 0; i < n; ++i)
      if (!removed[i]) next.push_back(v[i]);
    out.hausdorff_error += pass_err;
    v = std::move(next);
  }

  ConvexPolygon pruned = ConvexPolygon::from_ccw(std::move(v));
  double s = 1.0;
  if (preserve == Preserve::Area) {
    const double a1 = polygon_area(pruned);
    if (a1 > 0) s = std::sqrt(area0 / a1);
  } else if (preserve == Preserve::Perimeter) {
    const double p1 = polygon_perimeter(pruned);
    if (p1 > 0) s = perim0 / p1;
  }
  if (s != 1.0) {
    double r = 0.0;
    for (const auto& x : pruned.vertices()) r = std::max(r, x.norm());
    out.hausdorff_error += std::abs(s - 1.0) * r;
    pruned = pruned.scaled(s);
  }
  out.polygon = std::move(pruned);
  return out;
}

std::vector<Vec3> fibonacci_sphere(int n) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

HullPruneResult prune_hull3(const VertexHull& h, std::size_t budget,
                            const std::function<double(const Vec3&)>& exact_support) {
  if (budget < 4) fail(ErrorKind::InvalidConfig, "vertex budget must be at least 4");
  if (h.dim() != 3) fail(ErrorKind::DimensionMismatch, "prune_hull3 needs a d = 3 hull");
  HullPruneResult out{h, 0.0};
  const auto check = fibonacci_sphere(static_cast<int>(std::max<std::size_t>(4 * budget, 4096)));
  auto max_gap = [&](const VertexHull& g) {
    double e = 0.0;
    for (const auto& t : check) e = std::max(e, std::abs(exact_support(t) - g.support(t)));
    return e;
  };
  if (h.size() <= budget) return out;

  const Mat& V = h.vertices();
  std::vector<char> keep(h.size(), 0);
  std::size_t kept = 0;
  // Shrink the direction count until the distinct maximizers fit the budget.
  for (std::size_t m = budget; m >= 4 && (kept == 0 || kept > budget); m = m * 7 / 8) {
    std::fill(keep.begin(), keep.end(), 0);
    kept = 0;
    for (const auto& t : fibonacci_sphere(static_cast<int>(m))) {
      Eigen::Index best = 0;
      (V.transpose() * t).maxCoeff(&best);
      if (!keep[static_cast<std::size_t>(best)]) {
        keep[static_cast<std::size_t>(best)] = 1;
        ++kept;
      }
    }
  }
  Mat sel(3, static_cast<Eigen::Index>(kept));
  Eigen::Index c = 0;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (keep[i]) sel.col(c++) = V.col(static_cast<Eigen::Index>(i));
  out.hull = make_hull(sel);
  out.hausdorff_error = max_gap(out.hull);
  return out;
}

}  // namespace symlab
