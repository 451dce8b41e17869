#include "symlab/metrics.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "symlab/error.hpp"
#include "symlab/directions.hpp"
#include "symlab/polygon_metrics.hpp"

namespace symlab {

namespace {

const ConvexPolygon* as_poly(const Body& b) { return std::get_if<ConvexPolygon>(&b); }

void check_same_dim(int a, int b, const char* what) {
  if (a != b) fail(ErrorKind::DimensionMismatch, std::string(what) + ": dimension mismatch");
}

double hull3_volume(const VertexHull& h) {
  if (h.degenerate() || h.faces().empty()) return 0.0;
  const Mat& v = h.vertices();
  const Vec3 c = v.rowwise().mean();
  double s = 0;
  for (const auto& f : h.faces()) {
    const Vec3 a = v.col(f.idx[0]), b = v.col(f.idx[1]), d = v.col(f.idx[2]);
    s += (a - c).dot((b - c).cross(d - c));
  }
  return s / 6.0;
}

double hull3_mean_radius(const VertexHull& h) {
  const Mat& v = h.vertices();
  std::map<std::pair<int, int>, std::pair<int, int>> edge_faces;
  const auto& faces = h.faces();
  for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
    for (int e = 0; e < 3; ++e) {
      const auto key = std::minmax(faces[fi].idx[e], faces[fi].idx[(e + 1) % 3]);
      auto [it, fresh] = edge_faces.try_emplace(key, fi, -1);
      if (!fresh) it->second.second = fi;
    }
  }
  double s = 0;
  for (const auto& [edge, fs] : edge_faces) {
    if (fs.second < 0) continue;
    const double len = (v.col(edge.first) - v.col(edge.second)).norm();
    const Vec3& n1 = faces[fs.first].normal;
    const Vec3& n2 = faces[fs.second].normal;
    // atan2 stays accurate for nearly coplanar faces, where acos loses half the digits.
    s += len * std::atan2(n1.cross(n2).norm(), n1.dot(n2));
  }
  return s / (8.0 * std::numbers::pi);
}

double hull3_inertia(const VertexHull& h) {
  if (h.degenerate()) return 0.0;
  const Mat& v = h.vertices();
  double s = 0;
  for (const auto& f : h.faces()) {
    const Vec3 a = v.col(f.idx[0]), b = v.col(f.idx[1]), c = v.col(f.idx[2]);
    const double vol = a.dot(b.cross(c)) / 6.0;
    s += vol / 20.0 * (a.squaredNorm() + b.squaredNorm() + c.squaredNorm() + (a + b + c).squaredNorm());
  }
  return s;
}

double grid_sup_diff(const Body& a, const Body* b, double r, const SphereGrid& grid) {
  double best = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Vec th = grid.node(j);
    const double fb = b ? support_eval(*b, th) : r;
    best = std::max(best, std::abs(support_eval(a, th) - fb));
  }
  return best;
}

Estimate mc_symmetric_difference(const Body& a, const Body* b, double r, Rng& rng, int samples) {
  const int d = body_dim(a);
  Mat va = vertex_matrix(a);
  Vec lo = va.rowwise().minCoeff(), hi = va.rowwise().maxCoeff();
  if (b) {
    const Mat vb = vertex_matrix(*b);
    lo = lo.cwiseMin(vb.rowwise().minCoeff());
    hi = hi.cwiseMax(vb.rowwise().maxCoeff());
  } else {
    lo = lo.cwiseMin(Vec::Constant(d, -r));
    hi = hi.cwiseMax(Vec::Constant(d, r));
  }
  const double box = (hi - lo).prod();
  if (box <= 0) return {0.0, 0.0};
  long hits = 0;
  Vec x(d);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < d; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    const bool in_a = body_contains(a, x, 0.0);
    const bool in_b = b ? body_contains(*b, x, 0.0) : x.norm() <= r;
    hits += in_a != in_b;
  }
  const double p = static_cast<double>(hits) / samples;
  return {box * p, box * std::sqrt(p * (1 - p) / samples)};
}

}  // namespace

bool body_contains(const Body& b, const Vec& x, double tol) {
  if (const auto* p = as_poly(b)) return p->contains({x[0], x[1]}, tol);
  return std::get<VertexHull>(b).contains(x, tol);
}

double volume(const Body& b) {
  if (const auto* p = as_poly(b)) return polygon_area(*p);
  const auto& h = std::get<VertexHull>(b);
  if (h.degenerate()) return 0.0;
  if (h.dim() == 2) return polygon_area(h.as_polygon());
  if (h.dim() == 3) return hull3_volume(h);
  fail(ErrorKind::UnsupportedDimension, "volume: exact volume only for d <= 3");
}

double mean_radius_quadrature(const Body& b, const SphereGrid& grid) {
  check_same_dim(body_dim(b), grid.dim(), "mean_radius");
  double s = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) s += grid.weights()[j] * support_eval(b, grid.node(j));
  return s;
}

double mean_radius(const Body& b, const SphereGrid& grid) {
  check_same_dim(body_dim(b), grid.dim(), "mean_radius");
  if (const auto* p = as_poly(b)) return polygon_perimeter(*p) / (2.0 * std::numbers::pi);
  const auto& h = std::get<VertexHull>(b);
  if (h.dim() == 2) return polygon_perimeter(h.as_polygon()) / (2.0 * std::numbers::pi);
  if (h.dim() == 3 && !h.degenerate()) return hull3_mean_radius(h);
  return mean_radius_quadrature(b, grid);
}

Estimate mean_radius_mc(const Body& b, Rng& rng, int samples) {
  const int d = body_dim(b);
  double sum = 0, sum2 = 0;
  for (int s = 0; s < samples; ++s) {
    const double f = support_eval(b, sample_haar(rng, d));
    sum += f;
    sum2 += f * f;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - mean * mean);
  return {mean, std::sqrt(var / samples)};
}

double circumradius(const Body& b) {
  const Mat v = vertex_matrix(b);
  return v.colwise().norm().maxCoeff();
}

double equivalent_radius(const Body& b) {
  const int d = body_dim(b);
  return std::pow(volume(b) / unit_ball_volume(d), 1.0 / d);
}

double hausdorff(const Body& a, const Body& b, const SphereGrid& grid) {
  check_same_dim(body_dim(a), body_dim(b), "hausdorff");
  if (body_dim(a) == 2) return hausdorff_exact(to_polygon(a), to_polygon(b));
  check_same_dim(body_dim(a), grid.dim(), "hausdorff");
  return grid_sup_diff(a, &b, 0.0, grid);
}

double hausdorff(const Body& a, const BallSpec& ball, const SphereGrid& grid) {
  check_same_dim(body_dim(a), ball.dim, "hausdorff");
  if (ball.dim == 2) return hausdorff_exact(to_polygon(a), ball.radius);
  const auto& h = std::get<VertexHull>(a);
  if (h.dim() == 3 && !h.degenerate()) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& f : h.faces()) lo = std::min(lo, f.offset);
    if (lo > 0) {
      const double hi = circumradius(a);
      return std::max(std::abs(hi - ball.radius), std::abs(lo - ball.radius));
    }
  }
  check_same_dim(body_dim(a), grid.dim(), "hausdorff");
  return grid_sup_diff(a, nullptr, ball.radius, grid);
}

double hausdorff(const BallSpec& a, const BallSpec& b) {
  check_same_dim(a.dim, b.dim, "hausdorff");
  return std::abs(a.radius - b.radius);
}

Estimate nikodym(const Body& a, const Body& b) {
  check_same_dim(body_dim(a), body_dim(b), "nikodym");
  if (body_dim(a) != 2) fail(ErrorKind::UnsupportedDimension, "nikodym: d > 2 needs an RNG (Monte Carlo)");
  const ConvexPolygon pa = to_polygon(a), pb = to_polygon(b);
  const double inter = polygon_area(intersect(pa, pb));
  return {std::max(0.0, polygon_area(pa) + polygon_area(pb) - 2.0 * inter), 0.0};
}

Estimate nikodym(const Body& a, const BallSpec& ball) {
  check_same_dim(body_dim(a), ball.dim, "nikodym");
  if (ball.dim != 2) fail(ErrorKind::UnsupportedDimension, "nikodym: d > 2 needs an RNG (Monte Carlo)");
  const ConvexPolygon pa = to_polygon(a);
  const double disk = std::numbers::pi * ball.radius * ball.radius;
  const double inter = disk_intersection_area(pa, ball.radius);
  return {std::max(0.0, polygon_area(pa) + disk - 2.0 * inter), 0.0};
}

Estimate nikodym(const Body& a, const Body& b, Rng& rng, int samples) {
  check_same_dim(body_dim(a), body_dim(b), "nikodym");
  if (body_dim(a) == 2) return nikodym(a, b);
  return mc_symmetric_difference(a, &b, 0.0, rng, samples);
}

Estimate nikodym(const Body& a, const BallSpec& ball, Rng& rng, int samples) {
  check_same_dim(body_dim(a), ball.dim, "nikodym");
  if (ball.dim == 2) return nikodym(a, ball);
  return mc_symmetric_difference(a, nullptr, ball.radius, rng, samples);
}

double inertia(const Body& b) {
  if (const auto* p = as_poly(b)) return polygon_inertia(*p);
  const auto& h = std::get<VertexHull>(b);
  if (h.dim() == 2) return polygon_inertia(h.as_polygon());
  if (h.dim() == 3) return hull3_inertia(h);
  fail(ErrorKind::UnsupportedDimension, "inertia: d in {2, 3} only");
}

double inertia(const BallSpec& ball) {
  const int d = ball.dim;
  return d * unit_ball_volume(d) * std::pow(ball.radius, d + 2) / (d + 2);
}

Estimate volume_mc(const Body& b, Rng& rng, int samples) {
  const int d = body_dim(b);
  const Mat v = vertex_matrix(b);
  const Vec lo = v.rowwise().minCoeff(), hi = v.rowwise().maxCoeff();
  const double box = (hi - lo).prod();
  long hits = 0;
  Vec x(d);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < d; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    hits += body_contains(b, x, 0.0);
  }
  const double p = static_cast<double>(hits) / samples;
  return {box * p, box * std::sqrt(p * (1 - p) / samples)};
}

}  // namespace symlab
