#include <algorithm>
#include <cmath>
#include <numbers>

#include "symlab/error.hpp"
#include "symlab/metrics.hpp"
#include "symlab/polygon_metrics.hpp"
#include "symlab/symmetrize.hpp"

namespace symlab {

std::string_view to_string(OperatorKind op) {
  return op == OperatorKind::Steiner ? "steiner" : "minkowski";
}

OperatorKind operator_from_string(std::string_view s) {
  std::string t(s);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "steiner") return OperatorKind::Steiner;
  if (t == "minkowski") return OperatorKind::Minkowski;
  fail(ErrorKind::InvalidConfig, "unknown operator '" + std::string(s) + "'");
}

namespace {

// Monotone in the polar angle, with range [0, 4).
double pseudo_angle(const Vec2& e) {
  const double t = e.y() / (std::abs(e.x()) + std::abs(e.y()));
  if (e.x() >= 0) return t >= 0 ? t : 4.0 + t;
  return 2.0 - t;
}

// Edge vectors starting from the bottom-most (then left-most) vertex, with
// their pseudo-angles.
struct EdgeWalk {
  Vec2 start;
  std::vector<Vec2> edges;
  std::vector<double> angles;
};

EdgeWalk edge_walk(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  std::size_t s = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (v[i].y() < v[s].y() || (v[i].y() == v[s].y() && v[i].x() < v[s].x())) s = i;
  EdgeWalk w{v[s], {}, {}};
  if (n < 2) return w;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 e = v[(s + k + 1) % n] - v[(s + k) % n];
    double a = pseudo_angle(e);
    // The closing edge may round to angle 0; it belongs at the end.
    if (k + 1 == n && a < 1e-15) a = 4.0;
    w.edges.push_back(e);
    w.angles.push_back(a);
  }
  return w;
}

}  // namespace

ConvexPolygon minkowski_sum(const ConvexPolygon& p, const ConvexPolygon& q) {
  if (p.empty() || q.empty()) fail(ErrorKind::EmptyInput, "minkowski_sum of an empty polygon");
  const EdgeWalk a = edge_walk(p);
  const EdgeWalk b = edge_walk(q);
  std::vector<Vec2> out;
  out.reserve(a.edges.size() + b.edges.size() + 1);
  Vec2 cur = a.start + b.start;
  out.push_back(cur);
  std::size_t i = 0, j = 0;
  while (i < a.edges.size() || j < b.edges.size()) {
    if (j == b.edges.size() || (i < a.edges.size() && a.angles[i] <= b.angles[j])) {
      cur += a.edges[i++];
    } else {
      cur += b.edges[j++];
    }
    out.push_back(cur);
  }
  out.pop_back();  // back at the start
  if (out.size() < 3) return ConvexPolygon::hull_of(out);
  return ConvexPolygon::from_ccw(std::move(out));
}

namespace {

VertexHull pairwise_half_sum(const VertexHull& h, const VertexHull& r) {
  const Mat& A = h.vertices();
  const Mat& B = r.vertices();
  Mat pts(A.rows(), A.cols() * B.cols());
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < A.cols(); ++i)
    for (Eigen::Index j = 0; j < B.cols(); ++j) pts.col(c++) = 0.5 * (A.col(i) + B.col(j));
  return make_hull(pts);
}

// Candidate vertices of (H + R)/2 from support maximizers over a direction
// set, for vertex counts where all pairs would be too many.
VertexHull sampled_half_sum(const VertexHull& h, const VertexHull& r, int n_dirs) {
  const Mat& A = h.vertices();
  const Mat& B = r.vertices();
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (const auto& t : fibonacci_sphere(n_dirs)) {
    Eigen::Index ia = 0, ib = 0;
    (A.transpose() * t).maxCoeff(&ia);
    (B.transpose() * t).maxCoeff(&ib);
    pairs.emplace_back(ia, ib);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  Mat pts(3, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k)
    pts.col(static_cast<Eigen::Index>(k)) = 0.5 * (A.col(pairs[k].first) + B.col(pairs[k].second));
  return make_hull(pts);
}

constexpr std::size_t kPairwiseLimit = 250000;

}  // namespace

SymmetralResult minkowski(const Body& b, const Direction& u, const SymmetrizeOptions& opt) {
  if (u.dim() != body_dim(b)) fail(ErrorKind::DimensionMismatch, "direction and body dimensions differ");
  if (const auto* p = std::get_if<ConvexPolygon>(&b)) {
    if (p->empty()) fail(ErrorKind::EmptyInput, "minkowski of an empty polygon");
    ConvexPolygon s = minkowski_sum(*p, p->reflected(u.as2())).scaled(0.5);
    SymmetralResult r{s, 0.0, {polygon_area(s), 0.0}};
    if (s.size() > opt.vertex_budget) {
      if (!opt.prune_over_budget)
        fail(ErrorKind::VertexBudgetExceeded, "Minkowski symmetral has " + std::to_string(s.size()) + " vertices");
      auto pr = prune_polygon(s, opt.vertex_budget, opt.restore_invariant ? Preserve::Perimeter : Preserve::Nothing);
      r.body = std::move(pr.polygon);
      r.approx_error = pr.hausdorff_error;
    }
    return r;
  }

  const auto& h = std::get<VertexHull>(b);
  const VertexHull refl = h.reflected(u);
  SymmetralResult r;
  if (h.dim() != 3) {
    VertexHull s = pairwise_half_sum(h, refl);
    if (s.size() > opt.vertex_budget)
      fail(ErrorKind::VertexBudgetExceeded, "Minkowski symmetral has " + std::to_string(s.size()) + " vertices");
    r.body = std::move(s);
    return r;
  }

  auto exact = [&](const Vec3& t) { return 0.5 * (h.support(t) + refl.support(t)); };
  VertexHull s;
  if (h.size() * refl.size() <= kPairwiseLimit) {
    s = pairwise_half_sum(h, refl);
  } else {
    s = sampled_half_sum(h, refl, static_cast<int>(std::max<std::size_t>(8 * opt.vertex_budget, 20000)));
  }
  if (s.size() > opt.vertex_budget) {
    if (!opt.prune_over_budget)
      fail(ErrorKind::VertexBudgetExceeded, "Minkowski symmetral has " + std::to_string(s.size()) + " vertices");
    auto pr = prune_hull3(s, opt.vertex_budget, exact);
    s = std::move(pr.hull);
    r.approx_error = pr.hausdorff_error;
  } else if (h.size() * refl.size() > kPairwiseLimit) {
    for (const auto& t : fibonacci_sphere(4096)) r.approx_error = std::max(r.approx_error, exact(t) - s.support(t));
  }
  if (opt.restore_invariant && r.approx_error > 0 && !s.degenerate()) {
    const SphereGrid& g = sphere_grid(3, 32);
    const double l0 = mean_radius(Body{h}, g);
    const double l1 = mean_radius(Body{s}, g);
    if (l1 > 0) {
      const double c = l0 / l1;
      double rad = 0.0;
      for (Eigen::Index i = 0; i < s.vertices().cols(); ++i) rad = std::max(rad, s.vertices().col(i).norm());
      r.approx_error += std::abs(c - 1.0) * rad;
      s = s.scaled(c);
    }
  }
  r.body = std::move(s);
  return r;
}

SymmetralResult apply_operator(OperatorKind op, const Body& b, const Direction& u, Rng& rng,
                               const SymmetrizeOptions& opt) {
  return op == OperatorKind::Steiner ? steiner(b, u, rng, opt) : minkowski(b, u, opt);
}

}  // namespace symlab
