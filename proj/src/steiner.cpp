#include <algorithm>
#include <cmath>

#include "symlab/error.hpp"
#include "symlab/polygon_metrics.hpp"
#include "symlab/symmetrize.hpp"

namespace symlab {

namespace {

struct Pt {
  double a;  // coordinate along w (inside the hyperplane)
  double b;  // coordinate along u
};

// Value of a monotone-in-a chain at abscissa x. Zero-width steps are
// skipped; callers resolve the two extreme abscissae themselves.
class ChainCursor {
 public:
  explicit ChainCursor(const std::vector<Pt>& c) : c_(c) {}
  double at(double x) {
    while (j_ + 2 < c_.size() && c_[j_ + 1].a < x) ++j_;
    const Pt& p = c_[j_];
    const Pt& q = c_[j_ + 1];
    const double span = q.a - p.a;
    if (span <= 0) return 0.5 * (p.b + q.b);
    const double t = std::clamp((x - p.a) / span, 0.0, 1.0);
    return p.b + t * (q.b - p.b);
  }

 private:
  const std::vector<Pt>& c_;
  std::size_t j_ = 0;
};

}  // namespace

ConvexPolygon steiner_2d(const ConvexPolygon& p, const Direction& u) {
  if (u.dim() != 2) fail(ErrorKind::DimensionMismatch, "steiner_2d needs a planar direction");
  if (p.empty()) fail(ErrorKind::EmptyInput, "steiner_2d of an empty polygon");
  const Vec2 uu = u.as2();
  const Vec2 w(uu.y(), -uu.x());
  const auto& v = p.vertices();
  const std::size_t n = v.size();

  if (p.degenerate()) {
    std::vector<Vec2> proj;
    for (const auto& x : v) proj.push_back(x - x.dot(uu) * uu);
    return ConvexPolygon::hull_of(proj);
  }

  std::vector<Pt> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = {v[i].dot(w), v[i].dot(uu)};
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (q[i].a < q[lo].a || (q[i].a == q[lo].a && q[i].b < q[lo].b)) lo = i;
    if (q[i].a > q[hi].a || (q[i].a == q[hi].a && q[i].b > q[hi].b)) hi = i;
  }
  const double amin = q[lo].a;
  const double amax = q[hi].a;
  double scale = 0.0;
  for (const auto& x : v) scale = std::max(scale, x.cwiseAbs().maxCoeff());
  const double edge_tol = 1e-12 * std::max(1.0, scale);

  // Lower chain lo -> hi and upper chain lo -> hi (walked backwards), both
  // with nondecreasing a after clamping rounding noise.
  std::vector<Pt> lower, upper;
  for (std::size_t i = lo;; i = (i + 1) % n) {
    lower.push_back(q[i]);
    if (i == hi) break;
  }
  for (std::size_t i = lo;; i = (i + n - 1) % n) {
    upper.push_back(q[i]);
    if (i == hi) break;
  }
  for (auto* c : {&lower, &upper})
    for (std::size_t i = 1; i < c->size(); ++i) (*c)[i].a = std::max((*c)[i].a, (*c)[i - 1].a);

  if (amax - amin <= edge_tol) {
    // Thin body: a single chord, centered.
    double bmin = q[0].b, bmax = q[0].b;
    for (const auto& x : q) bmin = std::min(bmin, x.b), bmax = std::max(bmax, x.b);
    const double half = 0.5 * (bmax - bmin);
    std::vector<Vec2> seg = {amin * w - half * uu, amin * w + half * uu};
    return ConvexPolygon::hull_of(seg);
  }

  // Chord lengths at the vertical edges sitting on the extreme abscissae.
  auto extreme_len = [&](double x) {
    double bmin = 0, bmax = 0;
    bool any = false;
    for (const auto& t : q)
      if (std::abs(t.a - x) <= edge_tol) {
        if (!any) bmin = bmax = t.b, any = true;
        bmin = std::min(bmin, t.b);
        bmax = std::max(bmax, t.b);
      }
    return bmax - bmin;
  };

  std::vector<double> xs;
  xs.reserve(lower.size() + upper.size());
  for (const auto& t : lower) xs.push_back(t.a);
  for (const auto& t : upper) xs.push_back(t.a);
  std::sort(xs.begin(), xs.end());
  std::vector<double> bx;
  bx.push_back(amin);
  for (double x : xs) {
    if (x - amin <= edge_tol || amax - x <= edge_tol) continue;
    if (x - bx.back() > 1e-15 * (amax - amin)) bx.push_back(x);
  }
  bx.push_back(amax);

  std::vector<double> len(bx.size());
  ChainCursor lc(lower), uc(upper);
  len.front() = extreme_len(amin);
  len.back() = extreme_len(amax);
  for (std::size_t k = 1; k + 1 < bx.size(); ++k) len[k] = std::max(0.0, uc.at(bx[k]) - lc.at(bx[k]));

  std::vector<Vec2> out;
  out.reserve(2 * bx.size());
  for (std::size_t k = 0; k < bx.size(); ++k) out.push_back(bx[k] * w - 0.5 * len[k] * uu);
  for (std::size_t k = bx.size(); k-- > 0;) out.push_back(bx[k] * w + 0.5 * len[k] * uu);
  return ConvexPolygon::from_ccw(std::move(out));
}

namespace {

// Orthonormal pair spanning u-perp, from the Householder reflection taking
// e3 to u.
std::pair<Vec3, Vec3> perp_frame(const Vec3& u) {
  const Vec3 e3(0, 0, 1);
  Vec3 h = e3 - u;
  const double hn = h.squaredNorm();
  if (hn < 1e-24) return {Vec3(1, 0, 0), Vec3(0, 1, 0)};
  auto refl = [&](const Vec3& x) -> Vec3 { return x - 2.0 * h.dot(x) / hn * h; };
  return {refl(Vec3(1, 0, 0)), refl(Vec3(0, 1, 0))};
}

}  // namespace

VertexHull steiner_sampled(const VertexHull& h, const Direction& u, int m, Rng& rng, Estimate* volume) {
  if (h.dim() != 3 || u.dim() != 3) fail(ErrorKind::DimensionMismatch, "steiner_sampled needs d = 3");
  if (m < 1) fail(ErrorKind::InvalidConfig, "steiner_sampled needs at least one chord sample");
  if (h.size() == 0) fail(ErrorKind::EmptyInput, "steiner_sampled of an empty hull");
  const Vec3 uu = u.as3();
  const auto [w1, w2] = perp_frame(uu);
  const Mat& V = h.vertices();

  std::vector<Vec2> proj(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Vec3 x = V.col(static_cast<Eigen::Index>(i));
    proj[i] = Vec2(x.dot(w1), x.dot(w2));
  }
  const ConvexPolygon shadow = ConvexPolygon::hull_of(proj);

  if (h.degenerate() || shadow.degenerate()) {
    if (volume) *volume = {0.0, 0.0};
    Mat flat(3, static_cast<Eigen::Index>(h.size()));
    for (std::size_t i = 0; i < h.size(); ++i) flat.col(static_cast<Eigen::Index>(i)) = proj[i].x() * w1 + proj[i].y() * w2;
    return make_hull(flat);
  }

  std::vector<Vec3> pts;
  auto emit = [&](const Vec2& x) -> double {
    const Vec3 base = x.x() * w1 + x.y() * w2;
    auto [t0, t1] = h.chord(base, uu);
    const double len = std::max(0.0, t1 - t0);
    pts.push_back(base - 0.5 * len * uu);
    pts.push_back(base + 0.5 * len * uu);
    return len;
  };

  // Shadow boundary: vertices plus a few points per edge.
  const auto& sv = shadow.vertices();
  const int per_edge = std::clamp(m / (4 * static_cast<int>(sv.size())), 0, 16);
  for (std::size_t i = 0; i < sv.size(); ++i) {
    const Vec2& a = sv[i];
    const Vec2& b = sv[(i + 1) % sv.size()];
    for (int k = 0; k <= per_edge; ++k) emit(a + (b - a) * (static_cast<double>(k) / (per_edge + 1)));
  }

  // Interior: jittered grid over the bounding box, kept when inside.
  Vec2 bmin = sv[0], bmax = sv[0];
  for (const auto& x : sv) bmin = bmin.cwiseMin(x), bmax = bmax.cwiseMax(x);
  const double area = polygon_area(shadow);
  const Vec2 ext = bmax - bmin;
  const int k = std::max(1, static_cast<int>(std::ceil(std::sqrt(m * ext.x() * ext.y() / area))));
  double s1 = 0.0, s2 = 0.0;
  int cnt = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const Vec2 x(bmin.x() + ext.x() * (i + rng.uniform()) / k, bmin.y() + ext.y() * (j + rng.uniform()) / k);
      if (!shadow.contains(x, 0.0)) continue;
      const double len = emit(x);
      s1 += len;
      s2 += len * len;
      ++cnt;
    }
  if (volume) {
    if (cnt == 0) {
      *volume = {0.0, 0.0};
    } else {
      const double mean = s1 / cnt;
      const double var = std::max(0.0, s2 / cnt - mean * mean);
      *volume = {area * mean, area * std::sqrt(var / cnt)};
    }
  }
  return make_hull(3, std::vector<Vec>(pts.begin(), pts.end()));
}

SymmetralResult steiner(const Body& b, const Direction& u, Rng& rng, const SymmetrizeOptions& opt) {
  if (u.dim() != body_dim(b)) fail(ErrorKind::DimensionMismatch, "direction and body dimensions differ");
  if (const auto* p = std::get_if<ConvexPolygon>(&b)) {
    ConvexPolygon s = steiner_2d(*p, u);
    SymmetralResult r{s, 0.0, {polygon_area(s), 0.0}};
    if (s.size() > opt.vertex_budget) {
      if (!opt.prune_over_budget)
        fail(ErrorKind::VertexBudgetExceeded, "Steiner symmetral has " + std::to_string(s.size()) + " vertices");
      auto pr = prune_polygon(s, opt.vertex_budget, opt.restore_invariant ? Preserve::Area : Preserve::Nothing);
      r.body = std::move(pr.polygon);
      r.approx_error = pr.hausdorff_error;
    }
    return r;
  }
  const auto& h = std::get<VertexHull>(b);
  if (h.dim() != 3) fail(ErrorKind::UnsupportedDimension, "Steiner symmetrization supports d = 2 and d = 3");
  SymmetralResult r;
  VertexHull s = steiner_sampled(h, u, opt.steiner_samples, rng, &r.volume);
  // Sampling error: how far the chord hull falls short of the reflected
  // body's extent is not knowable exactly; report the gap between the
  // sampled-volume estimate and the hull volume as a radius-scale bound.
  if (s.size() > opt.vertex_budget) {
    if (!opt.prune_over_budget)
      fail(ErrorKind::VertexBudgetExceeded, "Steiner symmetral has " + std::to_string(s.size()) + " vertices");
    auto pr = prune_hull3(s, opt.vertex_budget, [&](const Vec3& t) { return s.support(t); });
    s = std::move(pr.hull);
    r.approx_error = pr.hausdorff_error;
  }
  if (opt.restore_invariant && !s.degenerate()) {
    const double v0 = volume(Body{h});
    const double v1 = volume(Body{s});
    if (v1 > 0) {
      const double c = std::cbrt(v0 / v1);
      double rad = 0.0;
      for (Eigen::Index i = 0; i < s.vertices().cols(); ++i) rad = std::max(rad, s.vertices().col(i).norm());
      r.approx_error += std::abs(c - 1.0) * rad;
      s = s.scaled(c);
    }
  }
  r.body = std::move(s);
  return r;
}

}  // namespace symlab
