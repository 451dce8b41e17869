#include "symlab/polygon_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace symlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

// Outward normal angle of the edge a -> b of a counterclockwise cycle.
double normal_angle(const Vec2& a, const Vec2& b) {
  const Vec2 e = b - a;
  return std::atan2(-e.x(), e.y());
}

// max over theta in [lo, hi] of |<w, e(theta)>|.
double max_abs_sinusoid(const Vec2& w, double lo, double hi) {
  const double r = w.norm();
  if (r == 0) return 0;
  double m = std::max(std::abs(w.x() * std::cos(lo) + w.y() * std::sin(lo)),
                      std::abs(w.x() * std::cos(hi) + w.y() * std::sin(hi)));
  const double phi = std::atan2(w.y(), w.x());
  for (double peak : {phi, phi + std::numbers::pi}) {
    const double off = wrap(peak - lo);
    if (off <= hi - lo) return r;
  }
  return m;
}

// Integrals over [a, a + len] of cos^2, sin^2, cos*sin.
struct TrigMoments {
  double cc, ss, cs;
};
TrigMoments trig_moments(double a, double len) {
  const double b = a + len;
  const double d2 = (std::sin(2 * b) - std::sin(2 * a)) / 4.0;
  return {len / 2.0 + d2, len / 2.0 - d2, (std::cos(2 * a) - std::cos(2 * b)) / 4.0};
}

}  // namespace

std::vector<NormalArc> normal_arcs(const ConvexPolygon& p) {
  std::vector<NormalArc> arcs;
  const std::size_t n = p.size();
  if (n == 0) return arcs;
  if (n == 1) {
    arcs.push_back({0.0, kTwoPi, p[0]});
    return arcs;
  }
  std::vector<double> beta(n);
  for (std::size_t i = 0; i < n; ++i) beta[i] = normal_angle(p[i], p[(i + 1) % n]);
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = beta[(i + n - 1) % n];
    double len = wrap(beta[i] - prev);
    if (n == 2) len = std::numbers::pi;
    arcs.push_back({prev, len, p[i]});
  }
  return arcs;
}

double polygon_area(const ConvexPolygon& p) {
  const std::size_t n = p.size();
  if (n < 3) return 0.0;
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += cross2(p[i], p[(i + 1) % n]);
  return 0.5 * s;
}

double polygon_perimeter(const ConvexPolygon& p) {
  const std::size_t n = p.size();
  if (n < 2) return 0.0;
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += (p[(i + 1) % n] - p[i]).norm();
  return s;
}

double polygon_inertia(const ConvexPolygon& p) {
  const std::size_t n = p.size();
  if (n < 3) return 0.0;
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % n];
    s += cross2(a, b) * (a.squaredNorm() + a.dot(b) + b.squaredNorm());
  }
  return s / 12.0;
}

double support_l2_squared(const ConvexPolygon& p) {
  double s = 0;
  for (const auto& arc : normal_arcs(p)) {
    const auto m = trig_moments(arc.start, arc.length);
    const Vec2& v = arc.vertex;
    s += v.x() * v.x() * m.cc + v.y() * v.y() * m.ss + 2.0 * v.x() * v.y() * m.cs;
  }
  return s / kTwoPi;
}

namespace {

struct Event {
  double angle;
  Vec2 vertex;
};

std::vector<Event> events_of(const ConvexPolygon& p) {
  std::vector<Event> ev;
  for (const auto& arc : normal_arcs(p)) ev.push_back({wrap(arc.start), arc.vertex});
  std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.angle < b.angle; });
  return ev;
}

// Calls fn(lo, hi, vp, vq) on the common refinement of both arc partitions.
template <class Fn>
void for_each_common_arc(const ConvexPolygon& p, const ConvexPolygon& q, Fn&& fn) {
  const auto ep = events_of(p);
  const auto eq = events_of(q);
  std::vector<double> cuts;
  for (const auto& e : ep) cuts.push_back(e.angle);
  for (const auto& e : eq) cuts.push_back(e.angle);
  cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  // Support vertex at angle t: last event with angle <= t, cyclically.
  std::size_t cp = 0, cq = 0;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = k + 1 < cuts.size() ? cuts[k + 1] : kTwoPi;
    while (cp < ep.size() && ep[cp].angle <= lo) ++cp;
    while (cq < eq.size() && eq[cq].angle <= lo) ++cq;
    const std::size_t ip = cp == 0 ? ep.size() - 1 : cp - 1;
    const std::size_t iq = cq == 0 ? eq.size() - 1 : cq - 1;
    if (hi > lo) fn(lo, hi, ep[ip].vertex, eq[iq].vertex);
  }
}

}  // namespace

double support_inner(const ConvexPolygon& p, const ConvexPolygon& q) {
  double s = 0;
  for_each_common_arc(p, q, [&](double lo, double hi, const Vec2& a, const Vec2& b) {
    const auto m = trig_moments(lo, hi - lo);
    s += a.x() * b.x() * m.cc + a.y() * b.y() * m.ss + (a.x() * b.y() + a.y() * b.x()) * m.cs;
  });
  return s / kTwoPi;
}

double hausdorff_exact(const ConvexPolygon& p, const ConvexPolygon& q) {
  double best = 0;
  for_each_common_arc(p, q, [&](double lo, double hi, const Vec2& a, const Vec2& b) {
    best = std::max(best, max_abs_sinusoid(a - b, lo, hi));
  });
  return best;
}

double point_polygon_distance(const Vec2& x, const ConvexPolygon& p) {
  const std::size_t n = p.size();
  if (n == 0) return std::numeric_limits<double>::infinity();
  if (n >= 3 && p.contains(x, 0.0)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % n];
    const Vec2 e = b - a;
    const double len2 = e.squaredNorm();
    const double t = len2 > 0 ? std::clamp((x - a).dot(e) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (a + t * e - x).norm());
  }
  return best;
}

std::pair<double, double> support_range(const ConvexPolygon& p) {
  double hi = 0;
  for (const auto& v : p.vertices()) hi = std::max(hi, v.norm());
  const std::size_t n = p.size();
  double lo;
  if (n >= 3 && p.contains(Vec2::Zero(), 0.0)) {
    lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e = p[(i + 1) % n] - p[i];
      const Vec2 nrm = Vec2(e.y(), -e.x()).normalized();
      lo = std::min(lo, p[i].dot(nrm));
    }
  } else {
    lo = -point_polygon_distance(Vec2::Zero(), p);
  }
  return {lo, hi};
}

double hausdorff_exact(const ConvexPolygon& p, double r) {
  const auto [lo, hi] = support_range(p);
  return std::max(std::abs(hi - r), std::abs(lo - r));
}

ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.degenerate() || b.degenerate()) return ConvexPolygon();
  std::vector<Vec2> out = a.vertices();
  const std::size_t m = b.size();
  for (std::size_t j = 0; j < m && !out.empty(); ++j) {
    const Vec2& c = b[j];
    const Vec2 e = b[(j + 1) % m] - c;
    const auto side = [&](const Vec2& x) { return cross2(e, x - c); };
    std::vector<Vec2> next;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Vec2& s = out[i];
      const Vec2& t = out[(i + 1) % out.size()];
      const double ss = side(s), st = side(t);
      if (ss >= 0) next.push_back(s);
      if ((ss >= 0) != (st >= 0)) next.push_back(s + (t - s) * (ss / (ss - st)));
    }
    out = std::move(next);
  }
  if (out.size() < 3) return ConvexPolygon();
  return ConvexPolygon::from_ccw(std::move(out));
}

double disk_intersection_area(const ConvexPolygon& p, double r) {
  const std::size_t n = p.size();
  if (n < 3 || r <= 0) return 0.0;
  const double r2 = r * r;
  // Signed area of disk ∩ triangle(0, a, b), summed over edges.
  const auto piece = [&](const Vec2& a, const Vec2& b) {
    const Vec2 mid = 0.5 * (a + b);
    if (mid.squaredNorm() <= r2) return 0.5 * cross2(a, b);
    return 0.5 * r2 * std::atan2(cross2(a, b), a.dot(b));
  };
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % n];
    const Vec2 d = b - a;
    // |a + t d|^2 = r^2
    const double qa = d.squaredNorm(), qb = 2.0 * a.dot(d), qc = a.squaredNorm() - r2;
    const double disc = qb * qb - 4.0 * qa * qc;
    std::vector<double> ts{0.0};
    if (disc > 0 && qa > 0) {
      const double sq = std::sqrt(disc);
      for (double t : {(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)}) {
        if (t > 0.0 && t < 1.0) ts.push_back(t);
      }
    }
    ts.push_back(1.0);
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) s += piece(a + ts[k] * d, a + ts[k + 1] * d);
  }
  return s;
}

}  // namespace symlab
