#include "symlab/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symlab/error.hpp"

namespace symlab {

namespace {

constexpr double kDupTol = 1e-12;
// Turns with |sin| below this are flat; the induced boundary error is below
// kFlatSin times the edge length.
constexpr double kFlatSin = 1e-12;
constexpr double kFlatSinTrusted = 1e-14;

bool lex_less(const Vec2& a, const Vec2& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

// o->a->b turns strictly left beyond the relative tolerance.
bool left_turn(const Vec2& o, const Vec2& a, const Vec2& b, double sin_tol) {
  const Vec2 e1 = a - o, e2 = b - a;
  return cross2(e1, e2) > sin_tol * e1.norm() * e2.norm();
}

void rotate_to_lex_min(std::vector<Vec2>& v) {
  if (v.empty()) return;
  auto it = std::min_element(v.begin(), v.end(), lex_less);
  std::rotate(v.begin(), it, v.end());
}

}  // namespace

ConvexPolygon ConvexPolygon::hull_of(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return (a - b).norm() <= kDupTol; }),
            pts.end());
  if (pts.size() <= 2) return ConvexPolygon(pts);

  // Andrew's monotone chain.
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && !left_turn(hull[k - 2], hull[k - 1], p, kFlatSin)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    const Vec2& p = pts[i - 1];
    while (k >= t && !left_turn(hull[k - 2], hull[k - 1], p, kFlatSin)) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    // All collinear: keep the extreme pair.
    return ConvexPolygon({pts.front(), pts.back()});
  }
  return ConvexPolygon(std::move(hull));
}

ConvexPolygon ConvexPolygon::from_ccw(std::vector<Vec2> cycle) {
  std::vector<Vec2> out;
  out.reserve(cycle.size());
  for (const auto& p : cycle) {
    if (!out.empty() && (out.back() - p).norm() <= kDupTol) continue;
    out.push_back(p);
  }
  while (out.size() > 1 && (out.back() - out.front()).norm() <= kDupTol) out.pop_back();

  if (out.size() >= 3) {
    // Stack pass removing flat vertices, then fix the wrap-around.
    std::vector<Vec2> st;
    st.reserve(out.size());
    for (const auto& p : out) {
      while (st.size() >= 2 && !left_turn(st[st.size() - 2], st.back(), p, kFlatSinTrusted)) st.pop_back();
      st.push_back(p);
    }
    std::size_t head = 0;
    bool changed = true;
    while (changed && st.size() - head >= 3) {
      changed = false;
      const std::size_t n = st.size();
      if (!left_turn(st[n - 2], st[n - 1], st[head], kFlatSinTrusted)) {
        st.pop_back();
        changed = true;
      } else if (!left_turn(st[n - 1], st[head], st[head + 1], kFlatSinTrusted)) {
        ++head;
        changed = true;
      }
    }
    out.assign(st.begin() + static_cast<std::ptrdiff_t>(head), st.end());
  }
  if (out.size() < 3) return hull_of(out);
  rotate_to_lex_min(out);
  return ConvexPolygon(std::move(out));
}

double ConvexPolygon::support(const Vec2& theta) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : v_) best = std::max(best, p.dot(theta));
  return best;
}

ConvexPolygon ConvexPolygon::reflected(const Vec2& u) const {
  std::vector<Vec2> out;
  out.reserve(v_.size());
  // Reflection reverses orientation.
  for (auto it = v_.rbegin(); it != v_.rend(); ++it) out.push_back(reflect2(*it, u));
  if (out.size() < 3) {
    std::sort(out.begin(), out.end(), lex_less);
    return ConvexPolygon(std::move(out));
  }
  rotate_to_lex_min(out);
  return ConvexPolygon(std::move(out));
}

ConvexPolygon ConvexPolygon::scaled(double c) const {
  std::vector<Vec2> out = v_;
  for (auto& p : out) p *= c;
  if (c <= 0) return from_ccw(std::move(out));
  return ConvexPolygon(std::move(out));
}

ConvexPolygon ConvexPolygon::translated(const Vec2& t) const {
  std::vector<Vec2> out = v_;
  for (auto& p : out) p += t;
  return ConvexPolygon(std::move(out));
}

bool ConvexPolygon::contains(const Vec2& p, double tol) const {
  const std::size_t n = v_.size();
  if (n == 0) return false;
  if (n == 1) return (p - v_[0]).norm() <= tol;
  if (n == 2) {
    const Vec2 e = v_[1] - v_[0];
    const double t = std::clamp((p - v_[0]).dot(e) / e.squaredNorm(), 0.0, 1.0);
    return (v_[0] + t * e - p).norm() <= tol;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = v_[i];
    const Vec2& b = v_[(i + 1) % n];
    const Vec2 e = b - a;
    if (cross2(e, p - a) < -tol * e.norm()) return false;
  }
  return true;
}

bool ConvexPolygon::is_strictly_convex() const {
  const std::size_t n = v_.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e1 = v_[(i + 1) % n] - v_[i];
    const Vec2 e2 = v_[(i + 2) % n] - v_[(i + 1) % n];
    if (!(cross2(e1, e2) > 0.0)) return false;
  }
  return true;
}

bool ConvexPolygon::approx_equal(const ConvexPolygon& other, double tol) const {
  const std::size_t n = v_.size();
  if (n != other.v_.size()) return false;
  if (n == 0) return true;
  // Near-ties can move the canonical start, so align cyclically first.
  std::size_t shift = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if ((other.v_[j] - v_[0]).norm() < (other.v_[shift] - v_[0]).norm()) shift = j;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if ((v_[i] - other.v_[(i + shift) % n]).norm() > tol) return false;
  }
  return true;
}

ConvexPolygon make_polygon(std::span<const Vec2> points) {
  if (points.empty()) fail(ErrorKind::EmptyInput, "make_polygon: no points");
  return ConvexPolygon::hull_of(points);
}

ConvexPolygon regular_polygon(int n, double radius, double phase) {
  std::vector<Vec2> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = phase + 2.0 * std::numbers::pi * i / n;
    v.emplace_back(radius * std::cos(t), radius * std::sin(t));
  }
  return ConvexPolygon::from_ccw(std::move(v));
}

ConvexPolygon axis_box(double x0, double y0, double x1, double y1) {
  return ConvexPolygon::from_ccw({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

}  // namespace symlab
