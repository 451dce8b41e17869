#pragma once

#include <span>
#include <vector>

#include "symlab/direction.hpp"

namespace symlab {

/// Planar convex body stored as its counterclockwise vertex cycle, starting
/// at the lexicographically smallest vertex so that equal bodies compare
/// equal. Fewer than three vertices means the body is degenerate (a point or
/// a segment); such bodies are valid values, not errors.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  /// Convex hull of arbitrary points (collinear and interior points pruned).
  static ConvexPolygon hull_of(std::span<const Vec2> points);
  /// Trusted counterclockwise convex cycle, e.g. the output of an operator.
  /// Drops duplicate and flat vertices and canonicalizes the start.
  static ConvexPolygon from_ccw(std::vector<Vec2> cycle);

  const std::vector<Vec2>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  const Vec2& operator[](std::size_t i) const { return v_[i]; }
  bool degenerate() const { return v_.size() < 3; }
  bool empty() const { return v_.empty(); }

  double support(const Vec2& theta) const;
  ConvexPolygon reflected(const Vec2& u) const;
  ConvexPolygon scaled(double c) const;
  ConvexPolygon translated(const Vec2& t) const;

  /// Closed membership with absolute tolerance on the signed edge distance.
  bool contains(const Vec2& p, double tol = 1e-12) const;
  /// Every consecutive edge pair turns strictly left.
  bool is_strictly_convex() const;

  bool operator==(const ConvexPolygon& other) const { return v_ == other.v_; }
  bool approx_equal(const ConvexPolygon& other, double tol) const;

 private:
  explicit ConvexPolygon(std::vector<Vec2> v) : v_(std::move(v)) {}
  std::vector<Vec2> v_;
};

/// make_polygon: throws EmptyInput on no points.
ConvexPolygon make_polygon(std::span<const Vec2> points);

ConvexPolygon regular_polygon(int n, double radius, double phase = 0.0);
ConvexPolygon axis_box(double x0, double y0, double x1, double y1);

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace symlab
