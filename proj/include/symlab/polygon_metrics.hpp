#pragma once

#include <vector>

#include "symlab/polygon.hpp"

namespace symlab {

/// Arc of S^1 (angles in radians, length > 0) on which `vertex` is the
/// support point of the polygon.
struct NormalArc {
  double start;
  double length;
  Vec2 vertex;
};
std::vector<NormalArc> normal_arcs(const ConvexPolygon& p);

double polygon_area(const ConvexPolygon& p);
double polygon_perimeter(const ConvexPolygon& p);
/// Integral of |z|^2 over the polygon.
double polygon_inertia(const ConvexPolygon& p);
/// Integral of f_P^2 against the uniform probability on S^1, exact.
double support_l2_squared(const ConvexPolygon& p);
/// Integral of f_P f_Q against the uniform probability on S^1, exact.
double support_inner(const ConvexPolygon& p, const ConvexPolygon& q);

/// sup_theta |f_P - f_Q|, exact (piecewise sinusoid over merged arcs).
double hausdorff_exact(const ConvexPolygon& p, const ConvexPolygon& q);
/// sup_theta |f_P - r|, exact.
double hausdorff_exact(const ConvexPolygon& p, double r);
/// Range [min, max] of the support function over S^1.
std::pair<double, double> support_range(const ConvexPolygon& p);

/// Intersection of two convex polygons (Sutherland-Hodgman).
ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b);
/// Area of P intersected with the centered disk of radius r, exact.
double disk_intersection_area(const ConvexPolygon& p, double r);

double point_polygon_distance(const Vec2& x, const ConvexPolygon& p);

}  // namespace symlab
