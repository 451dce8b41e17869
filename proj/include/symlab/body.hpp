#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "symlab/hull.hpp"
#include "symlab/polygon.hpp"

namespace symlab {

/// A convex body: exact polygon in the plane, vertex hull otherwise.
/// Conversions between the two are explicit (to_polygon / to_hull).
using Body = std::variant<ConvexPolygon, VertexHull>;

/// Centered ball rD.
struct BallSpec {
  int dim = 2;
  double radius = 1.0;
};

int body_dim(const Body& b);
std::size_t vertex_count(const Body& b);
bool is_degenerate(const Body& b);

ConvexPolygon to_polygon(const Body& b);  // d = 2 only
VertexHull to_hull(const Body& b);

/// sup over the body of <x, theta>. Throws DimensionMismatch.
double support_eval(const Body& b, const Vec& theta);
double support_eval(const Body& b, const Direction& theta);

/// Vertex-wise reflection x -> x - 2<x,u>u.
Body reflect_body(const Body& b, const Direction& u);
/// Homothety about the origin.
Body scale_body(const Body& b, double c);

/// Vertex coordinates as a d x n matrix.
Mat vertex_matrix(const Body& b);

/// {"dim": d, "vertices": [[x, ...], ...]}; floats are written with 17
/// significant digits. d = 2 parses into a polygon, d >= 3 into a hull.
nlohmann::json body_to_json(const Body& b);
Body body_from_json(const nlohmann::json& j);
std::string body_to_string(const Body& b);

/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

}  // namespace symlab
