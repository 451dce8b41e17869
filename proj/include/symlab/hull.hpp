#pragma once

#include <array>
#include <vector>

#include "symlab/direction.hpp"
#include "symlab/polygon.hpp"

namespace symlab {


/// Convex hull in R^d kept as its vertex set (columns of a d x n matrix).
/// For d = 3 the outward-oriented triangulated boundary is cached as well,
/// which is what volume, membership and chord queries run on.
class VertexHull {
 public:
  struct Face {
    std::array<int, 3> idx;
    Vec3 normal;  // unit, outward
    double offset;  // normal . x <= offset inside
  };

  VertexHull() = default;

  int dim() const { return static_cast<int>(v_.rows()); }
  const Mat& vertices() const { return v_; }
  std::size_t size() const { return static_cast<std::size_t>(v_.cols()); }
  Vec vertex(std::size_t i) const { return v_.col(static_cast<Eigen::Index>(i)); }
  const std::vector<Face>& faces() const { return faces_; }
  /// Affine hull is a proper subspace (zero volume).
  bool degenerate() const { return degenerate_; }

  double support(const Vec& theta) const;
  VertexHull reflected(const Direction& u) const;
  VertexHull scaled(double c) const;
  /// d = 3 with faces, or d = 2 via the polygon view.
  bool contains(const Vec& p, double tol = 1e-12) const;
  /// Chord of the line {x + t*dir}: [t_lo, t_hi]; empty when t_lo > t_hi.
  std::pair<double, double> chord(const Vec3& x, const Vec3& dir) const;

  ConvexPolygon as_polygon() const;  // d = 2 only

  /// Assembles a hull from already-verified parts (no pruning performed).
  static VertexHull from_parts(Mat vertices, std::vector<Face> faces, bool degenerate);

 private:
  Mat v_;
  std::vector<Face> faces_;
  bool degenerate_ = false;
};

/// Vertex set of conv(points). Columns are points. Exact pruning for d <= 3;
/// d > 3 prunes with a min-norm-point membership test. Throws EmptyInput.
VertexHull make_hull(const Mat& points);
VertexHull make_hull(int dim, const std::vector<Vec>& points);
VertexHull hull_from_polygon(const ConvexPolygon& p);

/// Euclidean distance from p to conv(columns of pts) by Wolfe's
/// min-norm-point method. Exact up to rounding; used for d > 3 pruning.
double distance_to_hull(const Vec& p, const Mat& pts);

VertexHull unit_cube_hull(double lo = 0.0, double hi = 1.0);
/// Geodesic-style sphere: subdivided icosahedron projected to radius r.
/// level 3 gives 642 vertices.
VertexHull icosphere(int level, double radius = 1.0);

}  // namespace symlab
