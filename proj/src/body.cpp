#include "symlab/body.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "symlab/error.hpp"

namespace symlab {

int body_dim(const Body& b) {
  return std::visit([](const auto& x) -> int {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, ConvexPolygon>) return 2;
    else return x.dim();
  }, b);
}

std::size_t vertex_count(const Body& b) {
  return std::visit([](const auto& x) { return x.size(); }, b);
}

bool is_degenerate(const Body& b) {
  return std::visit([](const auto& x) { return x.degenerate(); }, b);
}

ConvexPolygon to_polygon(const Body& b) {
  if (const auto* p = std::get_if<ConvexPolygon>(&b)) return *p;
  return std::get<VertexHull>(b).as_polygon();
}

VertexHull to_hull(const Body& b) {
  if (const auto* h = std::get_if<VertexHull>(&b)) return *h;
  return hull_from_polygon(std::get<ConvexPolygon>(b));
}

double support_eval(const Body& b, const Vec& theta) {
  if (theta.size() != body_dim(b)) fail(ErrorKind::DimensionMismatch, "support_eval: dimension mismatch");
  if (const auto* p = std::get_if<ConvexPolygon>(&b)) return p->support({theta[0], theta[1]});
  return std::get<VertexHull>(b).support(theta);
}

double support_eval(const Body& b, const Direction& theta) { return support_eval(b, theta.coords()); }

Body reflect_body(const Body& b, const Direction& u) {
  if (u.dim() != body_dim(b)) fail(ErrorKind::DimensionMismatch, "reflect_body: dimension mismatch");
  if (const auto* p = std::get_if<ConvexPolygon>(&b)) return p->reflected(u.as2());
  return std::get<VertexHull>(b).reflected(u);
}

Body scale_body(const Body& b, double c) {
  if (const auto* p = std::get_if<ConvexPolygon>(&b)) return p->scaled(c);
  return std::get<VertexHull>(b).scaled(c);
}

Mat vertex_matrix(const Body& b) {
  if (const auto* p = std::get_if<ConvexPolygon>(&b)) {
    Mat m(2, static_cast<Eigen::Index>(p->size()));
    for (std::size_t i = 0; i < p->size(); ++i) m.col(static_cast<Eigen::Index>(i)) = (*p)[i];
    return m;
  }
  return std::get<VertexHull>(b).vertices();
}

nlohmann::json body_to_json(const Body& b) {
  const Mat m = vertex_matrix(b);
  nlohmann::json verts = nlohmann::json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) row.push_back(m(i, j));
    verts.push_back(row);
  }
  return {{"dim", body_dim(b)}, {"vertices", verts}};
}

Body body_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("vertices")) {
    fail(ErrorKind::InvalidConfig, "body JSON needs \"dim\" and \"vertices\"");
  }
  const int d = j.at("dim").get<int>();
  if (d < 2) fail(ErrorKind::UnsupportedDimension, "body dim must be >= 2");
  const auto& vs = j.at("vertices");
  if (!vs.is_array() || vs.empty()) fail(ErrorKind::EmptyInput, "body has no vertices");
  Mat m(d, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const auto& row = vs[k];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      fail(ErrorKind::DimensionMismatch, "vertex " + std::to_string(k) + " has wrong length");
    }
    for (int i = 0; i < d; ++i) m(i, static_cast<Eigen::Index>(k)) = row[static_cast<std::size_t>(i)].get<double>();
  }
  if (d == 2) {
    std::vector<Vec2> pts;
    for (Eigen::Index k = 0; k < m.cols(); ++k) pts.emplace_back(m(0, k), m(1, k));
    return make_polygon(pts);
  }
  return make_hull(m);
}

std::string body_to_string(const Body& b) {
  // nlohmann::json prints doubles with max_digits10 (17) already.
  return body_to_json(b).dump();
}

double unit_ball_volume(int d) {
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

}  // namespace symlab
