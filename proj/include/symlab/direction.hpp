#pragma once

#include <Eigen/Dense>

namespace symlab {

using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat = Eigen::MatrixXd;

inline constexpr double kUnitTol = 1e-12;

/// A point of the unit sphere S^{d-1}, d >= 2.
class Direction {
 public:
  /// Throws NotUnit unless | ||v|| - 1 | <= tol, UnsupportedDimension if d < 2.
  static Direction from_unit(const Vec& v, double tol = kUnitTol);
  /// Normalizes; throws NotUnit for (near-)zero input.
  static Direction normalized(const Vec& v);
  static Direction axis(int dim, int i);
  static Direction from_angle(double theta);

  int dim() const { return static_cast<int>(v_.size()); }
  const Vec& coords() const { return v_; }
  double operator[](int i) const { return v_[i]; }
  Vec2 as2() const { return {v_[0], v_[1]}; }
  Vec3 as3() const { return {v_[0], v_[1], v_[2]}; }

  /// x - 2<x,u>u.
  Vec reflect(const Vec& x) const { return x - 2.0 * x.dot(v_) * v_; }
  Direction reflect(const Direction& x) const;

 private:
  explicit Direction(Vec v) : v_(std::move(v)) {}
  Vec v_;
};

inline Vec2 reflect2(const Vec2& x, const Vec2& u) { return x - 2.0 * x.dot(u) * u; }

}  // namespace symlab
