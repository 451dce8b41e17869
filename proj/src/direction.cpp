#include "symlab/direction.hpp"

#include <cmath>
#include <string>

#include "symlab/error.hpp"

namespace symlab {

Direction Direction::from_unit(const Vec& v, double tol) {
  if (v.size() < 2) fail(ErrorKind::UnsupportedDimension, "direction needs d >= 2");
  const double n = v.norm();
  if (!(std::abs(n - 1.0) <= tol)) {
    fail(ErrorKind::NotUnit, "direction norm " + std::to_string(n));
  }
  return Direction(v);
}

Direction Direction::normalized(const Vec& v) {
  if (v.size() < 2) fail(ErrorKind::UnsupportedDimension, "direction needs d >= 2");
  const double n = v.norm();
  if (!(n > 1e-300) || !std::isfinite(n)) fail(ErrorKind::NotUnit, "cannot normalize zero vector");
  return Direction(v / n);
}

Direction Direction::axis(int dim, int i) {
  Vec v = Vec::Zero(dim);
  v[i] = 1.0;
  return from_unit(v);
}

Direction Direction::from_angle(double theta) {
  Vec v(2);
  v << std::cos(theta), std::sin(theta);
  return Direction(v);
}

Direction Direction::reflect(const Direction& x) const { return Direction(reflect(x.coords())); }

}  // namespace symlab
