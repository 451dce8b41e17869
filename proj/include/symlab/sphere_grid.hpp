#pragma once

#include <span>
#include <vector>

#include "symlab/direction.hpp"

namespace symlab {

struct GaussLegendre {
  std::vector<double> x;  // ascending nodes in (-1, 1)
  std::vector<double> w;  // sum to 2
};
GaussLegendre gauss_legendre(int n);

/// Quadrature for the uniform probability measure on S^{d-1}, d in {2, 3}.
///   d = 2: N equally spaced angles, weight 1/N; exact for trigonometric
///          polynomials of degree < N.
///   d = 3: n_lat Gauss-Legendre nodes in cos(polar) times n_lon = 2 n_lat
///          uniform azimuths; exact for spherical harmonics of degree
///          <= 2 n_lat - 1.
/// Node j of the d = 3 grid is (lat = j / n_lon, lon = j % n_lon).
class SphereGrid {
 public:
  /// Public constructor: resolution >= 8 (N for d = 2, n_lat for d = 3).
  static SphereGrid make(int dim, int resolution);
  /// Smallest grid of the family that is exact up to `degree`.
  static SphereGrid exact_for(int dim, int degree);

  int dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  const Mat& nodes() const { return nodes_; }
  Vec node(std::size_t j) const { return nodes_.col(static_cast<Eigen::Index>(j)); }
  const std::vector<double>& weights() const { return weights_; }
  int k_exact() const { return k_exact_; }

  int n_lat() const { return n_lat_; }
  int n_lon() const { return n_lon_; }
  const std::vector<double>& cos_polar() const { return cos_polar_; }
  double azimuth(int i) const;

  double integrate(std::span<const double> values) const;
  /// True when the reflection of every node through the origin is a node.
  bool antipodal() const;

 private:
  SphereGrid() = default;
  static SphereGrid build(int dim, int resolution);
  int dim_ = 0;
  int k_exact_ = 0;
  int n_lat_ = 0;
  int n_lon_ = 0;
  Mat nodes_;
  std::vector<double> weights_;
  std::vector<double> cos_polar_;
};

/// sphere_grid: throws UnsupportedDimension for dim > 3.
SphereGrid sphere_grid(int dim, int resolution);

}  // namespace symlab
