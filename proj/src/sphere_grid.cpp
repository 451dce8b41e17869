#include "symlab/sphere_grid.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "symlab/error.hpp"

namespace symlab {

GaussLegendre gauss_legendre(int n) {
  GaussLegendre g;
  g.x.resize(static_cast<std::size_t>(n));
  g.w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) { p1 = z; p0 = 1.0; }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    g.x[static_cast<std::size_t>(i)] = -z;
    g.x[static_cast<std::size_t>(n - 1 - i)] = z;
    g.w[static_cast<std::size_t>(i)] = w;
    g.w[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) g.x[static_cast<std::size_t>(n / 2)] = 0.0;
  return g;
}

SphereGrid SphereGrid::make(int dim, int resolution) {
  if (dim < 2 || dim > 3) {
    fail(ErrorKind::UnsupportedDimension, "sphere grid only for d in {2, 3}; use Monte Carlo above");
  }
  if (resolution < 8) fail(ErrorKind::GridTooCoarse, "sphere grid resolution must be >= 8");
  return build(dim, resolution);
}

SphereGrid SphereGrid::build(int dim, int resolution) {
  SphereGrid g;
  g.dim_ = dim;
  if (dim == 2) {
    const int n = resolution;
    g.nodes_.resize(2, n);
    g.weights_.assign(static_cast<std::size_t>(n), 1.0 / n);
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * std::numbers::pi * j / n;
      g.nodes_(0, j) = std::cos(t);
      g.nodes_(1, j) = std::sin(t);
    }
    g.k_exact_ = n - 1;
    g.n_lon_ = n;
    return g;
  }
  const int nl = resolution;
  const int nz = 2 * nl;
  const GaussLegendre gl = gauss_legendre(nl);
  g.n_lat_ = nl;
  g.n_lon_ = nz;
  g.cos_polar_ = gl.x;
  g.nodes_.resize(3, nl * nz);
  g.weights_.resize(static_cast<std::size_t>(nl * nz));
  for (int a = 0; a < nl; ++a) {
    const double c = gl.x[static_cast<std::size_t>(a)];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int b = 0; b < nz; ++b) {
      const double phi = 2.0 * std::numbers::pi * b / nz;
      const int j = a * nz + b;
      g.nodes_(0, j) = s * std::cos(phi);
      g.nodes_(1, j) = s * std::sin(phi);
      g.nodes_(2, j) = c;
      g.weights_[static_cast<std::size_t>(j)] = gl.w[static_cast<std::size_t>(a)] / (2.0 * nz);
    }
  }
  g.k_exact_ = 2 * nl - 1;
  return g;
}

SphereGrid SphereGrid::exact_for(int dim, int degree) {
  if (dim < 2 || dim > 3) fail(ErrorKind::UnsupportedDimension, "sphere grid only for d in {2, 3}");
  if (dim == 2) return build(2, std::max(2, degree + 1));
  return build(3, std::max(1, (degree + 2) / 2));
}

double SphereGrid::azimuth(int i) const { return 2.0 * std::numbers::pi * i / n_lon_; }

double SphereGrid::integrate(std::span<const double> values) const {
  if (values.size() != weights_.size()) fail(ErrorKind::DimensionMismatch, "integrate: size mismatch");
  double s = 0;
  for (std::size_t j = 0; j < values.size(); ++j) s += weights_[j] * values[j];
  return s;
}

bool SphereGrid::antipodal() const {
  if (dim_ == 2) return n_lon_ % 2 == 0;
  return n_lon_ % 2 == 0;  // Gauss-Legendre nodes are symmetric
}

SphereGrid sphere_grid(int dim, int resolution) { return SphereGrid::make(dim, resolution); }

}  // namespace symlab
