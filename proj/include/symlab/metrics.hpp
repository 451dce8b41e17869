#pragma once

#include "symlab/body.hpp"
#include "symlab/rng.hpp"
#include "symlab/sphere_grid.hpp"

namespace symlab {

/// Randomized results carry a standard error; exact ones report 0.
struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Lebesgue measure. Exact for polygons and d = 3 hulls; degenerate bodies
/// return 0. Throws UnsupportedDimension for non-degenerate d > 3 hulls.
double volume(const Body& b);

/// L(A) = integral of f_A against the uniform probability on the sphere.
/// Polygons: perimeter / 2 pi (exact). d = 3 hulls: edge-length times
/// exterior-dihedral-angle sum / 8 pi (exact). Degenerate d = 3 hulls fall
/// back to grid quadrature.
double mean_radius(const Body& b, const SphereGrid& grid);
/// Plain quadrature of support_eval over the grid.
double mean_radius_quadrature(const Body& b, const SphereGrid& grid);
/// Haar Monte Carlo for any d.
Estimate mean_radius_mc(const Body& b, Rng& rng, int samples);

/// max vertex norm: the smallest R with A in B(0, R). Origin-anchored, which
/// differs from the minimal enclosing ball for off-center bodies.
double circumradius(const Body& b);

/// r(A) with kappa_d r^d = vol(A).
double equivalent_radius(const Body& b);

/// d_H = sup |f_A - f_B|.
///   polygon vs polygon, polygon vs ball: exact;
///   d = 3 hull vs ball: exact when the origin is interior, grid otherwise;
///   d = 3 hull vs hull: max over grid nodes.
double hausdorff(const Body& a, const Body& b, const SphereGrid& grid);
double hausdorff(const Body& a, const BallSpec& ball, const SphereGrid& grid);
double hausdorff(const BallSpec& a, const BallSpec& b);

/// d_N = vol(A symmetric-difference B).
/// d = 2 is exact (convex clipping; disk intersection in closed form).
/// d = 3 needs the Monte-Carlo overload.
Estimate nikodym(const Body& a, const Body& b);
Estimate nikodym(const Body& a, const BallSpec& ball);
Estimate nikodym(const Body& a, const Body& b, Rng& rng, int samples);
Estimate nikodym(const Body& a, const BallSpec& ball, Rng& rng, int samples);

/// Integral of |z|^2 over the body, d in {2, 3}.
double inertia(const Body& b);
double inertia(const BallSpec& ball);

/// Monte-Carlo volume by membership in the bounding box.
Estimate volume_mc(const Body& b, Rng& rng, int samples);

bool body_contains(const Body& b, const Vec& x, double tol = 1e-12);

}  // namespace symlab
