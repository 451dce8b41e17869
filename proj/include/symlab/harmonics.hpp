#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "symlab/body.hpp"
#include "symlab/metrics.hpp"
#include "symlab/rng.hpp"
#include "symlab/sphere_grid.hpp"

namespace symlab {

/// Function values at the nodes of a grid (e.g. a support function).
struct SupportProfile {
  SphereGrid grid;
  std::vector<double> values;
};

/// Coefficients in a real basis orthonormal for the uniform probability
/// measure on the sphere.
///   d = 2, degree k >= 1: [a, b] for sqrt(2) cos(k t), sqrt(2) sin(k t);
///          degree 0: [a] for the constant 1.
///   d = 3, degree k: 2k + 1 entries [m = 0, cos 1, sin 1, ..., cos k, sin k]
///          for Pbar_km(cos polar) * {cos, sin}(m azimuth), where Pbar are the
///          fully normalized associated Legendre functions (no Condon-Shortley
///          phase). Pbar_k0 = sqrt(2k + 1) P_k.
struct HarmonicSpectrum {
  int dim = 2;
  int k_max = 0;
  std::vector<std::vector<double>> blocks;

  double block_energy(int k) const;
  double energy() const;
};

/// f_A - L(A) at the grid nodes, with L(A) the grid mean (so the profile
/// integrates to zero on the grid).
SupportProfile centered_support(const Body& b, const SphereGrid& grid);

/// Throws GridTooCoarse unless grid.k_exact() >= 2 k_max.
HarmonicSpectrum expand(const SupportProfile& f, int k_max);
double evaluate(const HarmonicSpectrum& g, const Vec& x);
std::vector<double> reconstruct(const HarmonicSpectrum& g, const SphereGrid& grid);
/// Spectrum of g composed with the reflection through u-perp.
HarmonicSpectrum reflect_spectrum(const HarmonicSpectrum& g, const Direction& u, const SphereGrid& grid);

/// Unit-norm element of S_k with i.i.d. normal coefficients.
HarmonicSpectrum random_harmonic(int dim, int k, Rng& rng);

/// Monte-Carlo estimate of E |(g + g o pi_U) / 2|^2 / |g|^2 for a random
/// g in S_k and U Haar. dim in {2, 3}; trials >= 1000.
Estimate contraction_ratio(int dim, int k, long trials, Rng& rng);
Estimate contraction_ratio_serial(int dim, int k, long trials, Rng& rng);

/// Exact E |h_{B_U P}|^2 / |h_P|^2 over U Haar, estimated by Monte Carlo,
/// for a polygon (support integrals in closed form per draw).
Estimate polygon_contraction_ratio(const ConvexPolygon& p, long trials, const Rng& rng);
/// |h_P|_2 for the uniform probability on S^1, exact.
double centered_l2_norm(const ConvexPolygon& p);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool operator==(const Rational&) const = default;
};
Rational make_rational(std::int64_t num, std::int64_t den);

struct HarmonicDims {
  std::int64_t dim_sk = 0;
  std::int64_t ell = 0;
};
/// dim S_k = C(d+k-1, d-1) - C(d+k-3, d-1) and l(k) = C(d+k-2, d-2).
HarmonicDims dim_spaces(int dim, int k);
/// l(k) / dim S_k in lowest terms.
Rational contraction_rational(int dim, int k);

nlohmann::json spectrum_to_json(const HarmonicSpectrum& g);
HarmonicSpectrum spectrum_from_json(const nlohmann::json& j);

}  // namespace symlab
