#include "symlab/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "symlab/directions.hpp"
#include "symlab/error.hpp"
#include "symlab/kernels.hpp"
#include "symlab/polygon_metrics.hpp"

namespace symlab {

double HarmonicSpectrum::block_energy(int k) const {
  double e = 0.0;
  for (double c : blocks.at(static_cast<std::size_t>(k))) e += c * c;
  return e;
}

double HarmonicSpectrum::energy() const {
  double e = 0.0;
  for (int k = 0; k <= k_max; ++k) e += block_energy(k);
  return e;
}

namespace {

std::size_t block_size(int dim, int k) {
  if (dim == 2) return k == 0 ? 1 : 2;
  return static_cast<std::size_t>(2 * k + 1);
}

HarmonicSpectrum zero_spectrum(int dim, int k_max) {
  HarmonicSpectrum g{dim, k_max, {}};
  for (int k = 0; k <= k_max; ++k) g.blocks.emplace_back(block_size(dim, k), 0.0);
  return g;
}

inline std::size_t tri(int k, int m) { return static_cast<std::size_t>(k * (k + 1) / 2 + m); }

// Fully normalized associated Legendre functions Pbar_km(c), s = sqrt(1-c^2).
void legendre_table(int kmax, double c, double s, std::vector<double>& p) {
  p.assign(tri(kmax, kmax) + 1, 0.0);
  p[0] = 1.0;
  for (int m = 1; m <= kmax; ++m) {
    const double f = m == 1 ? std::sqrt(3.0) : std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    p[tri(m, m)] = f * s * p[tri(m - 1, m - 1)];
  }
  for (int m = 0; m < kmax; ++m) p[tri(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * c * p[tri(m, m)];
  for (int m = 0; m <= kmax; ++m)
    for (int k = m + 2; k <= kmax; ++k) {
      const double kk = k, mm = m;
      const double a = std::sqrt((2 * kk - 1) * (2 * kk + 1) / ((kk - mm) * (kk + mm)));
      const double b = std::sqrt((2 * kk + 1) * (kk + mm - 1) * (kk - mm - 1) / ((kk - mm) * (kk + mm) * (2 * kk - 3)));
      p[tri(k, m)] = a * c * p[tri(k - 1, m)] - b * p[tri(k - 2, m)];
    }
}

// Basis values at x, laid out like the spectrum blocks, accumulated as
// sum_j coeff_j * Y_j(x) or, with `out`, written out per basis function.
struct BasisEval {
  int dim;
  int kmax;
  std::vector<double> p, cm, sm;

  void at(const Vec& x) {
    double c = 0, s = 1, ca = 1, sa = 0;
    if (dim == 2) {
      ca = x[0];
      sa = x[1];
    } else {
      c = std::clamp(x[2], -1.0, 1.0);
      s = std::hypot(x[0], x[1]);
      if (s > 0) {
        ca = x[0] / s;
        sa = x[1] / s;
      }
      legendre_table(kmax, c, s, p);
    }
    cm.assign(static_cast<std::size_t>(kmax) + 1, 1.0);
    sm.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
    for (int m = 1; m <= kmax; ++m) {
      cm[m] = cm[m - 1] * ca - sm[m - 1] * sa;
      sm[m] = sm[m - 1] * ca + cm[m - 1] * sa;
    }
  }

  template <class F>
  void for_each(F&& f) const {
    const double r2 = std::numbers::sqrt2;
    for (int k = 0; k <= kmax; ++k) {
      if (dim == 2) {
        if (k == 0) {
          f(k, 0, 1.0);
        } else {
          f(k, 0, r2 * cm[k]);
          f(k, 1, r2 * sm[k]);
        }
      } else {
        f(k, 0, p[tri(k, 0)]);
        for (int m = 1; m <= k; ++m) {
          f(k, 2 * m - 1, p[tri(k, m)] * cm[m]);
          f(k, 2 * m, p[tri(k, m)] * sm[m]);
        }
      }
    }
  }
};

void check_grid(const SphereGrid& grid, int k_max) {
  if (grid.dim() != 2 && grid.dim() != 3) fail(ErrorKind::UnsupportedDimension, "harmonics need d in {2, 3}");
  if (grid.k_exact() < 2 * k_max)
    fail(ErrorKind::GridTooCoarse, "grid exact to degree " + std::to_string(grid.k_exact()) + ", need " +
                                       std::to_string(2 * k_max));
}

}  // namespace

SupportProfile centered_support(const Body& b, const SphereGrid& grid) {
  if (body_dim(b) != grid.dim()) fail(ErrorKind::DimensionMismatch, "grid and body dimensions differ");
  SupportProfile f{grid, support_profile_values(b, grid)};
  const double mean = grid.integrate(f.values);
  for (double& v : f.values) v -= mean;
  return f;
}

HarmonicSpectrum expand(const SupportProfile& f, int k_max) {
  const SphereGrid& grid = f.grid;
  check_grid(grid, k_max);
  if (f.values.size() != grid.size()) fail(ErrorKind::DimensionMismatch, "profile does not match its grid");
  HarmonicSpectrum g = zero_spectrum(grid.dim(), k_max);
  BasisEval be{grid.dim(), k_max, {}, {}, {}};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    be.at(grid.node(j));
    const double wf = grid.weights()[j] * f.values[j];
    be.for_each([&](int k, int i, double y) { g.blocks[k][i] += wf * y; });
  }
  return g;
}

double evaluate(const HarmonicSpectrum& g, const Vec& x) {
  if (x.size() != g.dim) fail(ErrorKind::DimensionMismatch, "point and spectrum dimensions differ");
  BasisEval be{g.dim, g.k_max, {}, {}, {}};
  be.at(x);
  double s = 0.0;
  be.for_each([&](int k, int i, double y) { s += g.blocks[k][i] * y; });
  return s;
}

std::vector<double> reconstruct(const HarmonicSpectrum& g, const SphereGrid& grid) {
  if (grid.dim() != g.dim) fail(ErrorKind::DimensionMismatch, "grid and spectrum dimensions differ");
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) out[j] = evaluate(g, grid.node(j));
  return out;
}

HarmonicSpectrum reflect_spectrum(const HarmonicSpectrum& g, const Direction& u, const SphereGrid& grid) {
  check_grid(grid, g.k_max);
  if (u.dim() != g.dim || grid.dim() != g.dim) fail(ErrorKind::DimensionMismatch, "reflect_spectrum dimensions");
  SupportProfile f{grid, std::vector<double>(grid.size())};
  for (std::size_t j = 0; j < grid.size(); ++j) f.values[j] = evaluate(g, u.reflect(grid.node(j)));
  return expand(f, g.k_max);
}

HarmonicSpectrum random_harmonic(int dim, int k, Rng& rng) {
  if (dim != 2 && dim != 3) fail(ErrorKind::UnsupportedDimension, "harmonics need d in {2, 3}");
  if (k < 0) fail(ErrorKind::InvalidConfig, "degree must be nonnegative");
  HarmonicSpectrum g = zero_spectrum(dim, k);
  double n2 = 0.0;
  for (double& c : g.blocks[k]) {
    c = rng.normal();
    n2 += c * c;
  }
  for (double& c : g.blocks[k]) c /= std::sqrt(n2);
  return g;
}

namespace {

Estimate contraction_impl(int dim, int k, long trials, Rng& rng, bool parallel) {
  if (dim != 2 && dim != 3) fail(ErrorKind::UnsupportedDimension, "contraction_ratio needs d in {2, 3}");
  if (k < 1) fail(ErrorKind::InvalidConfig, "contraction_ratio needs k >= 1");
  if (trials < 1000) fail(ErrorKind::InvalidConfig, "contraction_ratio needs at least 1000 trials");
  Rng gen = rng.split(0);
  const HarmonicSpectrum g = random_harmonic(dim, k, gen);
  const SphereGrid grid = SphereGrid::exact_for(dim, 2 * k);
  const std::vector<double> gv = reconstruct(g, grid);
  double norm2 = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) norm2 += grid.weights()[j] * gv[j] * gv[j];
  auto sample = [&](Rng& r) {
    const Direction u = sample_haar(r, dim);
    double inner = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) inner += grid.weights()[j] * gv[j] * evaluate(g, u.reflect(grid.node(j)));
    return 0.5 + 0.5 * inner / norm2;
  };
  const Rng base = rng.split(1);
  return parallel ? mc_mean(trials, base, sample) : mc_mean_serial(trials, base, sample);
}

}  // namespace

Estimate contraction_ratio(int dim, int k, long trials, Rng& rng) { return contraction_impl(dim, k, trials, rng, true); }

Estimate contraction_ratio_serial(int dim, int k, long trials, Rng& rng) {
  return contraction_impl(dim, k, trials, rng, false);
}

double centered_l2_norm(const ConvexPolygon& p) {
  const double l = polygon_perimeter(p) / (2 * std::numbers::pi);
  return std::sqrt(std::max(0.0, support_l2_squared(p) - l * l));
}

Estimate polygon_contraction_ratio(const ConvexPolygon& p, long trials, const Rng& rng) {
  const double l = polygon_perimeter(p) / (2 * std::numbers::pi);
  const double s = support_l2_squared(p);
  const double denom = s - l * l;
  if (!(denom > 0)) fail(ErrorKind::InvalidConfig, "polygon is a centered disk: h_P vanishes");
  return mc_mean(trials, rng, [&](Rng& r) {
    const Direction u = sample_haar(r, 2);
    const double inner = support_inner(p, p.reflected(u.as2()));
    return (0.5 * s + 0.5 * inner - l * l) / denom;
  });
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorKind::InvalidConfig, "zero denominator");
  if (den < 0) num = -num, den = -den;
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return {num / g, den / g};
}

namespace {

std::int64_t binom(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < r) return 0;
  r = std::min(r, n - r);
  std::int64_t c = 1;
  for (std::int64_t i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

}  // namespace

HarmonicDims dim_spaces(int dim, int k) {
  if (dim < 2 || k < 0) fail(ErrorKind::InvalidConfig, "dim_spaces needs d >= 2, k >= 0");
  return {binom(dim + k - 1, dim - 1) - binom(dim + k - 3, dim - 1), binom(dim + k - 2, dim - 2)};
}

Rational contraction_rational(int dim, int k) {
  const HarmonicDims h = dim_spaces(dim, k);
  return make_rational(h.ell, h.dim_sk);
}

nlohmann::json spectrum_to_json(const HarmonicSpectrum& g) {
  return {{"dim", g.dim}, {"k_max", g.k_max}, {"blocks", g.blocks}};
}

HarmonicSpectrum spectrum_from_json(const nlohmann::json& j) {
  HarmonicSpectrum g;
  try {
    g.dim = j.at("dim").get<int>();
    g.k_max = j.at("k_max").get<int>();
    g.blocks = j.at("blocks").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidConfig, std::string("bad spectrum JSON: ") + e.what());
  }
  if (g.dim != 2 && g.dim != 3) fail(ErrorKind::UnsupportedDimension, "spectrum dimension must be 2 or 3");
  if (static_cast<int>(g.blocks.size()) != g.k_max + 1) fail(ErrorKind::InvalidConfig, "block count != k_max + 1");
  for (int k = 0; k <= g.k_max; ++k)
    if (g.blocks[k].size() != block_size(g.dim, k)) fail(ErrorKind::InvalidConfig, "wrong block size");
  return g;
}

}  // namespace symlab
