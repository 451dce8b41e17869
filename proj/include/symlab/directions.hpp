#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "symlab/direction.hpp"
#include "symlab/rng.hpp"

namespace symlab {

/// Normalized standard Gaussian vector.
Direction sample_haar(Rng& rng, int dim);
/// First column of a Haar-distributed orthogonal matrix (QR of a Gaussian
/// matrix with the sign of R's diagonal fixed positive).
Direction sample_orthonormal_column(Rng& rng, int dim);

/// Law on S^{d-1} given by a density w.r.t. the uniform probability sigma,
/// bounded by alpha. alpha < d/(d-1) is the regime with a guaranteed rate.
struct DensityModel {
  int dim = 2;
  std::function<double(const Vec&)> density;
  double alpha = 1.0;
  std::string name;

  bool rate_guaranteed() const { return alpha < static_cast<double>(dim) / (dim - 1); }
};

DensityModel uniform_density(int dim);
/// a on {x_d > 0}, 2 - a on {x_d <= 0}; alpha = max(a, 2 - a).
DensityModel upper_lower_density(int dim, double a);
/// alpha on the cap {x_d >= height}, constant elsewhere so the mass is 1.
DensityModel cap_density(int dim, double alpha, double height);
/// Zero on the cap {x_d >= height}, uniform elsewhere: a law avoiding an
/// open set.
DensityModel cap_void_density(int dim, double height);
/// sigma({x_d >= height}) for d in {2, 3}.
double cap_mass(int dim, double height);

/// Scans a coarse grid (d <= 3) or Haar samples (d > 3) and throws
/// DensityExceedsBound if the density ever exceeds alpha.
void validate_density(const DensityModel& model);

struct RejectionStats {
  long proposals = 0;
  long accepted = 0;
  double max_ratio = 0.0;  // max density / alpha seen
  double acceptance_rate() const { return proposals ? static_cast<double>(accepted) / proposals : 0.0; }
};

/// Rejection sampling from Haar proposals. Throws RejectionStall when the
/// acceptance rate stays below 1e-4 after 1e6 proposals and
/// DensityExceedsBound if a proposal's density exceeds alpha.
Direction sample_bounded_density(Rng& rng, const DensityModel& model, RejectionStats* stats = nullptr);

/// Time-homogeneous Markov kernel whose one-step laws all obey the density
/// bound `alpha`.
struct MarkovKernel {
  int dim = 2;
  std::function<Direction(const Direction&, Rng&)> step;
  /// Density of P(v, .) w.r.t. sigma, when known in closed form.
  std::function<double(const Direction&, const Vec&)> transition_density;
  double alpha = 1.0;
  std::string name;
};

/// Ignores the current state: i.i.d. Haar.
MarkovKernel haar_kernel(int dim);
/// Illustrative kernel (not from any reference): with probability
/// `haar_weight` jump to a Haar point, otherwise move along a geodesic from
/// the current point v to a point x whose law has density 1 + tilt <x, v>.
/// For d = 2 and tilt = 0 the geodesic move is a uniform rotation.
/// Transition density: haar_weight + (1 - haar_weight)(1 + tilt <x, v>),
/// so alpha = 1 + (1 - haar_weight) tilt.
MarkovKernel geodesic_step_kernel(int dim, double haar_weight = 0.5, double tilt = 0.8);

std::vector<Direction> markov_sequence(Rng& rng, const MarkovKernel& kernel, const Direction& start, int n);

/// u_k = (cos 2 pi k phi, sin 2 pi k phi), k = 1..n, phi = (sqrt 5 - 1) / 2.
std::vector<Direction> golden_angle_sequence(int n);
std::vector<Direction> finite_cycle(const std::vector<Direction>& cycle, int n);

struct HaarSource {};
struct DensitySource {
  DensityModel model;
};
struct MarkovSource {
  MarkovKernel kernel;
};
struct GoldenAngleSource {};
struct CycleSource {
  std::vector<Direction> cycle;
};

/// (U_n): random variants draw from Rng(seed, stream) so that trajectory i
/// of a run owns stream i.
struct DirectionSource {
  std::variant<HaarSource, DensitySource, MarkovSource, GoldenAngleSource, CycleSource> kind;
  std::uint64_t seed = 0;
  bool random() const { return kind.index() <= 2; }
};

std::vector<Direction> generate(const DirectionSource& src, int dim, int n, std::uint64_t stream);

/// {"source": "haar" | "bounded_density" | "markov" | "golden_angle" | "cycle", ...}
DirectionSource source_from_json(const nlohmann::json& j, int dim);
std::string source_name(const DirectionSource& src);

}  // namespace symlab
