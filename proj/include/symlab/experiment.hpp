#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symlab/directions.hpp"
#include "symlab/fit.hpp"
#include "symlab/trajectory.hpp"

namespace symlab {

/// Named shapes:
///   d = 2: square [-1,1]^2, unit_square [0,1]^2, rectangle [0,2]x[0,1],
///          triangle (0,0),(1,0),(0,1), disk (regular 4096-gon, radius 1),
///          random (hull of 12 uniform points of the unit disk).
///   d = 3: cube [-1,1]^3, unit_cube [0,1]^3, ball (icosphere, 642
///          vertices), tetrahedron, random (hull of 40 uniform points of
///          the unit ball).
/// `random` draws from Rng(seed).
Body named_body(const std::string& name, int dim, std::uint64_t seed = 0);
/// String name, {"name": ..., "seed": ...} or a body literal
/// {"dim": d, "vertices": [...]}.
Body body_from_spec(const nlohmann::json& spec, int dim);

/// Homothety about the origin to volume kappa_d (so r(A) = 1).
Body normalize_volume(const Body& b);

struct ExperimentConfig {
  int dim = 2;
  nlohmann::json body = "square";
  OperatorKind op = OperatorKind::Minkowski;
  nlohmann::json source = {{"source", "haar"}, {"seed", 1}};
  int n_steps = 80;
  int n_seeds = 1;
  int grid_resolution = 64;
  int snapshot_every = 0;
  std::string output_path;
  bool normalize_volume = false;
  /// 0 picks the per-operator default (default_vertex_budget).
  std::size_t vertex_budget = 0;
  int steiner_samples = 2000;
  int nikodym_samples = 20000;
};

struct ExperimentResult;

/// Vertex cap used when the config leaves it at 0. The planar cap is large
/// enough that pruning error stays below the decay being measured.
std::size_t default_vertex_budget(OperatorKind op, int dim);

/// Support-function gap between a radius-rho disk and an inscribed regular
/// `budget`-gon, times a safety factor of 20: rho (pi / budget)^2 * 10.
/// Planar runs pushed to the vertex cap plateau below this level.
double representation_floor(std::size_t budget, double rho);
/// Fit options for a run: floor threshold raised to the representation
/// floor of its vertex budget when that exceeds the default; values under
/// that floor are also kept out of the fit.
FitOptions fit_options_for(const ExperimentResult& r);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
/// Throws InvalidConfig.
void validate(const ExperimentConfig& c);

struct ExperimentResult {
  ExperimentConfig config;
  Body initial;
  std::vector<Trajectory> runs;  // seed order
  std::size_t vertex_budget = 0;
};

/// One trajectory per seed, seeds fanned out over worker threads. Seed i
/// draws directions from stream i of the configured source and its own
/// operator stream, so output does not depend on scheduling. With an
/// output path, writes <path>/seed_<i>.csv per seed and <path>/run.json.
ExperimentResult run_experiment(const ExperimentConfig& c);
ExperimentResult run_experiment_serial(const ExperimentConfig& c);

/// Seed-mean gap E L(S_n A) - r(A) per step, with stderr, fitted by the
/// exp_sqrt_n model.
struct DecayReport {
  std::vector<double> mean_gap;
  std::vector<double> stderr_gap;
  double min_gap = 0.0;
  bool nonnegative = true;  // every mean_gap >= -tol
  /// mean_gap[n] <= mean_gap[n-1] + 3 (stderr[n] + stderr[n-1]) + the
  /// seed-mean approximation error added at step n.
  bool nonincreasing = true;
  int first_increase = -1;
  std::optional<RateFit> fit;
  std::string fit_error;
  /// Same window fitted by exp_n, for comparing the two decay models.
  std::optional<RateFit> fit_exp_n;
};
/// Without explicit options the fit uses fit_options_for(r).
DecayReport mean_radius_decay(const ExperimentResult& r, double tol = 1e-6,
                              const std::optional<FitOptions>& opt = std::nullopt);

/// Seed-mean of log d_H per step (zeros clamp to the hard floor).
std::vector<double> mean_log_hausdorff(const std::vector<Trajectory>& runs, double hard_floor = 1e-300);

}  // namespace symlab
