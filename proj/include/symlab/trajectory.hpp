#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symlab/metrics.hpp"
#include "symlab/sphere_grid.hpp"
#include "symlab/symmetrize.hpp"

namespace symlab {

struct TrajectoryStep {
  int n = 0;
  Vec direction;  // zero vector on the initial row
  double mean_radius = 0.0;
  double volume = 0.0;
  double circumradius = 0.0;
  double hausdorff = 0.0;  // to the limit ball
  double nikodym = 0.0;    // to the limit ball
  double inertia = 0.0;
  // Not serialized: error bounds carried along for validation.
  double approx_error = 0.0;  // cumulative operator approximation (Hausdorff)
  double nikodym_stderr = 0.0;
};

/// Metrics of S_n A or B_n A against the limit ball r(A)D (Steiner) or
/// L(A)D (Minkowski). Bodies are kept only as optional snapshots.
struct Trajectory {
  OperatorKind op = OperatorKind::Minkowski;
  int dim = 2;
  double limit_radius = 0.0;
  std::vector<TrajectoryStep> steps;
  std::vector<std::pair<int, Body>> snapshots;
  std::optional<Body> final_body;
  bool aborted = false;
  int aborted_at = -1;
  std::string abort_reason;
};

struct IterateOptions {
  SymmetrizeOptions sym;
  /// Skip the first k directions: realizes S_{k,n} / B_{k,n}.
  std::size_t start_offset = 0;
  /// Keep every K-th body (0 = none).
  int snapshot_every = 0;
  /// Monte-Carlo samples for the d = 3 Nikodym column.
  int nikodym_samples = 20000;
  bool keep_final = false;
};

/// Applies the operator left to right. Operator failures stop the run and
/// are recorded (aborted / aborted_at / abort_reason) rather than thrown.
/// Throws DimensionMismatch if a direction or the grid disagrees with the body.
Trajectory iterate(const Body& body, std::span<const Direction> seq, OperatorKind op, const SphereGrid& grid,
                   Rng& rng, const IterateOptions& opt = {});

/// Metrics row for one body against a given limit ball.
TrajectoryStep measure(const Body& b, double limit_radius, const SphereGrid& grid, Rng& rng, int nikodym_samples);

/// Limit radius: r(A) for Steiner, L(A) for Minkowski.
double limit_radius(OperatorKind op, const Body& b, const SphereGrid& grid);

/// Monotonicity audit. Returns one message per violated row; empty if clean.
/// Tolerances are relative `tol` plus the recorded approximation error.
std::vector<std::string> validate_trajectory(const Trajectory& t, double tol = 1e-9);

void write_csv(std::ostream& os, const Trajectory& t);
void write_csv(const std::string& path, const Trajectory& t);
/// Reads the CSV layout written above (operator and limit radius are not
/// stored and are left at defaults). Throws Io.
Trajectory read_csv(std::istream& is);
Trajectory read_csv(const std::string& path);

}  // namespace symlab
