#pragma once

#include <functional>
#include <string_view>

#include "symlab/body.hpp"
#include "symlab/metrics.hpp"
#include "symlab/rng.hpp"

namespace symlab {

enum class OperatorKind { Steiner, Minkowski };

std::string_view to_string(OperatorKind op);
/// Accepts "steiner" / "minkowski" (case-insensitive). Throws InvalidConfig.
OperatorKind operator_from_string(std::string_view s);

struct SymmetrizeOptions {
  /// Vertex cap after each operator application.
  std::size_t vertex_budget = 4096;
  /// Over budget: prune (true) or throw VertexBudgetExceeded (false).
  bool prune_over_budget = true;
  /// After pruning, rescale about the origin so the operator's conserved
  /// quantity (volume for Steiner, mean radius for Minkowski) is restored.
  bool restore_invariant = true;
  /// Chord samples for the d = 3 Steiner operator.
  int steiner_samples = 2000;
};

/// Operator output plus the Hausdorff bound of any approximation made
/// (pruning, chord sampling). `volume` carries the sampled-Steiner volume
/// estimate when applicable.
struct SymmetralResult {
  Body body;
  double approx_error = 0.0;
  Estimate volume{};
};

/// Exact Steiner symmetral of a polygon about the line u-perp. Degenerate
/// polygons are projected onto u-perp.
ConvexPolygon steiner_2d(const ConvexPolygon& p, const Direction& u);

/// Approximate Steiner symmetral of a d = 3 hull from `m` chords sampled
/// over the projection onto u-perp. The chord-based volume estimate of the
/// true symmetral is written to `volume` when given.
VertexHull steiner_sampled(const VertexHull& h, const Direction& u, int m, Rng& rng,
                           Estimate* volume = nullptr);

/// Minkowski sum of two convex polygons (edge merge, linear time).
ConvexPolygon minkowski_sum(const ConvexPolygon& p, const ConvexPolygon& q);

/// B_u A = (A + pi_u A) / 2, pruned to the vertex budget if needed.
SymmetralResult minkowski(const Body& b, const Direction& u, const SymmetrizeOptions& opt = {});
SymmetralResult steiner(const Body& b, const Direction& u, Rng& rng, const SymmetrizeOptions& opt = {});
SymmetralResult apply_operator(OperatorKind op, const Body& b, const Direction& u, Rng& rng,
                               const SymmetrizeOptions& opt = {});

enum class Preserve { Nothing, Area, Perimeter };

struct PruneResult {
  ConvexPolygon polygon;
  double hausdorff_error = 0.0;
};
/// Drops the flattest vertices (smallest height over the neighbour chord,
/// never two adjacent ones in one pass) until size <= budget.
PruneResult prune_polygon(const ConvexPolygon& p, std::size_t budget, Preserve preserve);

struct HullPruneResult {
  VertexHull hull;
  double hausdorff_error = 0.0;
};
/// Greedy support coverage: keeps the maximizer of each of `budget`
/// quasi-uniform directions. The error is measured against `exact_support`
/// on a denser direction set.
HullPruneResult prune_hull3(const VertexHull& h, std::size_t budget,
                            const std::function<double(const Vec3&)>& exact_support);

/// Quasi-uniform points on S^2 (Fibonacci lattice).
std::vector<Vec3> fibonacci_sphere(int n);

}  // namespace symlab
