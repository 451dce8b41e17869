#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "symlab/trajectory.hpp"

namespace symlab {

enum class RateModel { ExpN, ExpSqrtN };
std::string_view to_string(RateModel m);
RateModel rate_model_from_string(std::string_view s);  // "exp_n" | "exp_sqrt_n"

/// value(n) ~ prefactor * exp(-rate * n) or prefactor * exp(-rate * sqrt n),
/// least squares in log space over [n_lo, n_hi].
struct RateFit {
  RateModel model = RateModel::ExpN;
  double rate = 0.0;
  double prefactor = 0.0;
  int n_lo = 0;
  int n_hi = 0;
  double residual = 0.0;  // RMS of log residuals
  std::optional<int> floor_n;
};

struct FitOptions {
  /// Floor: three consecutive non-decreasing values below this.
  double floor_threshold = 1e-10;
  /// Values at or below this never enter a fit.
  double hard_floor = 1e-12;
  int min_points = 10;
  int n_start = 0;
};

/// First index i with v[i] <= v[i+1] <= v[i+2], all below threshold.
std::optional<int> detect_floor(std::span<const double> v, double threshold);

/// `n` and `value` are parallel columns. Throws TooFewPoints, AllAtFloor.
RateFit fit_rate(std::span<const double> n, std::span<const double> value, RateModel model, const FitOptions& opt = {});
/// Fits the Hausdorff column.
RateFit fit_rate(const Trajectory& t, RateModel model, const FitOptions& opt = {});

/// -(1/2d) log(alpha (d-1)/d). Throws AlphaTooLarge unless alpha < d/(d-1).
double theoretical_c_bound(int dim, double alpha);

struct N0Estimate {
  double rate = 0.0;  // r in {d_H(n) <= r^n for all n >= n0}
  std::vector<int> samples;
  std::vector<bool> stabilized;        // false: violated at the last step
  std::vector<bool> floor_before_stable;
  std::vector<double> tail;            // tail[m] = P(n0 > m)
};

/// Per-series n0 = min{N : d(n) <= r^n for every observed n >= N}; row
/// index is n. Throws InvalidConfig (r outside (0, 1)), TooFewPoints
/// (< min_series series), RateTooAggressive (> half never stabilize).
N0Estimate estimate_n0(const std::vector<std::vector<double>>& series, double r, int min_series = 20,
                       double floor_threshold = 1e-10);

nlohmann::json fit_to_json(const RateFit& f);
nlohmann::json n0_to_json(const N0Estimate& e);

}  // namespace symlab
