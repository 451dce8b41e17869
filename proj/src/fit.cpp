#include "symlab/fit.hpp"

#include <algorithm>
#include <cmath>

#include "symlab/error.hpp"

namespace symlab {

std::string_view to_string(RateModel m) { return m == RateModel::ExpN ? "exp_n" : "exp_sqrt_n"; }

RateModel rate_model_from_string(std::string_view s) {
  if (s == "exp_n") return RateModel::ExpN;
  if (s == "exp_sqrt_n") return RateModel::ExpSqrtN;
  fail(ErrorKind::InvalidConfig, "unknown rate model '" + std::string(s) + "'");
}

std::optional<int> detect_floor(std::span<const double> v, double threshold) {
  for (std::size_t i = 0; i + 2 < v.size(); ++i)
    if (v[i] < threshold && v[i + 1] < threshold && v[i + 2] < threshold && v[i] <= v[i + 1] && v[i + 1] <= v[i + 2])
      return static_cast<int>(i);
  return std::nullopt;
}

RateFit fit_rate(std::span<const double> n, std::span<const double> value, RateModel model, const FitOptions& opt) {
  if (n.size() != value.size()) fail(ErrorKind::DimensionMismatch, "fit columns differ in length");
  RateFit f;
  f.model = model;
  f.floor_n = detect_floor(value, opt.floor_threshold);
  const std::size_t end = f.floor_n ? static_cast<std::size_t>(*f.floor_n) : value.size();

  std::vector<double> xs, ys;
  std::vector<int> used;
  bool any_above = false;
  for (std::size_t i = 0; i < value.size(); ++i) any_above |= value[i] > opt.hard_floor;
  for (std::size_t i = 0; i < end; ++i) {
    if (n[i] < opt.n_start || !(value[i] > opt.hard_floor)) continue;
    xs.push_back(model == RateModel::ExpN ? n[i] : std::sqrt(n[i]));
    ys.push_back(std::log(value[i]));
    used.push_back(static_cast<int>(n[i]));
  }
  if (!any_above || (f.floor_n && *f.floor_n == 0)) fail(ErrorKind::AllAtFloor, "every value sits at the numerical floor");
  if (static_cast<int>(xs.size()) < opt.min_points)
    fail(ErrorKind::TooFewPoints, std::to_string(xs.size()) + " usable points, need " + std::to_string(opt.min_points));

  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sx += xs[i], sy += ys[i];
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0)) fail(ErrorKind::TooFewPoints, "fit abscissae are all equal");
  const double slope = sxy / sxx;
  const double icpt = my - slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (icpt + slope * xs[i]);
    ss += r * r;
  }
  f.rate = -slope;
  f.prefactor = std::exp(icpt);
  f.n_lo = used.front();
  f.n_hi = used.back();
  f.residual = std::sqrt(ss / m);
  return f;
}

RateFit fit_rate(const Trajectory& t, RateModel model, const FitOptions& opt) {
  std::vector<double> n, v;
  for (const auto& s : t.steps) {
    n.push_back(s.n);
    v.push_back(s.hausdorff);
  }
  return fit_rate(n, v, model, opt);
}

double theoretical_c_bound(int dim, double alpha) {
  if (dim < 2) fail(ErrorKind::InvalidConfig, "dimension must be at least 2");
  const double d = dim;
  if (!(alpha > 0) || !(alpha < d / (d - 1)))
    fail(ErrorKind::AlphaTooLarge, "alpha must lie in (0, d/(d-1)) for a positive rate bound");
  return -std::log(alpha * (d - 1) / d) / (2 * d);
}

N0Estimate estimate_n0(const std::vector<std::vector<double>>& series, double r, int min_series,
                       double floor_threshold) {
  if (!(r > 0 && r < 1)) fail(ErrorKind::InvalidConfig, "rate r must lie in (0, 1)");
  if (static_cast<int>(series.size()) < min_series)
    fail(ErrorKind::TooFewPoints, std::to_string(series.size()) + " trajectories, need " + std::to_string(min_series));
  N0Estimate e;
  e.rate = r;
  const double lr = std::log(r);
  std::size_t longest = 0;
  int unstable = 0;
  for (const auto& s : series) {
    longest = std::max(longest, s.size());
    int n0 = 0;
    for (std::size_t n = 0; n < s.size(); ++n)
      if (!(s[n] <= 0.0 || std::log(s[n]) <= lr * static_cast<double>(n))) n0 = static_cast<int>(n) + 1;
    const bool stable = n0 < static_cast<int>(s.size());
    const auto fl = detect_floor(s, floor_threshold);
    e.samples.push_back(n0);
    e.stabilized.push_back(stable);
    e.floor_before_stable.push_back(fl && *fl < n0);
    unstable += stable ? 0 : 1;
  }
  if (2 * unstable > static_cast<int>(series.size()))
    fail(ErrorKind::RateTooAggressive, std::to_string(unstable) + " of " + std::to_string(series.size()) +
                                           " trajectories never satisfy d_H <= r^n up to their last step");
  e.tail.assign(longest + 1, 0.0);
  for (std::size_t m = 0; m <= longest; ++m) {
    int c = 0;
    for (int n0 : e.samples) c += n0 > static_cast<int>(m) ? 1 : 0;
    e.tail[m] = static_cast<double>(c) / static_cast<double>(e.samples.size());
  }
  return e;
}

nlohmann::json fit_to_json(const RateFit& f) {
  nlohmann::json j{{"model", to_string(f.model)}, {"rate", f.rate},     {"prefactor", f.prefactor},
                   {"fit_range", {f.n_lo, f.n_hi}}, {"residual", f.residual}};
  j["floor_n"] = f.floor_n ? nlohmann::json(*f.floor_n) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json n0_to_json(const N0Estimate& e) {
  return {{"rate", e.rate},
          {"samples", e.samples},
          {"stabilized", e.stabilized},
          {"floor_before_stable", e.floor_before_stable},
          {"tail", e.tail}};
}

}  // namespace symlab
