#include "symlab/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "symlab/error.hpp"
#include "symlab/kernels.hpp"

namespace symlab {

namespace {

Body random_body(int dim, std::uint64_t seed) {
  Rng rng(seed, 0x5eedb0d1);
  if (dim == 2) {
    std::vector<Vec2> pts;
    while (pts.size() < 12) {
      const Vec2 x(rng.uniform(-1, 1), rng.uniform(-1, 1));
      if (x.squaredNorm() <= 1) pts.push_back(x);
    }
    return make_polygon(pts);
  }
  std::vector<Vec> pts;
  while (pts.size() < 40) {
    Vec x(dim);
    for (int k = 0; k < dim; ++k) x[k] = rng.uniform(-1, 1);
    if (x.squaredNorm() <= 1) pts.push_back(x);
  }
  return make_hull(dim, pts);
}

}  // namespace

Body named_body(const std::string& name, int dim, std::uint64_t seed) {
  if (dim == 2) {
    if (name == "square") return axis_box(-1, -1, 1, 1);
    if (name == "unit_square") return axis_box(0, 0, 1, 1);
    if (name == "rectangle") return axis_box(0, 0, 2, 1);
    if (name == "triangle") {
      const std::vector<Vec2> t = {{0, 0}, {1, 0}, {0, 1}};
      return make_polygon(t);
    }
    if (name == "disk") return regular_polygon(4096, 1.0);
    if (name == "random") return random_body(2, seed);
  } else if (dim == 3) {
    if (name == "cube") return unit_cube_hull(-1, 1);
    if (name == "unit_cube") return unit_cube_hull(0, 1);
    if (name == "ball") return icosphere(3, 1.0);
    if (name == "tetrahedron") {
      Mat v(3, 4);
      v << 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1;
      return make_hull(v);
    }
    if (name == "random") return random_body(3, seed);
  } else {
    fail(ErrorKind::UnsupportedDimension, "named bodies exist for d in {2, 3}");
  }
  fail(ErrorKind::InvalidConfig, "unknown body '" + name + "' for d = " + std::to_string(dim));
}

Body body_from_spec(const nlohmann::json& spec, int dim) {
  if (spec.is_string()) return named_body(spec.get<std::string>(), dim);
  if (spec.is_object() && spec.contains("vertices")) {
    Body b = body_from_json(spec);
    if (body_dim(b) != dim) fail(ErrorKind::DimensionMismatch, "body literal dimension differs from config");
    return b;
  }
  if (spec.is_object() && spec.contains("name"))
    return named_body(spec.at("name").get<std::string>(), dim, spec.value("seed", std::uint64_t{0}));
  fail(ErrorKind::InvalidConfig, "body must be a name, {\"name\": ...} or a body literal");
}

Body normalize_volume(const Body& b) {
  const int d = body_dim(b);
  const double v = volume(b);
  if (!(v > 0)) fail(ErrorKind::InvalidConfig, "cannot normalize the volume of a degenerate body");
  return scale_body(b, std::pow(unit_ball_volume(d) / v, 1.0 / d));
}

std::size_t default_vertex_budget(OperatorKind op, int dim) {
  if (dim == 2) return op == OperatorKind::Minkowski ? 65536 : 16384;
  return 2048;
}

double representation_floor(std::size_t budget, double rho) {
  const double t = std::numbers::pi / static_cast<double>(budget);
  return 10.0 * rho * t * t;
}

FitOptions fit_options_for(const ExperimentResult& r) {
  FitOptions opt;
  if (r.config.dim == 2 && !r.runs.empty()) {
    const double f = representation_floor(r.vertex_budget, r.runs.front().limit_radius);
    if (f > opt.floor_threshold) {
      opt.floor_threshold = f;
      opt.hard_floor = f;
    }
  }
  return opt;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.dim = j.value("dim", c.dim);
    if (j.contains("body")) c.body = j.at("body");
    if (j.contains("operator")) c.op = operator_from_string(j.at("operator").get<std::string>());
    if (j.contains("source")) c.source = j.at("source");
    c.n_steps = j.value("n_steps", c.n_steps);
    c.n_seeds = j.value("n_seeds", c.n_seeds);
    c.grid_resolution = j.value("grid_resolution", c.grid_resolution);
    if (j.contains("snapshot_every") && !j.at("snapshot_every").is_null())
      c.snapshot_every = j.at("snapshot_every").get<int>();
    c.output_path = j.value("output_path", c.output_path);
    c.normalize_volume = j.value("normalize_volume", c.normalize_volume);
    c.vertex_budget = j.value("vertex_budget", c.vertex_budget);
    c.steiner_samples = j.value("steiner_samples", c.steiner_samples);
    c.nikodym_samples = j.value("nikodym_samples", c.nikodym_samples);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidConfig, std::string("bad config: ") + e.what());
  }
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  return {{"dim", c.dim},
          {"body", c.body},
          {"operator", to_string(c.op)},
          {"source", c.source},
          {"n_steps", c.n_steps},
          {"n_seeds", c.n_seeds},
          {"grid_resolution", c.grid_resolution},
          {"snapshot_every", c.snapshot_every},
          {"output_path", c.output_path},
          {"normalize_volume", c.normalize_volume},
          {"vertex_budget", c.vertex_budget},
          {"steiner_samples", c.steiner_samples},
          {"nikodym_samples", c.nikodym_samples}};
}

void validate(const ExperimentConfig& c) {
  auto bad = [](const std::string& m) { fail(ErrorKind::InvalidConfig, m); };
  if (c.dim != 2 && c.dim != 3) bad("dim must be 2 or 3");
  if (c.n_steps < 1) bad("n_steps must be at least 1");
  if (c.n_seeds < 1) bad("n_seeds must be at least 1");
  if (c.grid_resolution < 8) bad("grid_resolution must be at least 8");
  if (c.snapshot_every < 0) bad("snapshot_every must be nonnegative");
  if (c.vertex_budget != 0 && c.vertex_budget < 4) bad("vertex_budget must be 0 (default) or at least 4");
  if (c.dim == 3 && c.op == OperatorKind::Steiner && c.steiner_samples < 100) bad("steiner_samples must be >= 100");
  if (c.nikodym_samples < 1) bad("nikodym_samples must be positive");
  (void)source_from_json(c.source, c.dim);
  (void)body_from_spec(c.body, c.dim);
}

namespace {

ExperimentResult run_impl(const ExperimentConfig& c, bool parallel) {
  validate(c);
  ExperimentResult res;
  res.config = c;
  res.initial = body_from_spec(c.body, c.dim);
  if (c.normalize_volume) res.initial = normalize_volume(res.initial);
  const SphereGrid grid = sphere_grid(c.dim, c.grid_resolution);
  const DirectionSource src = source_from_json(c.source, c.dim);

  IterateOptions io;
  io.sym.vertex_budget = c.vertex_budget ? c.vertex_budget : default_vertex_budget(c.op, c.dim);
  res.vertex_budget = io.sym.vertex_budget;
  io.sym.steiner_samples = c.steiner_samples;
  io.snapshot_every = c.snapshot_every;
  io.nikodym_samples = c.nikodym_samples;

  namespace fs = std::filesystem;
  if (!c.output_path.empty()) {
    std::error_code ec;
    fs::create_directories(c.output_path, ec);
    if (ec) fail(ErrorKind::Io, "cannot create " + c.output_path + ": " + ec.message());
  }

  const std::function<Trajectory(int)> one = [&](int i) {
    const auto seq = generate(src, c.dim, c.n_steps, static_cast<std::uint64_t>(i));
    Rng rng(src.seed, (std::uint64_t{1} << 32) + static_cast<std::uint64_t>(i));
    Trajectory t = iterate(res.initial, seq, c.op, grid, rng, io);
    if (!c.output_path.empty())
      write_csv((fs::path(c.output_path) / ("seed_" + std::to_string(i) + ".csv")).string(), t);
    return t;
  };
  res.runs = parallel ? parallel_map(c.n_seeds, one) : parallel_map_serial(c.n_seeds, one);

  if (!c.output_path.empty()) {
    nlohmann::json summary{{"config", config_to_json(c)},
                           {"initial_body", body_to_json(res.initial)},
                           {"limit_radius", res.runs.front().limit_radius},
                           {"vertex_budget", io.sym.vertex_budget}};
    nlohmann::json seeds = nlohmann::json::array();
    for (std::size_t i = 0; i < res.runs.size(); ++i) {
      const auto& t = res.runs[i];
      seeds.push_back({{"seed", i},
                       {"aborted", t.aborted},
                       {"aborted_at", t.aborted_at},
                       {"abort_reason", t.abort_reason},
                       {"invariant_violations", validate_trajectory(t)}});
    }
    summary["seeds"] = seeds;
    std::ofstream f(fs::path(c.output_path) / "run.json");
    f << summary.dump(2) << '\n';
  }
  return res;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& c) { return run_impl(c, true); }
ExperimentResult run_experiment_serial(const ExperimentConfig& c) { return run_impl(c, false); }

DecayReport mean_radius_decay(const ExperimentResult& r, double tol, const std::optional<FitOptions>& opt) {
  if (r.config.op != OperatorKind::Steiner) fail(ErrorKind::InvalidConfig, "mean_radius_decay needs a Steiner run");
  if (r.runs.empty()) fail(ErrorKind::TooFewPoints, "no trajectories");
  std::size_t len = r.runs.front().steps.size();
  for (const auto& t : r.runs) len = std::min(len, t.steps.size());
  const double limit = r.runs.front().limit_radius;
  DecayReport d;
  std::vector<double> ns;
  for (std::size_t n = 0; n < len; ++n) {
    RunningStats s;
    double added = 0.0;
    for (const auto& t : r.runs) {
      s.push(t.steps[n].mean_radius - limit);
      if (n > 0) added += t.steps[n].approx_error - t.steps[n - 1].approx_error;
    }
    const Estimate e = s.estimate();
    d.mean_gap.push_back(e.value);
    d.stderr_gap.push_back(e.stderr_);
    ns.push_back(static_cast<double>(n));
    if (n > 0 && d.nonincreasing) {
      const double slack = 3 * (d.stderr_gap[n] + d.stderr_gap[n - 1]) + added / static_cast<double>(r.runs.size());
      if (d.mean_gap[n] > d.mean_gap[n - 1] + slack) {
        d.nonincreasing = false;
        d.first_increase = static_cast<int>(n);
      }
    }
  }
  d.min_gap = *std::min_element(d.mean_gap.begin(), d.mean_gap.end());
  d.nonnegative = d.min_gap >= -tol;
  try {
    const FitOptions o = opt ? *opt : fit_options_for(r);
    d.fit = fit_rate(ns, d.mean_gap, RateModel::ExpSqrtN, o);
    d.fit_exp_n = fit_rate(ns, d.mean_gap, RateModel::ExpN, o);
  } catch (const Error& e) {
    d.fit_error = e.what();
  }
  return d;
}

std::vector<double> mean_log_hausdorff(const std::vector<Trajectory>& runs, double hard_floor) {
  if (runs.empty()) return {};
  std::size_t len = runs.front().steps.size();
  for (const auto& t : runs) len = std::min(len, t.steps.size());
  std::vector<double> out(len, 0.0);
  for (std::size_t n = 0; n < len; ++n) {
    for (const auto& t : runs) out[n] += std::log(std::max(t.steps[n].hausdorff, hard_floor));
    out[n] /= static_cast<double>(runs.size());
  }
  return out;
}

}  // namespace symlab
