// Command-line front end: run / fit / n0 / probe / harmonics / bound / decay.
// Exit codes: 0 ok, 2 validation or input error, 3 anomaly flagged.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "symlab/error.hpp"
#include "symlab/experiment.hpp"
#include "symlab/fit.hpp"
#include "symlab/harmonics.hpp"
#include "symlab/probe.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace symlab;

namespace {

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::Io, "cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidConfig, path + ": " + e.what());
  }
}

int cmd_run(const std::string& path, bool serial) {
  const ExperimentConfig cfg = config_from_json(read_json(path));
  const ExperimentResult r = serial ? run_experiment_serial(cfg) : run_experiment(cfg);
  json seeds = json::array();
  int violations = 0;
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    const auto& t = r.runs[i];
    const auto bad = validate_trajectory(t);
    violations += static_cast<int>(bad.size());
    seeds.push_back({{"seed", i},
                     {"steps", t.steps.size() - 1},
                     {"final_hausdorff", t.steps.back().hausdorff},
                     {"final_nikodym", t.steps.back().nikodym},
                     {"aborted", t.aborted},
                     {"invariant_violations", bad}});
  }
  std::cout << json{{"limit_radius", r.runs.front().limit_radius}, {"seeds", seeds}}.dump(2) << '\n';
  return violations ? 3 : 0;
}

int cmd_fit(const std::string& path, const std::string& model, int n_start) {
  FitOptions opt;
  opt.n_start = n_start;
  const RateFit f = fit_rate(read_csv(path), rate_model_from_string(model), opt);
  std::cout << fit_to_json(f).dump(2) << '\n';
  return 0;
}

int cmd_n0(const std::string& dir, double rate, int min_series) {
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".csv") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  std::vector<std::vector<double>> series;
  for (const auto& f : files) {
    std::vector<double> s;
    for (const auto& st : read_csv(f).steps) s.push_back(st.hausdorff);
    series.push_back(std::move(s));
  }
  std::cout << n0_to_json(estimate_n0(series, rate, min_series)).dump(2) << '\n';
  return 0;
}

int cmd_probe(const std::string& path) {
  const ProbeReport r = probe_from_config(read_json(path));
  std::cout << probe_to_json(r).dump(2) << '\n';
  return r.any_anomaly() ? 3 : 0;
}

int cmd_harmonics(int dim, int k, long trials, std::uint64_t seed) {
  Rng rng(seed);
  const Estimate e = contraction_ratio(dim, k, trials, rng);
  json out{{"dim", dim}, {"k", k}, {"trials", trials}, {"estimate", e.value}, {"stderr", e.stderr_}};
  if (dim >= 2) {
    const HarmonicDims h = dim_spaces(dim, k);
    const Rational q = contraction_rational(dim, k);
    out["dim_Sk"] = h.dim_sk;
    out["ell_k"] = h.ell;
    out["exact_ratio"] = std::to_string(q.num) + "/" + std::to_string(q.den);
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_bound(int dim, double alpha) {
  std::cout << json{{"dim", dim}, {"alpha", alpha}, {"c_bound", theoretical_c_bound(dim, alpha)}}.dump(2) << '\n';
  return 0;
}

int cmd_decay(const std::string& path) {
  const ExperimentConfig cfg = config_from_json(read_json(path));
  const DecayReport d = mean_radius_decay(run_experiment(cfg));
  json out{{"mean_gap", d.mean_gap}, {"stderr_gap", d.stderr_gap}, {"min_gap", d.min_gap},
           {"nonnegative", d.nonnegative}};
  out["fit"] = d.fit ? fit_to_json(*d.fit) : json(d.fit_error);
  if (d.fit_exp_n) out["fit_exp_n"] = fit_to_json(*d.fit_exp_n);
  std::cout << out.dump(2) << '\n';
  return d.nonnegative ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex-body symmetrization laboratory"};
  app.require_subcommand(1);

  std::string path, model = "exp_n";
  bool serial = false;
  double rate = 0.0, alpha = 1.0;
  int dim = 2, k = 1, n_start = 0, min_series = 20;
  long trials = 100000;
  std::uint64_t seed = 1;

  auto* run = app.add_subcommand("run", "Run an experiment config; trajectories go to output_path");
  run->add_option("config", path, "Experiment JSON")->required();
  run->add_flag("--serial", serial, "Run seeds on one thread");

  auto* fit = app.add_subcommand("fit", "Fit a decay rate to a trajectory's Hausdorff column");
  fit->add_option("trajectory", path, "Trajectory CSV")->required();
  fit->add_option("--model", model, "exp_n | exp_sqrt_n");
  fit->add_option("--from", n_start, "First step of the fit window");

  auto* n0 = app.add_subcommand("n0", "Estimate n0 and its tail over a directory of trajectories");
  n0->add_option("dir", path, "Directory of trajectory CSVs")->required();
  n0->add_option("--rate", rate, "r in (0, 1)")->required();
  n0->add_option("--min-series", min_series, "Minimum number of trajectories");

  auto* probe = app.add_subcommand("probe", "Steiner/Minkowski equivalence probe");
  probe->add_option("config", path, "Probe JSON")->required();

  auto* harm = app.add_subcommand("harmonics", "Monte-Carlo contraction ratio for degree-k harmonics");
  harm->add_option("--dim", dim)->required();
  harm->add_option("--k", k)->required();
  harm->add_option("--trials", trials);
  harm->add_option("--seed", seed);

  auto* bound = app.add_subcommand("bound", "Theoretical rate bound -(1/2d) log(alpha (d-1)/d)");
  bound->add_option("--dim", dim)->required();
  bound->add_option("--alpha", alpha)->required();

  auto* decay = app.add_subcommand("decay", "Mean-radius gap of a Steiner run, with exp_sqrt_n fit");
  decay->add_option("config", path, "Experiment JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(path, serial);
    if (*fit) return cmd_fit(path, model, n_start);
    if (*n0) return cmd_n0(path, rate, min_series);
    if (*probe) return cmd_probe(path);
    if (*harm) return cmd_harmonics(dim, k, trials, seed);
    if (*bound) return cmd_bound(dim, alpha);
    if (*decay) return cmd_decay(path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
