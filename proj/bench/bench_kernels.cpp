// Serial reference vs OpenMP kernels. Usage: symlab_bench [threads]
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "symlab/directions.hpp"
#include "symlab/experiment.hpp"
#include "symlab/harmonics.hpp"
#include "symlab/kernels.hpp"

using namespace symlab;

namespace {

double seconds(const std::function<void()>& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              same ? "identical" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) omp_set_num_threads(std::atoi(argv[1]));
  std::printf("threads %d\n%-28s %10s %10s %9s\n", omp_get_max_threads(), "kernel", "serial s", "omp s", "speedup");

  {
    const Rng rng(7);
    auto f = [](Rng& r) { return sample_haar(r, 3)[0] * sample_haar(r, 3)[2]; };
    Estimate a, b;
    const double s = seconds([&] { a = mc_mean_serial(2000000, rng, f); });
    const double p = seconds([&] { b = mc_mean(2000000, rng, f); });
    row("mc_mean (2e6 trials)", s, p, a.value == b.value);
  }
  {
    const Body cube = unit_cube_hull(-1, 1);
    const SphereGrid g = sphere_grid(3, 400);
    std::vector<double> a, b;
    const double s = seconds([&] { a = support_profile_values_serial(cube, g); });
    const double p = seconds([&] { b = support_profile_values(cube, g); });
    row("support profile (3d, 320k)", s, p, a == b);
  }
  {
    Estimate a, b;
    const double s = seconds([&] { Rng r(3); a = contraction_ratio_serial(3, 4, 20000, r); }, 1);
    const double p = seconds([&] { Rng r(3); b = contraction_ratio(3, 4, 20000, r); }, 1);
    row("contraction ratio d=3 k=4", s, p, a.value == b.value);
  }
  {
    ExperimentConfig c;
    c.body = "square";
    c.op = OperatorKind::Minkowski;
    c.n_steps = 40;
    c.n_seeds = 8;
    ExperimentResult a, b;
    const double s = seconds([&] { a = run_experiment_serial(c); }, 1);
    const double p = seconds([&] { b = run_experiment(c); }, 1);
    bool same = a.runs.size() == b.runs.size();
    for (std::size_t i = 0; same && i < a.runs.size(); ++i)
      same = a.runs[i].steps.back().hausdorff == b.runs[i].steps.back().hausdorff;
    row("run_experiment (8 seeds)", s, p, same);
  }
  return 0;
}
