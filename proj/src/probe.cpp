#include "symlab/probe.hpp"

#include "symlab/error.hpp"
#include "symlab/kernels.hpp"

namespace symlab {

bool ProbeReport::any_anomaly() const {
  for (const auto& e : entries)
    if (e.anomaly) return true;
  return false;
}

ProbeReport equivalence_probe(const std::vector<Direction>& seq, const std::vector<NamedBody>& bodies,
                              const std::vector<int>& offsets, double tol, const SymmetrizeOptions& sym,
                              std::uint64_t seed) {
  if (!(tol > 0)) fail(ErrorKind::InvalidConfig, "probe tolerance must be positive");
  for (int k : offsets)
    if (k < 0 || k >= static_cast<int>(seq.size())) fail(ErrorKind::InvalidConfig, "tail offset outside the sequence");
  ProbeReport rep;
  rep.tol = tol;
  struct Job {
    std::size_t body;
    int offset;
  };
  std::vector<Job> jobs;
  for (std::size_t b = 0; b < bodies.size(); ++b)
    for (int k : offsets) jobs.push_back({b, k});

  const std::function<ProbeEntry(int)> run = [&](int i) {
    const Job& j = jobs[static_cast<std::size_t>(i)];
    const Body& a = bodies[j.body].body;
    const SphereGrid grid = sphere_grid(body_dim(a), 64);
    IterateOptions io;
    io.sym = sym;
    io.start_offset = static_cast<std::size_t>(j.offset);
    io.nikodym_samples = 1000;
    ProbeEntry e;
    e.body = bodies[j.body].name;
    e.offset = j.offset;
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const Trajectory s = iterate(a, seq, OperatorKind::Steiner, grid, rng, io);
    const Trajectory m = iterate(a, seq, OperatorKind::Minkowski, grid, rng, io);
    if (s.aborted || m.aborted) e.note = "aborted: " + s.abort_reason + m.abort_reason;
    e.steiner_distance = s.steps.back().hausdorff / s.limit_radius;
    e.minkowski_distance = m.steps.back().hausdorff / m.limit_radius;
    e.steiner_rounds = e.steiner_distance <= tol;
    e.minkowski_rounds = e.minkowski_distance <= tol;
    if (e.steiner_rounds != e.minkowski_rounds) {
      const double failing = e.steiner_rounds ? e.minkowski_distance : e.steiner_distance;
      e.anomaly = failing > 2 * tol;
      if (e.anomaly) e.note = "ANOMALY: verdicts disagree";
    }
    return e;
  };
  rep.entries = parallel_map(static_cast<int>(jobs.size()), run);
  return rep;
}

ProbeReport probe_from_config(const nlohmann::json& j) {
  try {
    const int dim = j.value("dim", 2);
    const int n = j.at("n_steps").get<int>();
    const DirectionSource src = source_from_json(j.at("source"), dim);
    const auto seq = generate(src, dim, n, 0);
    std::vector<NamedBody> bodies;
    for (const auto& b : j.at("bodies")) bodies.push_back({b.is_string() ? b.get<std::string>() : b.dump(), body_from_spec(b, dim)});
    const auto offsets = j.value("offsets", std::vector<int>{0});
    SymmetrizeOptions sym;
    sym.vertex_budget = j.value("vertex_budget", std::size_t{4096});
    return equivalence_probe(seq, bodies, offsets, j.value("tol", 0.02), sym, src.seed);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidConfig, std::string("bad probe config: ") + e.what());
  }
}

nlohmann::json probe_to_json(const ProbeReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : r.entries)
    rows.push_back({{"body", e.body},
                    {"offset", e.offset},
                    {"steiner_distance", e.steiner_distance},
                    {"minkowski_distance", e.minkowski_distance},
                    {"steiner_rounds", e.steiner_rounds},
                    {"minkowski_rounds", e.minkowski_rounds},
                    {"anomaly", e.anomaly},
                    {"note", e.note}});
  return {{"tol", r.tol}, {"entries", rows}, {"anomaly", r.any_anomaly()}};
}

}  // namespace symlab
