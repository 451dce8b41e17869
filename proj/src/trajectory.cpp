#include "symlab/trajectory.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "symlab/error.hpp"

namespace symlab {

double limit_radius(OperatorKind op, const Body& b, const SphereGrid& grid) {
  return op == OperatorKind::Steiner ? equivalent_radius(b) : mean_radius(b, grid);
}

TrajectoryStep measure(const Body& b, double limit_r, const SphereGrid& grid, Rng& rng, int nikodym_samples) {
  const int d = body_dim(b);
  const BallSpec ball{d, limit_r};
  TrajectoryStep s;
  s.mean_radius = mean_radius(b, grid);
  s.volume = volume(b);
  s.circumradius = circumradius(b);
  s.hausdorff = hausdorff(b, ball, grid);
  const Estimate dn = d == 2 ? nikodym(b, ball) : nikodym(b, ball, rng, nikodym_samples);
  s.nikodym = dn.value;
  s.nikodym_stderr = dn.stderr_;
  s.inertia = inertia(b);
  return s;
}

Trajectory iterate(const Body& body, std::span<const Direction> seq, OperatorKind op, const SphereGrid& grid,
                   Rng& rng, const IterateOptions& opt) {
  const int d = body_dim(body);
  if (grid.dim() != d) fail(ErrorKind::DimensionMismatch, "grid and body dimensions differ");
  for (const auto& u : seq)
    if (u.dim() != d) fail(ErrorKind::DimensionMismatch, "direction and body dimensions differ");

  Trajectory t;
  t.op = op;
  t.dim = d;
  t.limit_radius = limit_radius(op, body, grid);
  Rng metric_rng = rng.split(1);
  Rng op_rng = rng.split(2);

  TrajectoryStep first = measure(body, t.limit_radius, grid, metric_rng, opt.nikodym_samples);
  first.n = 0;
  first.direction = Vec::Zero(d);
  t.steps.push_back(first);
  if (opt.snapshot_every > 0) t.snapshots.emplace_back(0, body);

  Body cur = body;
  double err = 0.0;
  int n = 0;
  for (std::size_t i = opt.start_offset; i < seq.size(); ++i) {
    ++n;
    try {
      SymmetralResult r = apply_operator(op, cur, seq[i], op_rng, opt.sym);
      cur = std::move(r.body);
      err += r.approx_error;
      TrajectoryStep s = measure(cur, t.limit_radius, grid, metric_rng, opt.nikodym_samples);
      s.n = n;
      s.direction = seq[i].coords();
      s.approx_error = err;
      t.steps.push_back(std::move(s));
    } catch (const Error& e) {
      t.aborted = true;
      t.aborted_at = n;
      t.abort_reason = std::string(to_string(e.kind())) + ": " + e.what();
      break;
    }
    if (opt.snapshot_every > 0 && n % opt.snapshot_every == 0) t.snapshots.emplace_back(n, cur);
  }
  if (opt.keep_final) t.final_body = cur;
  return t;
}

std::vector<std::string> validate_trajectory(const Trajectory& t, double tol) {
  std::vector<std::string> bad;
  if (t.steps.empty()) return bad;
  const auto& s0 = t.steps.front();
  auto note = [&](int n, const std::string& what) { bad.push_back("step " + std::to_string(n) + ": " + what); };
  for (std::size_t i = 1; i < t.steps.size(); ++i) {
    const auto& p = t.steps[i - 1];
    const auto& s = t.steps[i];
    const double delta = s.approx_error - p.approx_error;
    if (s.circumradius > p.circumradius + tol * s0.circumradius + delta) note(s.n, "circumradius increased");
    if (t.op == OperatorKind::Steiner) {
      if (std::abs(s.volume - s0.volume) > tol * s0.volume) note(s.n, "volume drifted");
      if (s.mean_radius > p.mean_radius + tol * s0.mean_radius + delta) note(s.n, "mean radius increased");
    } else {
      if (std::abs(s.mean_radius - s0.mean_radius) > tol * s0.mean_radius) note(s.n, "mean radius drifted");
      // Pruning can shave at most delta times the boundary measure, bounded
      // via the circumradius.
      const double slack = delta * t.dim * unit_ball_volume(t.dim) * std::pow(s.circumradius, t.dim - 1);
      if (s.volume < p.volume - tol * s0.volume - slack) note(s.n, "volume decreased");
    }
  }
  return bad;
}

void write_csv(std::ostream& os, const Trajectory& t) {
  os << "n,ux,uy" << (t.dim >= 3 ? ",uz" : "") << ",L,vol,R,dH,dN,I\n";
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << ',' << buf;
  };
  for (const auto& s : t.steps) {
    os << s.n;
    for (int k = 0; k < std::min(t.dim, 3); ++k) num(k < s.direction.size() ? s.direction[k] : 0.0);
    num(s.mean_radius);
    num(s.volume);
    num(s.circumradius);
    num(s.hausdorff);
    num(s.nikodym);
    num(s.inertia);
    os << '\n';
  }
}

void write_csv(const std::string& path, const Trajectory& t) {
  std::ofstream f(path);
  if (!f) fail(ErrorKind::Io, "cannot write " + path);
  write_csv(f, t);
}

Trajectory read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorKind::Io, "empty trajectory file");
  std::vector<std::string> head;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) head.push_back(cell);
  }
  Trajectory t;
  if (head.size() == 9 && head[2] == "uy") {
    t.dim = 2;
  } else if (head.size() == 10 && head[3] == "uz") {
    t.dim = 3;
  } else {
    fail(ErrorKind::Io, "unrecognized trajectory header: " + line);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    try {
      while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    } catch (const std::exception&) {
      fail(ErrorKind::Io, "malformed trajectory row: " + line);
    }
    if (v.size() != head.size()) fail(ErrorKind::Io, "malformed trajectory row: " + line);
    TrajectoryStep s;
    s.n = static_cast<int>(v[0]);
    s.direction = Vec(t.dim);
    for (int k = 0; k < t.dim; ++k) s.direction[k] = v[1 + k];
    const std::size_t o = 1 + t.dim;
    s.mean_radius = v[o];
    s.volume = v[o + 1];
    s.circumradius = v[o + 2];
    s.hausdorff = v[o + 3];
    s.nikodym = v[o + 4];
    s.inertia = v[o + 5];
    t.steps.push_back(std::move(s));
  }
  return t;
}

Trajectory read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::Io, "cannot read " + path);
  return read_csv(f);
}

}  // namespace symlab
