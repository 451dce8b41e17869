#include "symlab/directions.hpp"

#include <cmath>
#include <numbers>

#include "symlab/error.hpp"
#include "symlab/sphere_grid.hpp"

namespace symlab {

Direction sample_haar(Rng& rng, int dim) {
  Vec g(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) g[i] = rng.normal();
    if (g.squaredNorm() > 1e-200) return Direction::normalized(g);
  }
}

Direction sample_orthonormal_column(Rng& rng, int dim) {
  Mat g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(g);
  const Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  Vec col = q.col(0);
  if (r(0, 0) < 0) col = -col;
  return Direction::normalized(col);
}

double cap_mass(int dim, double height) {
  const double h = std::clamp(height, -1.0, 1.0);
  if (dim == 2) return std::acos(h) / std::numbers::pi;
  if (dim == 3) return (1.0 - h) / 2.0;
  fail(ErrorKind::UnsupportedDimension, "cap_mass: d in {2, 3}");
}

DensityModel uniform_density(int dim) {
  return {dim, [](const Vec&) { return 1.0; }, 1.0, "uniform"};
}

DensityModel upper_lower_density(int dim, double a) {
  if (a < 0 || a > 2) fail(ErrorKind::InvalidConfig, "upper_lower density needs 0 <= a <= 2");
  return {dim, [a](const Vec& x) { return x[x.size() - 1] > 0 ? a : 2.0 - a; }, std::max(a, 2.0 - a),
          "upper_lower"};
}

DensityModel cap_density(int dim, double alpha, double height) {
  const double m = cap_mass(dim, height);
  if (m <= 0 || m >= 1) fail(ErrorKind::InvalidConfig, "cap must have mass in (0, 1)");
  if (alpha * m > 1) fail(ErrorKind::InvalidConfig, "cap density: alpha * sigma(cap) exceeds 1");
  const double rest = (1.0 - alpha * m) / (1.0 - m);
  return {dim, [=](const Vec& x) { return x[x.size() - 1] >= height ? alpha : rest; }, std::max(alpha, rest),
          "cap"};
}

DensityModel cap_void_density(int dim, double height) {
  const double m = cap_mass(dim, height);
  if (m <= 0 || m >= 1) fail(ErrorKind::InvalidConfig, "cap must have mass in (0, 1)");
  const double rest = 1.0 / (1.0 - m);
  return {dim, [=](const Vec& x) { return x[x.size() - 1] >= height ? 0.0 : rest; }, rest, "cap_void"};
}

void validate_density(const DensityModel& model) {
  const auto check = [&](const Vec& x) {
    const double f = model.density(x);
    if (!(f >= 0) || f > model.alpha * (1 + 1e-12)) {
      fail(ErrorKind::DensityExceedsBound, model.name + ": density " + std::to_string(f) + " exceeds alpha " +
                                               std::to_string(model.alpha));
    }
  };
  if (model.dim <= 3) {
    const SphereGrid g = SphereGrid::make(model.dim, model.dim == 2 ? 3600 : 64);
    for (std::size_t j = 0; j < g.size(); ++j) check(g.node(j));
  } else {
    Rng rng(0x5eed);
    for (int s = 0; s < 20000; ++s) check(sample_haar(rng, model.dim).coords());
  }
}

Direction sample_bounded_density(Rng& rng, const DensityModel& model, RejectionStats* stats) {
  RejectionStats local;
  RejectionStats& st = stats ? *stats : local;
  long tries = 0;
  for (;;) {
    const Direction x = sample_haar(rng, model.dim);
    ++st.proposals;
    ++tries;
    const double ratio = model.density(x.coords()) / model.alpha;
    st.max_ratio = std::max(st.max_ratio, ratio);
    if (ratio > 1.0 + 1e-12) {
      fail(ErrorKind::DensityExceedsBound, model.name + ": density above declared alpha");
    }
    if (rng.uniform() < ratio) {
      ++st.accepted;
      return x;
    }
    if (tries >= 1000000 || (st.proposals >= 1000000 && st.acceptance_rate() < 1e-4)) {
      fail(ErrorKind::RejectionStall, model.name + ": acceptance rate below 1e-4");
    }
  }
}

MarkovKernel haar_kernel(int dim) {
  MarkovKernel k;
  k.dim = dim;
  k.step = [dim](const Direction&, Rng& rng) { return sample_haar(rng, dim); };
  k.transition_density = [](const Direction&, const Vec&) { return 1.0; };
  k.alpha = 1.0;
  k.name = "haar";
  return k;
}

MarkovKernel geodesic_step_kernel(int dim, double haar_weight, double tilt) {
  if (haar_weight < 0 || haar_weight > 1) fail(ErrorKind::InvalidConfig, "haar_weight must be in [0, 1]");
  if (tilt < 0 || tilt > 1) fail(ErrorKind::InvalidConfig, "tilt must be in [0, 1]");
  MarkovKernel k;
  k.dim = dim;
  k.step = [dim, haar_weight, tilt](const Direction& v, Rng& rng) {
    if (rng.uniform() < haar_weight) return sample_haar(rng, dim);
    // Law of the endpoint: density 1 + tilt <x, v>; it is symmetric about
    // the axis v, so it is a geodesic move from v in a uniform tangent
    // direction with a tilted distance law.
    for (;;) {
      const Direction x = sample_haar(rng, dim);
      if (rng.uniform() * (1.0 + tilt) < 1.0 + tilt * x.coords().dot(v.coords())) return x;
    }
  };
  k.transition_density = [haar_weight, tilt](const Direction& v, const Vec& x) {
    return haar_weight + (1.0 - haar_weight) * (1.0 + tilt * x.dot(v.coords()));
  };
  k.alpha = 1.0 + (1.0 - haar_weight) * tilt;
  k.name = "geodesic_step";
  return k;
}

std::vector<Direction> markov_sequence(Rng& rng, const MarkovKernel& kernel, const Direction& start, int n) {
  if (start.dim() != kernel.dim) fail(ErrorKind::DimensionMismatch, "markov_sequence: start dimension");
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(std::max(0, n)));
  Direction cur = start;
  for (int i = 0; i < n; ++i) {
    cur = kernel.step(cur, rng);
    out.push_back(cur);
  }
  return out;
}

std::vector<Direction> golden_angle_sequence(int n) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(std::max(0, n)));
  for (int k = 1; k <= n; ++k) {
    const double frac = std::fmod(k * phi, 1.0);
    out.push_back(Direction::from_angle(2.0 * std::numbers::pi * frac));
  }
  return out;
}

std::vector<Direction> finite_cycle(const std::vector<Direction>& cycle, int n) {
  if (cycle.empty()) fail(ErrorKind::EmptyInput, "finite_cycle: empty list");
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(std::max(0, n)));
  for (int k = 0; k < n; ++k) out.push_back(cycle[static_cast<std::size_t>(k) % cycle.size()]);
  return out;
}

std::vector<Direction> generate(const DirectionSource& src, int dim, int n, std::uint64_t stream) {
  Rng rng(src.seed, stream);
  return std::visit([&](const auto& s) -> std::vector<Direction> {
    using T = std::decay_t<decltype(s)>;
    std::vector<Direction> out;
    if constexpr (std::is_same_v<T, HaarSource>) {
      for (int i = 0; i < n; ++i) out.push_back(sample_haar(rng, dim));
    } else if constexpr (std::is_same_v<T, DensitySource>) {
      if (s.model.dim != dim) fail(ErrorKind::DimensionMismatch, "density model dimension");
      RejectionStats st;
      for (int i = 0; i < n; ++i) out.push_back(sample_bounded_density(rng, s.model, &st));
    } else if constexpr (std::is_same_v<T, MarkovSource>) {
      if (s.kernel.dim != dim) fail(ErrorKind::DimensionMismatch, "markov kernel dimension");
      out = markov_sequence(rng, s.kernel, sample_haar(rng, dim), n);
    } else if constexpr (std::is_same_v<T, GoldenAngleSource>) {
      if (dim != 2) fail(ErrorKind::UnsupportedDimension, "golden_angle needs d = 2");
      out = golden_angle_sequence(n);
    } else {
      for (const auto& u : s.cycle) {
        if (u.dim() != dim) fail(ErrorKind::DimensionMismatch, "cycle direction dimension");
      }
      out = finite_cycle(s.cycle, n);
    }
    return out;
  }, src.kind);
}

DirectionSource source_from_json(const nlohmann::json& j, int dim) {
  DirectionSource src;
  if (!j.is_object() || !j.contains("source")) fail(ErrorKind::InvalidConfig, "source needs a \"source\" tag");
  src.seed = j.value("seed", std::uint64_t{0});
  const std::string tag = j.at("source").get<std::string>();
  if (tag == "haar") {
    src.kind = HaarSource{};
  } else if (tag == "bounded_density") {
    const std::string spec = j.value("spec", std::string("uniform"));
    DensityModel m;
    if (spec == "uniform") m = uniform_density(dim);
    else if (spec == "upper_lower") m = upper_lower_density(dim, j.value("alpha", 1.2));
    else if (spec == "cap") m = cap_density(dim, j.value("alpha", 1.2), j.value("height", 0.5));
    else if (spec == "cap_void") m = cap_void_density(dim, j.value("height", 0.9));
    else fail(ErrorKind::InvalidConfig, "unknown density spec " + spec);
    validate_density(m);
    src.kind = DensitySource{m};
  } else if (tag == "markov") {
    const std::string kernel = j.value("kernel", std::string("geodesic_step"));
    if (kernel == "haar") src.kind = MarkovSource{haar_kernel(dim)};
    else if (kernel == "geodesic_step")
      src.kind = MarkovSource{geodesic_step_kernel(dim, j.value("haar_weight", 0.5), j.value("tilt", 0.8))};
    else fail(ErrorKind::InvalidConfig, "unknown kernel " + kernel);
  } else if (tag == "golden_angle") {
    if (dim != 2) fail(ErrorKind::UnsupportedDimension, "golden_angle needs d = 2");
    src.kind = GoldenAngleSource{};
  } else if (tag == "cycle") {
    CycleSource c;
    for (const auto& row : j.at("directions")) {
      Vec v(static_cast<Eigen::Index>(row.size()));
      for (std::size_t i = 0; i < row.size(); ++i) v[static_cast<Eigen::Index>(i)] = row[i].get<double>();
      if (v.size() != dim) fail(ErrorKind::DimensionMismatch, "cycle direction dimension");
      c.cycle.push_back(Direction::normalized(v));
    }
    if (c.cycle.empty()) fail(ErrorKind::InvalidConfig, "cycle needs at least one direction");
    src.kind = c;
  } else {
    fail(ErrorKind::InvalidConfig, "unknown direction source " + tag);
  }
  return src;
}

std::string source_name(const DirectionSource& src) {
  switch (src.kind.index()) {
    case 0: return "haar";
    case 1: return "bounded_density:" + std::get<DensitySource>(src.kind).model.name;
    case 2: return "markov:" + std::get<MarkovSource>(src.kind).kernel.name;
    case 3: return "golden_angle";
    default: return "cycle";
  }
}

}  // namespace symlab
