#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "symlab/directions.hpp"
#include "symlab/error.hpp"
#include "symlab/polygon.hpp"
#include "symlab/polygon_metrics.hpp"
#include "symlab/symmetrize.hpp"

using namespace symlab;
using std::numbers::pi;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidConfig;  // unreachable in the tests that use it
}

// Binomial frequency check: |k/n - p| within 3 stderr.
bool frequency_ok(long k, long n, double p) {
  return std::abs(static_cast<double>(k) / n - p) <= 3 * std::sqrt(p * (1 - p) / n);
}

double angle01(const Direction& u) {
  const double a = std::atan2(u[1], u[0]);
  return (a < 0 ? a + 2 * pi : a) / (2 * pi);
}

}  // namespace

TEST_CASE("Haar second moments in d = 3") {
  Rng rng(50);
  const int n = 100000;
  Eigen::Vector3d s = Eigen::Vector3d::Zero(), s2 = Eigen::Vector3d::Zero();
  for (int i = 0; i < n; ++i) {
    const Vec3 x = sample_haar(rng, 3).as3();
    const Vec3 q = x.cwiseProduct(x);
    s += q;
    s2 += q.cwiseProduct(q);
  }
  for (int c = 0; c < 3; ++c) {
    const double mean = s[c] / n;
    const double se = std::sqrt((s2[c] / n - mean * mean) / n);
    CHECK(std::abs(mean - 1.0 / 3.0) <= 3 * se);
  }
}

TEST_CASE("Haar angle chi-square in d = 2") {
  Rng rng(51);
  const int n = 100000, bins = 36;
  std::vector<double> count(bins, 0.0);
  for (int i = 0; i < n; ++i) count[std::min(bins - 1, static_cast<int>(angle01(sample_haar(rng, 2)) * bins))] += 1;
  double chi2 = 0;
  const double e = static_cast<double>(n) / bins;
  for (double c : count) chi2 += (c - e) * (c - e) / e;
  CHECK(chi2 < oracle::kChi2_35_999);
}

TEST_CASE("orthonormal column has the Haar law") {
  Rng rng(52);
  const int n = 20000;
  for (int dim : {2, 3, 5}) {
    std::vector<double> a, b;
    for (int i = 0; i < n; ++i) {
      a.push_back(sample_haar(rng, dim)[0]);
      b.push_back(sample_orthonormal_column(rng, dim)[0]);
    }
    CHECK(oracle::ks_two_sample(a, b) < oracle::ks_critical(a.size(), b.size(), 0.001));
  }
}

TEST_CASE("uniform density is indistinguishable from Haar") {
  Rng rng(53);
  const DensityModel m = uniform_density(2);
  std::vector<double> a;
  for (int i = 0; i < 20000; ++i) a.push_back(angle01(sample_bounded_density(rng, m)));
  CHECK(oracle::ks_one_sample(a, [](double x) { return x; }) < oracle::ks_one_critical(a.size(), 0.001));
}

TEST_CASE("bounded density frequencies") {
  Rng rng(54);
  const int n = 100000;
  const DensityModel half = upper_lower_density(2, 1.2);
  CHECK(half.alpha == doctest::Approx(1.2));
  CHECK(half.rate_guaranteed());
  RejectionStats st;
  long up = 0;
  for (int i = 0; i < n; ++i) up += sample_bounded_density(rng, half, &st)[1] > 0 ? 1 : 0;
  CHECK(frequency_ok(up, n, 0.6));
  const double acc = 1 / 1.2;
  CHECK(std::abs(st.acceptance_rate() - acc) <= 3 * std::sqrt(acc * (1 - acc) / st.proposals));

  const DensityModel cap = cap_density(3, 1.4, 0.5);
  CHECK(cap.rate_guaranteed());
  CHECK(cap_mass(3, 0.5) == doctest::Approx(0.25));
  long in = 0;
  for (int i = 0; i < n; ++i) in += sample_bounded_density(rng, cap)[2] >= 0.5 ? 1 : 0;
  CHECK(frequency_ok(in, n, 1.4 * 0.25));

  // A law that avoids an open set never lands there.
  const DensityModel hole = cap_void_density(2, 0.9);
  for (int i = 0; i < 10000; ++i) CHECK(sample_bounded_density(rng, hole)[1] < 0.9);
}

TEST_CASE("cap masses") {
  CHECK(cap_mass(2, 0.0) == doctest::Approx(0.5));
  CHECK(cap_mass(2, std::cos(pi / 4)) == doctest::Approx(0.25));
  CHECK(cap_mass(3, 0.0) == doctest::Approx(0.5));
  CHECK(cap_mass(3, -1.0) == doctest::Approx(1.0));
}

TEST_CASE("density bookkeeping errors") {
  DensityModel lie = upper_lower_density(2, 1.2);
  lie.alpha = 1.1;
  CHECK(kind_of([&] { validate_density(lie); }) == ErrorKind::DensityExceedsBound);
  Rng rng(55);
  CHECK(kind_of([&] {
          for (int i = 0; i < 1000; ++i) sample_bounded_density(rng, lie);
        }) == ErrorKind::DensityExceedsBound);

  DensityModel stall;
  stall.dim = 2;
  stall.alpha = 1e6;
  stall.density = [](const Vec&) { return 1.0; };
  stall.name = "misdeclared";
  CHECK(kind_of([&] { sample_bounded_density(rng, stall); }) == ErrorKind::RejectionStall);

  DensityModel big = cap_density(2, 2.5, 0.5);
  CHECK_FALSE(big.rate_guaranteed());
}

TEST_CASE("Markov kernels") {
  Rng rng(56);
  const Direction e1 = Direction::axis(3, 0);
  CHECK(markov_sequence(rng, haar_kernel(3), e1, 0).empty());

  // State-free kernel: steps are i.i.d. Haar.
  const auto seq = markov_sequence(rng, haar_kernel(2), Direction::axis(2, 0), 20000);
  std::vector<double> a;
  for (const auto& u : seq) a.push_back(angle01(u));
  CHECK(oracle::ks_one_sample(a, [](double x) { return x; }) < oracle::ks_one_critical(a.size(), 0.001));

  // Geodesic-step kernel in d = 3: <x, v> is uniform on [-1, 1] under sigma,
  // so the histogram of <x, v> estimates the transition density.
  const MarkovKernel k = geodesic_step_kernel(3);
  CHECK(k.alpha <= 1.5);
  const int n = 200000, bins = 20;
  std::vector<long> hist(bins, 0);
  const Direction v = Direction::normalized(Vec3(1, 2, 2));
  for (int i = 0; i < n; ++i) {
    const double t = k.step(v, rng).coords().dot(v.coords());
    ++hist[std::min(bins - 1, static_cast<int>((t + 1) / 2 * bins))];
  }
  for (int b = 0; b < bins; ++b) {
    const double p = static_cast<double>(hist[b]) / n;
    const double dens = p * bins;
    const double se = std::sqrt(p * (1 - p) / n) * bins;
    CHECK(dens <= k.alpha + 3 * se);
    const double mid = -1 + (b + 0.5) * 2.0 / bins;
    CHECK(std::abs(dens - k.transition_density(v, mid * v.coords())) <= 4 * se);
  }
  CHECK_THROWS_AS(markov_sequence(rng, k, Direction::axis(2, 0), 3), Error);
}

TEST_CASE("golden angle sequence equidistributes") {
  const auto seq = golden_angle_sequence(100000);
  for (auto [lo, hi] : {std::pair{0.0, 0.1}, {0.25, 0.5}, {0.77, 0.93}, {0.0, 0.999}}) {
    long k = 0;
    for (const auto& u : seq) {
      const double t = angle01(u);
      k += (t >= lo && t < hi) ? 1 : 0;
    }
    CHECK(std::abs(static_cast<double>(k) / seq.size() - (hi - lo)) <= 0.01);
  }
  CHECK(kind_of([] {
          source_from_json({{"source", "golden_angle"}}, 3);
        }) == ErrorKind::UnsupportedDimension);
}

TEST_CASE("finite cycles") {
  const Direction e1 = Direction::axis(2, 0), e2 = Direction::axis(2, 1);
  const auto five = finite_cycle({e1}, 5);
  REQUIRE(five.size() == 5);
  for (const auto& u : five) CHECK(u.coords() == e1.coords());

  // Alternating two orthogonal axes drives a triangle to a body symmetric
  // under both reflections.
  const auto seq = finite_cycle({e1, e2}, 200);
  ConvexPolygon p = make_polygon(std::vector<Vec2>{{0, 0}, {1, 0}, {0.3, 1.1}});
  for (const auto& u : seq) p = steiner_2d(p, u);
  for (int i = 0; i < 360; ++i) {
    const Vec2 t(std::cos(i * pi / 180), std::sin(i * pi / 180));
    CHECK(std::abs(p.support(t) - p.support(reflect2(t, e1.as2()))) <= 1e-6);
    CHECK(std::abs(p.support(t) - p.support(reflect2(t, e2.as2()))) <= 1e-6);
  }
}

TEST_CASE("samplers return unit vectors and are reproducible") {
  const std::vector<nlohmann::json> configs = {
      {{"source", "haar"}, {"seed", 9}},
      {{"source", "bounded_density"}, {"spec", "upper_lower"}, {"alpha", 1.2}, {"seed", 9}},
      {{"source", "bounded_density"}, {"spec", "cap"}, {"alpha", 1.3}, {"height", 0.3}, {"seed", 9}},
      {{"source", "bounded_density"}, {"spec", "cap_void"}, {"seed", 9}},
      {{"source", "markov"}, {"seed", 9}},
      {{"source", "markov"}, {"kernel", "haar"}, {"seed", 9}},
  };
  for (int dim : {2, 3, 4}) {
    for (const auto& j : configs) {
      if (dim > 3 && j.value("spec", std::string()).rfind("cap", 0) == 0) {
        CHECK(kind_of([&] { source_from_json(j, dim); }) == ErrorKind::UnsupportedDimension);
        continue;
      }
      const DirectionSource src = source_from_json(j, dim);
      CHECK(src.random());
      const auto a = generate(src, dim, 200, 3);
      const auto b = generate(src, dim, 200, 3);
      const auto c = generate(src, dim, 200, 4);
      REQUIRE(a.size() == 200);
      bool differs = false;
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i].coords().norm() - 1) <= 1e-12);
        CHECK(a[i].dim() == dim);
        CHECK(a[i].coords() == b[i].coords());
        differs = differs || a[i].coords() != c[i].coords();
      }
      CHECK(differs);
    }
  }
  const DirectionSource cyc = source_from_json({{"source", "cycle"}, {"directions", {{1, 0}, {0, 2}}}}, 2);
  CHECK_FALSE(cyc.random());
  const auto seq = generate(cyc, 2, 3, 0);
  CHECK(seq[1].coords() == Vec2(0, 1));
  CHECK(seq[2].coords() == Vec2(1, 0));
  CHECK(source_name(cyc) == "cycle");
}

TEST_CASE("source config errors") {
  CHECK(kind_of([] { source_from_json({{"seed", 1}}, 2); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { source_from_json({{"source", "spiral"}}, 2); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { source_from_json({{"source", "cycle"}, {"directions", nlohmann::json::array()}}, 2); }) ==
        ErrorKind::InvalidConfig);
  CHECK(kind_of([] { source_from_json({{"source", "cycle"}, {"directions", {{1, 0, 0}}}}, 2); }) ==
        ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { Direction::from_unit(Vec2(1, 1)); }) == ErrorKind::NotUnit);
  CHECK(kind_of([] { Direction::normalized(Vec2(0, 0)); }) == ErrorKind::NotUnit);
}
