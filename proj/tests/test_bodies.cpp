#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "symlab/body.hpp"
#include "symlab/directions.hpp"
#include "symlab/error.hpp"
#include "symlab/metrics.hpp"
#include "symlab/sphere_grid.hpp"

using namespace symlab;

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

}  // namespace

TEST_CASE("make_polygon prunes interior and collinear points") {
  const std::vector<Vec2> pts = {{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}};
  const ConvexPolygon p = make_polygon(pts);
  REQUIRE(p.size() == 3);
  CHECK(p[0] == Vec2(0, 0));
  CHECK(p[1] == Vec2(1, 0));
  CHECK(p[2] == Vec2(0, 1));
  CHECK(p.is_strictly_convex());

  const std::vector<Vec2> line = {{0, 0}, {1, 0}, {2, 0}};
  const ConvexPolygon s = make_polygon(line);
  CHECK(s.degenerate());
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Vec2(0, 0));
  CHECK(s[1] == Vec2(2, 0));

  CHECK(kind_of([] { make_polygon(std::vector<Vec2>{}); }) == ErrorKind::EmptyInput);
}

TEST_CASE("make_polygon matches gift wrapping on random clouds") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = oracle::random_points_in_disk(rng, 100);
    const ConvexPolygon p = make_polygon(pts);
    const auto ref = oracle::gift_wrap(pts);
    REQUIRE(p.size() == ref.size());
    // Both start at the lexicographic minimum and run counterclockwise.
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(p[i] == ref[i]);
  }
}

TEST_CASE("equal bodies compare equal regardless of input order") {
  std::vector<Vec2> a = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  std::vector<Vec2> b = {{-1, -1}, {1, 1}, {1, -1}, {-1, 1}};
  CHECK(make_polygon(a) == make_polygon(b));
}

TEST_CASE("make_hull in 3d") {
  Mat pts(3, 9);
  int c = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) pts.col(c++) = Vec3(x, y, z);
  pts.col(8) = Vec3(0.5, 0.5, 0.5);
  const VertexHull h = make_hull(pts);
  CHECK(h.size() == 8);
  CHECK(h.faces().size() == 12);
  CHECK(kind_of([] { make_hull(Mat(3, 0)); }) == ErrorKind::EmptyInput);
}

TEST_CASE("make_hull in 2d keeps square corners") {
  Mat pts(2, 4);
  pts << 0, 1, 1, 0, 0, 0, 1, 1;
  CHECK(make_hull(pts).size() == 4);
}

TEST_CASE("3d hull vertex set matches brute-force oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Vec3> pts;
    while (pts.size() < 200) {
      const Vec3 x(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
      if (x.squaredNorm() <= 1) pts.push_back(x);
    }
    Mat m(3, 200);
    for (int i = 0; i < 200; ++i) m.col(i) = pts[i];
    const VertexHull h = make_hull(m);
    const auto ref = oracle::brute_vertices_3d(pts);
    std::size_t count = 0;
    for (bool b : ref) count += b;
    CHECK(h.size() == count);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Vec3 v = h.vertex(i);
      const auto it = std::find(pts.begin(), pts.end(), v);
      REQUIRE(it != pts.end());
      CHECK(ref[static_cast<std::size_t>(it - pts.begin())]);
    }
  }
}

TEST_CASE("hull idempotence") {
  Rng rng(9);
  Mat m(3, 60);
  for (int i = 0; i < 60; ++i) m.col(i) = sample_haar(rng, 3).coords() * rng.uniform(0.2, 1.0);
  const VertexHull h = make_hull(m);
  const VertexHull h2 = make_hull(h.vertices());
  CHECK(h2.size() == h.size());
  CHECK((h2.vertices() - h.vertices()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hull pruning for d > 3") {
  // Cross-polytope corners plus interior points in R^4.
  Mat m = Mat::Zero(4, 12);
  for (int i = 0; i < 4; ++i) {
    m(i, 2 * i) = 1;
    m(i, 2 * i + 1) = -1;
  }
  m.col(8) = Vec::Constant(4, 0.1);
  m.col(9) = Vec::Constant(4, -0.2);
  m(0, 10) = 0.5;
  m(1, 11) = -0.3;
  CHECK(make_hull(m).size() == 8);
}

TEST_CASE("support_eval") {
  const Body sq = axis_box(-1, -1, 1, 1);
  CHECK(support_eval(sq, Direction::axis(2, 0)) == doctest::Approx(1.0));
  const Direction diag = Direction::normalized(Vec2(1, 1));
  CHECK(support_eval(sq, diag) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
  CHECK(kind_of([&] { support_eval(sq, Direction::axis(3, 0)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("support_eval matches dense sampling on random 12-gons") {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    ConvexPolygon p;
    do p = make_polygon(oracle::random_points_in_disk(rng, 40)); while (p.size() < 12);
    std::vector<Vec2> twelve(p.vertices().begin(), p.vertices().begin() + 12);
    const ConvexPolygon q = make_polygon(twelve);
    REQUIRE(q.size() == 12);
    for (int k = 0; k < 64; ++k) {
      const Direction t = sample_haar(rng, 2);
      CHECK(std::abs(support_eval(Body{q}, t) - oracle::dense_support(q.vertices(), t.as2())) <= 1e-9);
    }
  }
}

TEST_CASE("reflect_body") {
  const std::vector<Vec2> tri = {{0, 0}, {1, 0}, {0, 1}};
  const Body t = make_polygon(tri);
  const Body r = reflect_body(t, Direction::axis(2, 1));
  const std::vector<Vec2> expect = {{0, 0}, {1, 0}, {0, -1}};
  CHECK(std::get<ConvexPolygon>(r) == make_polygon(expect));
  CHECK(std::get<ConvexPolygon>(reflect_body(r, Direction::axis(2, 1))) == std::get<ConvexPolygon>(t));
  CHECK(kind_of([&] { reflect_body(t, Direction::axis(3, 1)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("reflection is an involution up to rounding and matches f o pi_u") {
  Rng rng(3);
  const SphereGrid g = sphere_grid(3, 16);
  for (int trial = 0; trial < 10; ++trial) {
    Mat m(3, 30);
    for (int i = 0; i < 30; ++i) m.col(i) = sample_haar(rng, 3).coords() * rng.uniform(0.3, 1.0);
    const Body h = make_hull(m);
    const Direction u = sample_haar(rng, 3);
    const Body r = reflect_body(h, u);
    const Body rr = reflect_body(r, u);
    const Mat a = vertex_matrix(h), b = vertex_matrix(rr);
    REQUIRE(a.cols() == b.cols());
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
      double best = 1e9;
      for (Eigen::Index j = 0; j < b.cols(); ++j) best = std::min(best, (a.col(i) - b.col(j)).norm());
      CHECK(best <= 1e-15);
    }
    for (std::size_t j = 0; j < g.size(); ++j) {
      const Vec th = g.node(j);
      CHECK(std::abs(support_eval(r, th) - support_eval(h, u.reflect(th))) <= 1e-12);
    }
  }
}

TEST_CASE("support scales positively") {
  Rng rng(4);
  const Body p = make_polygon(oracle::random_points_in_disk(rng, 15));
  for (double c : {0.5, 2.0, 3.7}) {
    const Body q = scale_body(p, c);
    for (int k = 0; k < 20; ++k) {
      const Direction t = sample_haar(rng, 2);
      CHECK(support_eval(q, t) == doctest::Approx(c * support_eval(p, t)).epsilon(1e-14));
    }
  }
}

TEST_CASE("sphere_grid") {
  const SphereGrid g2 = sphere_grid(2, 360);
  CHECK(g2.size() == 360);
  for (double w : g2.weights()) CHECK(w == doctest::Approx(1.0 / 360));

  const SphereGrid g3 = sphere_grid(3, 32);
  std::vector<double> one(g3.size(), 1.0), x1sq(g3.size());
  for (std::size_t j = 0; j < g3.size(); ++j) x1sq[j] = g3.node(j)[0] * g3.node(j)[0];
  CHECK(std::abs(g3.integrate(one) - 1.0) <= 1e-14);
  CHECK(std::abs(g3.integrate(x1sq) - 1.0 / 3) <= 1e-12);
  CHECK(g3.k_exact() >= 16);
  CHECK(g2.k_exact() >= 180);

  CHECK(kind_of([] { sphere_grid(4, 32); }) == ErrorKind::UnsupportedDimension);
  CHECK(kind_of([] { sphere_grid(2, 4); }) == ErrorKind::GridTooCoarse);
}

TEST_CASE("planar grid integrates trigonometric monomials exactly") {
  const int n = 64;
  const SphereGrid g = sphere_grid(2, n);
  for (int k = 1; k < n; ++k) {
    std::vector<double> c(g.size()), s(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double t = std::atan2(g.node(j)[1], g.node(j)[0]);
      c[j] = std::cos(k * t);
      s[j] = std::sin(k * t);
    }
    CHECK(std::abs(g.integrate(c)) <= 1e-13);
    CHECK(std::abs(g.integrate(s)) <= 1e-13);
  }
}

TEST_CASE("3d grid exactness on monomials up to its degree") {
  const SphereGrid g = sphere_grid(3, 8);
  // E[x^a y^b z^c] on the sphere: (a-1)!!(b-1)!!(c-1)!! / (a+b+c+1)!! for even exponents.
  auto dfact = [](int n) {
    double r = 1;
    for (int i = n; i > 1; i -= 2) r *= i;
    return r;
  };
  for (int a = 0; a <= 6; a += 2)
    for (int b = 0; a + b <= 8; b += 2)
      for (int c = 0; a + b + c <= 10; c += 2) {
        if (a + b + c > g.k_exact()) continue;
        std::vector<double> v(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) {
          const Vec x = g.node(j);
          v[j] = std::pow(x[0], a) * std::pow(x[1], b) * std::pow(x[2], c);
        }
        const double exact = dfact(a - 1) * dfact(b - 1) * dfact(c - 1) / dfact(a + b + c + 1);
        CHECK(std::abs(g.integrate(v) - exact) <= 1e-13);
      }
}

TEST_CASE("direction validation") {
  CHECK(kind_of([] { Direction::from_unit(Vec2(1, 1)); }) == ErrorKind::NotUnit);
  CHECK(kind_of([] { Direction::from_unit(Vec::Ones(1)); }) == ErrorKind::UnsupportedDimension);
  CHECK_NOTHROW(Direction::from_unit(Vec2(0.6, 0.8)));
}

TEST_CASE("body JSON round trip") {
  Rng rng(8);
  const Body p = make_polygon(oracle::random_points_in_disk(rng, 20));
  const Body q = body_from_json(nlohmann::json::parse(body_to_json(p).dump()));
  CHECK(std::get<ConvexPolygon>(q) == std::get<ConvexPolygon>(p));

  const Body c = unit_cube_hull(0, 1);
  const Body c2 = body_from_json(body_to_json(c));
  CHECK(vertex_count(c2) == 8);
  CHECK(body_dim(c2) == 3);
}

TEST_CASE("degenerate bodies carry a flag") {
  const std::vector<Vec2> seg = {{0, 0}, {1, 1}};
  CHECK(is_degenerate(Body{make_polygon(seg)}));
  Mat flat(3, 4);
  flat << 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0;
  const VertexHull h = make_hull(flat);
  CHECK(h.degenerate());
  CHECK(h.size() == 4);
}

TEST_CASE("3d hull of heavily coplanar input") {
  // Grid points on every face of the cube [-1, 1]^3.
  std::vector<Vec> pts;
  for (int axis = 0; axis < 3; ++axis)
    for (double side : {-1.0, 1.0})
      for (int i = 0; i <= 12; ++i)
        for (int j = 0; j <= 12; ++j) {
          Vec x(3);
          x[axis] = side;
          x[(axis + 1) % 3] = -1 + i / 6.0;
          x[(axis + 2) % 3] = -1 + j / 6.0;
          pts.push_back(x);
        }
  const VertexHull cube = make_hull(3, pts);
  CHECK(cube.size() == 8);
  CHECK(volume(Body{cube}) == doctest::Approx(8.0).epsilon(1e-12));

  // Dense samples of a random tetrahedron's faces, plus its vertices.
  Rng rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Vec3> v;
    for (int i = 0; i < 4; ++i) v.push_back(sample_haar(rng, 3).as3());
    std::vector<Vec> cloud(v.begin(), v.end());
    for (int f = 0; f < 4; ++f)
      for (int k = 0; k < 400; ++k) {
        double a = rng.uniform(), b = rng.uniform();
        if (a + b > 1) a = 1 - a, b = 1 - b;
        const Vec3& p = v[f], &q = v[(f + 1) % 4], &r = v[(f + 2) % 4];
        cloud.push_back(p + a * (q - p) + b * (r - p));
      }
    const VertexHull t = make_hull(3, cloud);
    CHECK(t.size() == 4);
    Mat m(3, 4);
    for (int i = 0; i < 4; ++i) m.col(i) = v[i];
    CHECK(volume(Body{t}) == doctest::Approx(volume(Body{make_hull(m)})).epsilon(1e-10));
  }
}
