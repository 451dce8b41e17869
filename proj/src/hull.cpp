#include "symlab/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "symlab/error.hpp"

namespace symlab {

namespace {

constexpr double kCoordTol = 1e-12;

struct Builder3 {
  std::vector<Vec3> pts;
  double eps;

  struct F {
    std::array<int, 3> idx;
    Vec3 n;
    double off;
    bool alive;
  };
  std::vector<F> faces;

  F make_face(int a, int b, int c, const Vec3& inside) const {
    Vec3 n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    std::array<int, 3> idx{a, b, c};
    if (n.dot(inside - pts[a]) > 0) {
      n = -n;
      std::swap(idx[1], idx[2]);
    }
    const double len = n.norm();
    if (len > 0) n /= len;
    return {idx, n, n.dot(pts[a]), true};
  }

  static long long key(int a, int b) { return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b); }
  // Directed edge -> face holding it, for the neighbour walk.
  std::unordered_map<long long, int> owner;
  Vec3 interior;

  void push_face(const F& f) {
    const int id = static_cast<int>(faces.size());
    faces.push_back(f);
    for (int e = 0; e < 3; ++e) owner[key(f.idx[e], f.idx[(e + 1) % 3])] = id;
  }

  void add_point(int p) {
    int seed = -1;
    double best = eps;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      if (!faces[f].alive) continue;
      const double d = faces[f].n.dot(pts[p]) - faces[f].off;
      if (d > best) { best = d; seed = f; }
    }
    if (seed < 0) return;
    // Grow the visible region from the farthest face so it stays connected.
    std::vector<int> visible{seed};
    std::vector<char> mark(faces.size(), 0);
    mark[static_cast<std::size_t>(seed)] = 1;
    for (std::size_t k = 0; k < visible.size(); ++k) {
      const auto& i = faces[visible[k]].idx;
      for (int e = 0; e < 3; ++e) {
        auto it = owner.find(key(i[(e + 1) % 3], i[e]));
        if (it == owner.end()) continue;
        const int g = it->second;
        if (mark[static_cast<std::size_t>(g)] || !faces[g].alive) continue;
        if (faces[g].n.dot(pts[p]) - faces[g].off > eps) {
          mark[static_cast<std::size_t>(g)] = 1;
          visible.push_back(g);
        }
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (int f : visible) {
      const auto& i = faces[f].idx;
      for (int e = 0; e < 3; ++e) {
        const int a = i[e], b = i[(e + 1) % 3];
        auto it = owner.find(key(b, a));
        if (it == owner.end() || !mark[static_cast<std::size_t>(it->second)]) horizon.emplace_back(a, b);
      }
    }
    for (int f : visible) {
      faces[f].alive = false;
      const auto& i = faces[f].idx;
      for (int e = 0; e < 3; ++e) {
        auto it = owner.find(key(i[e], i[(e + 1) % 3]));
        if (it != owner.end() && it->second == f) owner.erase(it);
      }
    }
    for (const auto& [a, b] : horizon) {
      Vec3 n = (pts[b] - pts[a]).cross(pts[p] - pts[a]);
      const double len = n.norm();
      if (len > 0) {
        n /= len;
      } else {
        const Vec3 c = (pts[a] + pts[b] + pts[p]) / 3.0 - interior;
        n = c.norm() > 0 ? Vec3(c.normalized()) : Vec3(faces[visible.front()].n);
      }
      push_face({{a, b, p}, n, n.dot(pts[a]), true});
    }
  }
};

Vec3 col3(const Mat& m, Eigen::Index j) { return {m(0, j), m(1, j), m(2, j)}; }

std::vector<Vec3> dedupe3(const Mat& points) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(points.cols()));
  for (Eigen::Index j = 0; j < points.cols(); ++j) pts.push_back(col3(points, j));
  std::sort(pts.begin(), pts.end(), [](const Vec3& a, const Vec3& b) {
    return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
  });
  std::vector<Vec3> out;
  for (const auto& p : pts) {
    if (!out.empty() && (out.back() - p).norm() <= kCoordTol) continue;
    out.push_back(p);
  }
  return out;
}

Mat to_mat(const std::vector<Vec3>& pts) {
  Mat m(3, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = pts[j];
  return m;
}

}  // namespace

double VertexHull::support(const Vec& theta) const {
  if (theta.size() != v_.rows()) fail(ErrorKind::DimensionMismatch, "support: dimension mismatch");
  return (theta.transpose() * v_).maxCoeff();
}

VertexHull VertexHull::reflected(const Direction& u) const {
  if (u.dim() != dim()) fail(ErrorKind::DimensionMismatch, "reflect: dimension mismatch");
  VertexHull out = *this;
  const Vec& uu = u.coords();
  out.v_ = v_ - 2.0 * uu * (uu.transpose() * v_);
  if (dim() == 2) {
    return hull_from_polygon(out.as_polygon());
  }
  for (auto& f : out.faces_) {
    std::swap(f.idx[1], f.idx[2]);
    f.normal = f.normal - 2.0 * f.normal.dot(u.as3()) * u.as3();
  }
  return out;
}

VertexHull VertexHull::scaled(double c) const {
  if (!(c > 0)) return make_hull(v_ * c);
  VertexHull out = *this;
  out.v_ *= c;
  for (auto& f : out.faces_) f.offset *= c;
  return out;
}

bool VertexHull::contains(const Vec& p, double tol) const {
  if (p.size() != v_.rows()) fail(ErrorKind::DimensionMismatch, "contains: dimension mismatch");
  if (dim() == 2) return as_polygon().contains({p[0], p[1]}, tol);
  if (dim() == 3 && !degenerate_) {
    for (const auto& f : faces_) {
      if (f.normal.dot(Vec3(p[0], p[1], p[2])) > f.offset + tol) return false;
    }
    return true;
  }
  return distance_to_hull(p, v_) <= tol;
}

std::pair<double, double> VertexHull::chord(const Vec3& x, const Vec3& dir) const {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& f : faces_) {
    const double a = f.normal.dot(dir);
    const double b = f.offset - f.normal.dot(x);
    if (std::abs(a) < 1e-15) {
      if (b < 0) return {1.0, 0.0};
      continue;
    }
    if (a > 0) hi = std::min(hi, b / a);
    else lo = std::max(lo, b / a);
  }
  return {lo, hi};
}

ConvexPolygon VertexHull::as_polygon() const {
  if (dim() != 2) fail(ErrorKind::DimensionMismatch, "as_polygon needs d = 2");
  std::vector<Vec2> pts;
  for (Eigen::Index j = 0; j < v_.cols(); ++j) pts.emplace_back(v_(0, j), v_(1, j));
  return ConvexPolygon::hull_of(pts);
}

namespace {

VertexHull hull3(const std::vector<Vec3>& pts, bool prune_pass);

// Lower-rank input: returns the extreme points of the flat hull.
Mat flat_extremes(const std::vector<Vec3>& pts, const Vec3& origin, const Vec3& e1, const Vec3* e2) {
  if (e2 == nullptr) {
    auto [mn, mx] = std::minmax_element(pts.begin(), pts.end(), [&](const Vec3& a, const Vec3& b) {
      return (a - origin).dot(e1) < (b - origin).dot(e1);
    });
    return to_mat({*mn, *mx});
  }
  std::vector<Vec2> q;
  for (const auto& p : pts) q.emplace_back((p - origin).dot(e1), (p - origin).dot(*e2));
  const ConvexPolygon poly = ConvexPolygon::hull_of(q);
  std::vector<Vec3> out;
  for (const auto& v : poly.vertices()) out.push_back(origin + v.x() * e1 + v.y() * (*e2));
  return to_mat(out);
}

VertexHull hull3(const std::vector<Vec3>& pts, bool prune_pass) {
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());
  double scale = 0;
  for (const auto& p : pts) scale = std::max(scale, (p - centroid).norm());
  const double eps = kCoordTol * std::max(1.0, scale);

  Builder3 b{pts, eps, {}, {}, Vec3::Zero()};
  const int n = static_cast<int>(pts.size());
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (pts[i].x() < pts[i0].x()) i0 = i;
  }
  int i1 = i0;
  for (int i = 0; i < n; ++i) {
    if ((pts[i] - pts[i0]).norm() > (pts[i1] - pts[i0]).norm()) i1 = i;
  }
  if ((pts[i1] - pts[i0]).norm() <= eps) return VertexHull::from_parts(to_mat({pts[i0]}), {}, true);
  const Vec3 e1 = (pts[i1] - pts[i0]).normalized();
  int i2 = i0;
  double best = 0;
  for (int i = 0; i < n; ++i) {
    const Vec3 d = pts[i] - pts[i0];
    const double dist = (d - d.dot(e1) * e1).norm();
    if (dist > best) { best = dist; i2 = i; }
  }
  if (best <= eps) return VertexHull::from_parts(flat_extremes(pts, pts[i0], e1, nullptr), {}, true);
  const Vec3 nrm = e1.cross(pts[i2] - pts[i0]).normalized();
  int i3 = i0;
  best = 0;
  for (int i = 0; i < n; ++i) {
    const double dist = std::abs((pts[i] - pts[i0]).dot(nrm));
    if (dist > best) { best = dist; i3 = i; }
  }
  if (best <= eps) {
    const Vec3 e2 = nrm.cross(e1);
    return VertexHull::from_parts(flat_extremes(pts, pts[i0], e1, &e2), {}, true);
  }

  const Vec3 inside = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
  b.interior = inside;
  b.push_face(b.make_face(i0, i1, i2, inside));
  b.push_face(b.make_face(i0, i1, i3, inside));
  b.push_face(b.make_face(i0, i2, i3, inside));
  b.push_face(b.make_face(i1, i2, i3, inside));

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int c) {
    return (pts[a] - inside).squaredNorm() > (pts[c] - inside).squaredNorm();
  });
  for (int p : order) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    b.add_point(p);
  }

  // Re-index the used vertices.
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  std::vector<Vec3> used;
  std::vector<VertexHull::Face> faces;
  for (const auto& f : b.faces) {
    if (!f.alive) continue;
    VertexHull::Face g{{}, f.n, f.off};
    for (int e = 0; e < 3; ++e) {
      int& r = remap[static_cast<std::size_t>(f.idx[e])];
      if (r < 0) {
        r = static_cast<int>(used.size());
        used.push_back(pts[static_cast<std::size_t>(f.idx[e])]);
      }
      g.idx[e] = r;
    }
    faces.push_back(g);
  }

  if (prune_pass) {
    // Drop boundary points that are not extreme: a true vertex is the strict
    // maximizer, among its neighbours, of its angle-weighted normal sum.
    std::vector<Vec3> nsum(used.size(), Vec3::Zero());
    std::vector<std::vector<int>> nbr(used.size());
    for (const auto& f : faces) {
      for (int e = 0; e < 3; ++e) {
        const int a = f.idx[e], c1 = f.idx[(e + 1) % 3], c2 = f.idx[(e + 2) % 3];
        const Vec3 u1 = (used[c1] - used[a]).normalized();
        const Vec3 u2 = (used[c2] - used[a]).normalized();
        const double ang = std::acos(std::clamp(u1.dot(u2), -1.0, 1.0));
        nsum[a] += ang * f.normal;
        nbr[a].push_back(c1);
        nbr[a].push_back(c2);
      }
    }
    std::vector<Vec3> extreme;
    for (std::size_t a = 0; a < used.size(); ++a) {
      const Vec3 th = nsum[a].normalized();
      bool strict = true;
      for (int w : nbr[a]) {
        if ((used[a] - used[w]).dot(th) <= eps) { strict = false; break; }
      }
      if (strict) extreme.push_back(used[a]);
    }
    if (extreme.size() != used.size()) return hull3(extreme, false);
  }

  Mat v = to_mat(used);
  return VertexHull::from_parts(std::move(v), std::move(faces), false);
}

}  // namespace

VertexHull VertexHull::from_parts(Mat vertices, std::vector<Face> faces, bool degenerate) {
  VertexHull h;
  h.v_ = std::move(vertices);
  h.faces_ = std::move(faces);
  h.degenerate_ = degenerate;
  return h;
}

VertexHull make_hull(const Mat& points) {
  if (points.cols() == 0 || points.rows() == 0) fail(ErrorKind::EmptyInput, "make_hull: no points");
  const int d = static_cast<int>(points.rows());
  if (d < 2) fail(ErrorKind::UnsupportedDimension, "make_hull: d >= 2 required");
  if (d == 2) {
    std::vector<Vec2> q;
    for (Eigen::Index j = 0; j < points.cols(); ++j) q.emplace_back(points(0, j), points(1, j));
    return hull_from_polygon(ConvexPolygon::hull_of(q));
  }
  if (d == 3) {
    const std::vector<Vec3> pts = dedupe3(points);
    if (pts.size() == 1) return VertexHull::from_parts(to_mat(pts), {}, true);
    return hull3(pts, true);
  }
  // d > 3: keep columns at positive distance from the hull of the others.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    bool dup = false;
    for (Eigen::Index k : keep) {
      if ((points.col(k) - points.col(j)).norm() <= kCoordTol) { dup = true; break; }
    }
    if (!dup) keep.push_back(j);
  }
  Mat uniq(d, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) uniq.col(static_cast<Eigen::Index>(i)) = points.col(keep[i]);
  std::vector<Eigen::Index> verts;
  for (Eigen::Index j = 0; j < uniq.cols(); ++j) {
    if (uniq.cols() == 1) { verts.push_back(j); break; }
    Mat others(d, uniq.cols() - 1);
    others << uniq.leftCols(j), uniq.rightCols(uniq.cols() - j - 1);
    if (distance_to_hull(uniq.col(j), others) > kCoordTol) verts.push_back(j);
  }
  Mat v(d, static_cast<Eigen::Index>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = uniq.col(verts[i]);
  // Rank test for degeneracy.
  bool degenerate = true;
  if (v.cols() > d) {
    Mat centered = v.colwise() - v.rowwise().mean();
    Eigen::FullPivLU<Mat> lu(centered);
    lu.setThreshold(1e-10);
    degenerate = lu.rank() < d;
  }
  return VertexHull::from_parts(std::move(v), {}, degenerate);
}

VertexHull make_hull(int dim, const std::vector<Vec>& points) {
  Mat m(dim, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != dim) fail(ErrorKind::DimensionMismatch, "make_hull: point dimension");
    m.col(static_cast<Eigen::Index>(j)) = points[j];
  }
  return make_hull(m);
}

VertexHull hull_from_polygon(const ConvexPolygon& p) {
  Mat v(2, static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = p[i];
  return VertexHull::from_parts(std::move(v), {}, p.degenerate());
}

double distance_to_hull(const Vec& p, const Mat& pts) {
  // Wolfe (1976): min-norm point of conv(q_j), q_j = pts_j - p.
  const Mat q = pts.colwise() - p;
  const Eigen::Index n = q.cols();
  if (n == 0) return std::numeric_limits<double>::infinity();
  const double scale = std::max(1.0, q.colwise().squaredNorm().maxCoeff());
  const double tol = 1e-14 * scale;

  Eigen::Index first = 0;
  q.colwise().squaredNorm().minCoeff(&first);
  std::vector<Eigen::Index> set{first};
  std::vector<double> lambda{1.0};
  Vec x = q.col(first);

  for (int major = 0; major < 1000; ++major) {
    Eigen::Index j = 0;
    (x.transpose() * q).minCoeff(&j);
    if (x.squaredNorm() - x.dot(q.col(j)) <= tol) break;
    if (std::find(set.begin(), set.end(), j) != set.end()) break;
    set.push_back(j);
    lambda.push_back(0.0);

    for (int minor = 0; minor < 1000; ++minor) {
      const auto m = static_cast<Eigen::Index>(set.size());
      Mat qs(q.rows(), m);
      for (Eigen::Index i = 0; i < m; ++i) qs.col(i) = q.col(set[static_cast<std::size_t>(i)]);
      Mat kkt = Mat::Zero(m + 1, m + 1);
      kkt.topLeftCorner(m, m) = qs.transpose() * qs;
      kkt.block(0, m, m, 1).setOnes();
      kkt.block(m, 0, 1, m).setOnes();
      Vec rhs = Vec::Zero(m + 1);
      rhs[m] = 1.0;
      const Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
      const Vec mu = sol.head(m);
      if ((mu.array() > 1e-15).all()) {
        for (Eigen::Index i = 0; i < m; ++i) lambda[static_cast<std::size_t>(i)] = mu[i];
        x = qs * mu;
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        const double li = lambda[static_cast<std::size_t>(i)];
        if (mu[i] <= 1e-15 && li - mu[i] > 0) theta = std::min(theta, li / (li - mu[i]));
      }
      std::vector<Eigen::Index> nset;
      std::vector<double> nl;
      for (Eigen::Index i = 0; i < m; ++i) {
        const double li = lambda[static_cast<std::size_t>(i)];
        const double v = li + theta * (mu[i] - li);
        if (v > 1e-15) {
          nset.push_back(set[static_cast<std::size_t>(i)]);
          nl.push_back(v);
        }
      }
      if (nset.empty()) {
        nset.push_back(set.back());
        nl.push_back(1.0);
      }
      const double total = std::accumulate(nl.begin(), nl.end(), 0.0);
      for (auto& v : nl) v /= total;
      set = std::move(nset);
      lambda = std::move(nl);
      x.setZero();
      for (std::size_t i = 0; i < set.size(); ++i) x += lambda[i] * q.col(set[i]);
    }
  }
  return x.norm();
}

VertexHull unit_cube_hull(double lo, double hi) {
  Mat v(3, 8);
  int k = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) v.col(k++) = Vec3(i ? hi : lo, j ? hi : lo, l ? hi : lo);
  return make_hull(v);
}

VertexHull icosphere(int level, double radius) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                         {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<std::array<int, 3>> f = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
                                       {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                       {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
                                       {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto k = std::minmax(a, b);
      auto it = mid.find(k);
      if (it != mid.end()) return it->second;
      v.push_back((v[static_cast<std::size_t>(a)] + v[static_cast<std::size_t>(b)]).normalized());
      const int idx = static_cast<int>(v.size()) - 1;
      mid.emplace(k, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> nf;
    for (const auto& tri : f) {
      const int a = midpoint(tri[0], tri[1]), b = midpoint(tri[1], tri[2]), c = midpoint(tri[2], tri[0]);
      nf.push_back({tri[0], a, c});
      nf.push_back({tri[1], b, a});
      nf.push_back({tri[2], c, b});
      nf.push_back({a, b, c});
    }
    f = std::move(nf);
  }
  Mat m(3, static_cast<Eigen::Index>(v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = radius * v[j];
  return make_hull(m);
}

}  // namespace symlab
