#include "sherd/geometry.hpp"
#include "sherd/kdtree.hpp"
#include "sherd/random.hpp"

#include <doctest.h>

#include <cstring>

using namespace sherd;

namespace {
RigidTransform random_transform(Rng& rng) {
  RigidTransform t;
  t.R = rng.rotation();
  t.t = 100.0 * rng.gaussian3();
  return t;
}
}  // namespace

TEST_CASE("compose identity and inverse") {
  RigidTransform id;
  auto r = compose(id, id);
  CHECK((r.R - Mat3::Identity()).norm() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.t.norm() == doctest::Approx(0.0).epsilon(1e-12));

  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    auto t = random_transform(rng);
    auto c = compose(t, t.inverse());
    CHECK((c.R - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(c.t.norm() < 1e-9);
  }
}

TEST_CASE("compose rotation group closure: Rz(30)*Rz(60) = Rz(90)") {
  RigidTransform a, b;
  a.R = rotation_about(Vec3::UnitZ(), deg2rad(30));
  b.R = rotation_about(Vec3::UnitZ(), deg2rad(60));
  auto c = compose(a, b);
  Mat3 expect = rotation_about(Vec3::UnitZ(), deg2rad(90));
  CHECK((c.R - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("compose associativity and identity element") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    auto a = random_transform(rng), b = random_transform(rng), c = random_transform(rng);
    auto lhs = compose(compose(a, b), c);
    auto rhs = compose(a, compose(b, c));
    CHECK((lhs.R - rhs.R).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((lhs.t - rhs.t).cwiseAbs().maxCoeff() < 1e-9);
    auto e = compose(a, RigidTransform{});
    CHECK((e.R - a.R).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((e.t - a.t).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("rotation_geodesic_angle basics") {
  Mat3 i = Mat3::Identity();
  CHECK(rotation_geodesic_angle(i, i) == doctest::Approx(0.0));
  CHECK(rotation_geodesic_angle(i, rotation_about(Vec3::UnitZ(), deg2rad(20))) ==
        doctest::Approx(20.0).epsilon(1e-9));
  // Rx(90) vs Ry(90): trace(Rx(90)^T Ry(90)) = 0, angle = acos(-1/2) = 120 deg.
  Mat3 rx = rotation_about(Vec3::UnitX(), deg2rad(90));
  Mat3 ry = rotation_about(Vec3::UnitY(), deg2rad(90));
  CHECK(rotation_geodesic_angle(rx, ry) == doctest::Approx(120.0).epsilon(1e-9));
}

TEST_CASE("rotation_geodesic_angle symmetry and triangle inequality") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    Mat3 a = rng.rotation(), b = rng.rotation(), c = rng.rotation();
    const double ab = rotation_geodesic_angle(a, b);
    const double ba = rotation_geodesic_angle(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
    const double ac = rotation_geodesic_angle(a, c);
    const double bc = rotation_geodesic_angle(b, c);
    CHECK(ab <= ac + bc + 1e-6);
  }
}

TEST_CASE("axis canonicalization is idempotent bitwise") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Vec3 u = 50.0 * rng.gaussian3();
    Vec3 v = rng.gaussian3();
    if (v.norm() < 1e-6) continue;
    Axis a = Axis::canonicalized(u, v);
    Axis b = Axis::canonicalized(a.u, a.v);
    CHECK(std::memcmp(a.u.data(), b.u.data(), 3 * sizeof(double)) == 0);
    CHECK(std::memcmp(a.v.data(), b.v.data(), 3 * sizeof(double)) == 0);
    // canonical invariants
    CHECK(std::abs(a.v.norm() - 1.0) < 1e-9);
    CHECK(std::abs(a.u.dot(a.v)) < 1e-9 * std::max(1.0, a.u.norm()));
    int imax = 0;
    for (int d = 1; d < 3; ++d)
      if (std::abs(a.v[d]) > std::abs(a.v[imax])) imax = d;
    CHECK(a.v[imax] > 0);
  }
}

TEST_CASE("axis represents the same line after canonicalization") {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    Vec3 u = 30.0 * rng.gaussian3();
    Vec3 v = rng.unit_vector();
    Axis a = Axis::canonicalized(u, v);
    // a random point on the original line stays at zero distance
    const Vec3 p = u + rng.uniform(-40, 40) * v;
    CHECK(a.radius_of(p) < 1e-8);
  }
}

TEST_CASE("knn: collinear points and full-set query") {
  std::vector<Vec3> pts = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  KdTree tree(pts);
  auto r = tree.knn(Vec3(0, 0, 0), 2);
  CHECK(r == std::vector<int>{0, 1});
  auto all = tree.knn(Vec3(0.9, 0, 0), 3);
  CHECK(all.size() == 3);
  std::vector<int> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2});
}

TEST_CASE("knn on empty cloud throws") {
  KdTree tree;
  CHECK_THROWS(tree.knn(Vec3::Zero(), 1));
}

TEST_CASE("knn agrees with brute force on 100 random clouds") {
  Rng rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 50 + int(rng.below(950));
    std::vector<Vec3> pts(n);
    for (auto& p : pts) p = 100.0 * rng.gaussian3();
    KdTree tree(pts);
    const Vec3 q = 100.0 * rng.gaussian3();
    const int k = 1 + int(rng.below(8));
    CHECK(tree.knn(q, k) == knn_brute_force(pts, q, k));
  }
}

TEST_CASE("radius query matches filter of brute force") {
  Rng rng(77);
  std::vector<Vec3> pts(500);
  for (auto& p : pts) p = 10.0 * rng.gaussian3();
  KdTree tree(pts);
  for (int i = 0; i < 20; ++i) {
    const Vec3 q = 10.0 * rng.gaussian3();
    const double r = rng.uniform(0.5, 5.0);
    auto got = tree.radius(q, r);
    std::vector<int> want;
    auto bf = knn_brute_force(pts, q, 500);
    for (int idx : bf)
      if ((pts[idx] - q).norm() <= r) want.push_back(idx);
    CHECK(got == want);
  }
}

TEST_CASE("fit_rigid recovers a random transform") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_transform(rng);
    std::vector<Vec3> src(12), dst(12);
    for (int i = 0; i < 12; ++i) {
      src[i] = 20.0 * rng.gaussian3();
      dst[i] = g.apply(src[i]);
    }
    auto f = fit_rigid(src, dst);
    CHECK((f.R - g.R).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((f.t - g.t).norm() < 1e-8);
  }
}

TEST_CASE("axis_to_z maps the axis onto z") {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    Axis a = Axis::canonicalized(20.0 * rng.gaussian3(), rng.unit_vector());
    auto g = axis_to_z(a);
    CHECK(g.apply(a.u).norm() < 1e-9);
    CHECK((g.rotate(a.v) - Vec3::UnitZ()).norm() < 1e-9);
  }
}
