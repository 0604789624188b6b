#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "core/errors.hpp"
#include "core/fields.hpp"
#include "support/oracles.hpp"

using namespace geostab;
using std::numbers::pi;

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("field values") {
  const Field s2 = s2_field(0.5);
  const Vec x = s2.value(s2.manifold().point({0.4, 1.0})).comps;
  CHECK(x[0] == doctest::Approx(0.5 * std::cos(0.4)));
  CHECK(x[1] == 1.0);
  const Field h2 = h2_field(2.0);
  const Vec xh = h2.value(h2.manifold().point({3.0, 0.5})).comps;
  CHECK(xh[0] == 1.0);
  CHECK(xh[1] == 2.0);
  const Field ys = h2_singular_field();
  CHECK(ys.value(ys.manifold().point({1.0, 4.0})).comps[1] == 4.0);
  const Field s3 = s3_field(0.7);
  const Vec x3 = s3.value(s3.manifold().point({1.2, 0.4, 2.0})).comps;
  CHECK(x3[0] == doctest::Approx(-0.7 * std::sin(1.2)));
  CHECK(x3[1] == 0.0);
  CHECK(x3[2] == 1.0);
}

TEST_CASE("covariant derivative on the sphere") {
  for (double eps : {0.0, 0.5, 2.0}) {
    for (double phi : {-1.2, -0.3, 0.0, 0.8, 1.4}) {
      const Field f = s2_field(eps);
      const Mat m = f.covariant_matrix(f.manifold().point({phi, 0.3})).entries;
      const double s = std::sin(phi), c = std::cos(phi);
      CHECK(max_abs(m - mat2(-eps * s, c * s, -std::tan(phi), -eps * s)) < 1e-14);
    }
  }
}

TEST_CASE("covariant derivative on the half-plane") {
  for (double eps : {0.0, 0.5, 2.0}) {
    for (double y : {0.2, 1.0, 3.0}) {
      const Field f = h2_field(eps);
      const Mat m = f.covariant_matrix(f.manifold().point({-0.7, y})).entries;
      CHECK(max_abs(m - mat2(-eps / y, -1.0 / y, 1.0 / y, -eps / y)) < 1e-14);
    }
  }
  const Field ys = h2_singular_field();
  for (double y : {0.3, 1.0, 5.0}) {
    const Mat m = ys.covariant_matrix(ys.manifold().point({2.0, y})).entries;
    CHECK(max_abs(m - mat2(-1.0, 0.0, 0.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("covariant derivative on the 3-sphere") {
  const double eps = 0.9, psi = 0.7, theta = 1.3;
  const Field f = s3_field(eps);
  const Mat m = f.covariant_matrix(f.manifold().point({psi, theta, 0.5})).entries;
  const double sp = std::sin(psi), cp = std::cos(psi), st = std::sin(theta), ct = std::cos(theta);
  Mat ref(3, 3);
  ref << -eps * cp, 0.0, -sp * cp * st * st,
         0.0, -eps * cp, -st * ct,
         cp / sp, ct / st, -eps * cp;
  CHECK(max_abs(m - ref) < 1e-14);
  // At psi = theta = pi/2 the rotation field is parallel to first order.
  CHECK(max_abs(f.covariant_matrix(f.manifold().point({pi / 2, pi / 2, 0.0})).entries) < 1e-15);
}

TEST_CASE("analytic Jacobians agree with central differences") {
  std::mt19937_64 rng(21);
  const std::vector<Field> fields = {s2_field(0.8), h2_field(1.3), h2_singular_field(), s3_field(0.6)};
  for (const Field& f : fields) {
    const Manifold& m = f.manifold();
    for (int k = 0; k < 100; ++k) {
      const ChartPoint p = oracle::random_point(m, rng);
      const ComponentFn comps = [&](const Vec& x) { return f.value(ChartPoint{m.kind(), x}).comps; };
      const Mat fd = finite_difference_jacobian(comps, p.coords);
      CHECK(max_abs(f.jacobian(p) - fd) < 1e-6);
    }
  }
}

TEST_CASE("generic fields use central differences") {
  const Manifold h2 = Manifold::hyperbolic2();
  const Field g = generic_field(h2, "shear", [](const Vec& x) {
    Vec v(2);
    v << 1.0, 1.3;
    (void)x;
    return v;
  });
  const Field ref = h2_field(1.3);
  std::mt19937_64 rng(22);
  for (int k = 0; k < 20; ++k) {
    const ChartPoint p = oracle::random_point(h2, rng);
    CHECK(max_abs(g.covariant_matrix(p).entries - ref.covariant_matrix(p).entries) < 1e-9);
  }
  CHECK(g.name() == "shear");
}

TEST_CASE("linear fields on Euclidean space") {
  Mat a(3, 3);
  a << -1.0, 0.5, 0.0, -0.5, -2.0, 0.1, 0.0, 0.3, -0.7;
  Vec b(3);
  b << 0.1, -0.2, 0.3;
  const Field f = linear_field(a, b);
  CHECK(f.manifold().dim() == 3);
  Vec x(3);
  x << 1.0, 2.0, -1.0;
  const ChartPoint p = f.manifold().point(x);
  CHECK(max_abs(f.value(p).comps - (a * x + b)) < 1e-15);
  CHECK(max_abs(f.covariant_matrix(p).entries - a) == 0.0);
  // Linear in the point: X(p + q) - X(q) = A p.
  Vec y(3);
  y << -0.5, 0.25, 4.0;
  const Vec lhs = f.value(f.manifold().point(x + y)).comps - f.value(f.manifold().point(y)).comps;
  CHECK(max_abs(lhs - a * x) < 1e-14);
  CHECK_THROWS_AS((void)linear_field(Mat::Identity(2, 2), Vec::Zero(3)), Error);
}

TEST_CASE("directional covariant derivative") {
  const Field ys = h2_singular_field();
  const Manifold& m = ys.manifold();
  std::mt19937_64 rng(23);
  for (int k = 0; k < 50; ++k) {
    const ChartPoint p = oracle::random_point(m, rng);
    const TangentVector v = oracle::random_tangent(m, p, 1.0, rng);
    const TangentVector dv = ys.directional_covariant(v);
    const double eta = v.comps[0] / p.coords[1];
    CHECK(m.inner(dv, dv) == doctest::Approx(eta * eta).epsilon(1e-12));
    CHECK(m.inner(dv, v) == doctest::Approx(-eta * eta).epsilon(1e-12));
    // The field direction is in the kernel.
    CHECK(m.norm(ys.directional_covariant(ys.value(p))) < 1e-14 * p.coords[1]);
  }

  // On the sphere with eps = 0, X is Killing: nabla X is g-skew.
  const Field s2 = s2_field(0.0);
  for (int k = 0; k < 50; ++k) {
    const ChartPoint p = oracle::random_point(s2.manifold(), rng);
    const TangentVector v = oracle::random_tangent(s2.manifold(), p, 1.0, rng);
    CHECK(std::abs(s2.manifold().inner(s2.directional_covariant(v), v)) < 1e-13);
  }
}
