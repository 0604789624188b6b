#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "core/errors.hpp"
#include "core/integrators.hpp"
#include "support/oracles.hpp"

using namespace geostab;

namespace {

Field negated(const Field& f) {
  return generic_field(f.manifold(), "neg", [f](const Vec& x) {
    return Vec(-f.value(ChartPoint{f.manifold().kind(), x}).comps);
  });
}

double flow_error(const Field& f, const ChartPoint& p, double T, int n, Method method) {
  const Trajectory tr = integrate(f, p, T / n, n, method);
  const Vec ref = oracle::flow(f, p, T, 4000);
  const Manifold& m = f.manifold();
  return m.distance(tr.points.back(), m.point(ref));
}

}  // namespace

TEST_CASE("zeros of the field are fixed points") {
  Mat a(2, 2);
  a << -1.0, 0.3, -0.3, -2.0;
  const Field f = linear_field(a, Vec::Zero(2));
  const ChartPoint o = f.manifold().point({0.0, 0.0});
  for (double h : {0.1, 1.0, 10.0}) {
    CHECK(gee_step(f, o, h).coords.isZero());
    CHECK(gie_step(f, o, h).coords.norm() < 1e-15);
  }
}

TEST_CASE("vertical field on the half-plane is integrated exactly") {
  const Field ys = h2_singular_field();
  const ChartPoint p = ys.manifold().point({0.0, 1.0});
  const ChartPoint e = gee_step(ys, p, 1.0);
  CHECK(e.coords[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(e.coords[1] == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  const ChartPoint i = gie_step(ys, p, 1.0);
  CHECK(std::abs(i.coords[0]) < 1e-12);
  CHECK(i.coords[1] == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  const Trajectory tr = integrate(ys, p, 0.25, 8, Method::GEE);
  CHECK(tr.points.size() == 9u);
  CHECK(tr.points.back().coords[1] == doctest::Approx(std::exp(2.0)).epsilon(1e-13));
}

TEST_CASE("rotation field on the sphere moves along the parallel") {
  const Field f = s2_field(0.0);
  for (double phi : {0.0, 0.4, 1.2}) {
    const ChartPoint p = f.manifold().point({phi, 0.3});
    for (double h : {0.1, 0.5, 1.0}) {
      const ChartPoint q = gee_step(f, p, h);
      CHECK(f.manifold().distance(p, q) == doctest::Approx(h * std::cos(phi)).epsilon(1e-12));
      // The implicit geodesic starts at the new point, so its length uses |X| there.
      const ChartPoint r = gie_step(f, p, h);
      CHECK(f.manifold().distance(p, r) == doctest::Approx(h * std::cos(r.coords[0])).epsilon(1e-10));
      CHECK(std::abs(r.coords[0]) >= std::abs(phi));
    }
  }
}

TEST_CASE("linear fields on Euclidean space") {
  Mat a(3, 3);
  a << -1.0, 0.5, 0.0, -0.5, -2.0, 0.1, 0.0, 0.3, -0.7;
  const Field f = linear_field(a, Vec::Zero(3));
  Vec x(3);
  x << 1.0, -2.0, 0.5;
  const ChartPoint p = f.manifold().point(x);
  const double h = 0.3;
  CHECK((gee_step(f, p, h).coords - (x + h * a * x)).norm() < 1e-14);
  const Vec implicit = (Mat::Identity(3, 3) - h * a).inverse() * x;
  CHECK((gie_step(f, p, h).coords - implicit).norm() < 1e-12);
  CHECK((step(f, p, h, Method::GIE).coords - implicit).norm() < 1e-12);
}

TEST_CASE("implicit step solves its defining equation") {
  std::mt19937_64 rng(51);
  const std::vector<Field> fields = {s2_field(0.7), h2_field(1.2), s3_field(0.5)};
  for (const Field& f : fields) {
    for (int k = 0; k < 20; ++k) {
      const ChartPoint p = oracle::random_point(f.manifold(), rng);
      const double h = 0.05 + 0.3 * std::uniform_real_distribution<double>()(rng);
      const ChartPoint q = gie_step(f, p, h);
      CHECK(gie_defect(f, p, q, h) <= kGieTolerance);
      // exp_q(-h X_q) lands on p.
      const ChartPoint back = f.manifold().exp_map({q, -h * f.value(q).comps});
      CHECK(f.manifold().distance(back, p) <= 2 * kGieTolerance);
      // Undoing an explicit step of -X recovers the start.
      const ChartPoint y1 = gee_step(negated(f), p, h);
      CHECK(f.manifold().distance(gie_step(f, y1, h), p) < 1e-11);
    }
  }
}

TEST_CASE("implicit step reports non-convergence") {
  const Field f = s2_field(1.0);
  const ChartPoint p = f.manifold().point({0.3, 0.0});
  try {
    (void)gie_step(f, p, 0.5, 1e-14, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConvergence);
  }
  CHECK_THROWS_AS((void)gie_step(f, p, -0.1), Error);
}

TEST_CASE("both methods are first order") {
  struct Case {
    Field f;
    ChartPoint p;
  };
  const std::vector<Case> cases = {
      {s2_field(0.5), Manifold::sphere2().point({0.3, 0.0})},
      {h2_field(1.0), Manifold::hyperbolic2().point({0.0, 1.0})},
      {s3_field(0.4), Manifold::sphere3().point({0.7, 1.1, 0.0})},
  };
  for (const Case& c : cases) {
    for (Method m : {Method::GEE, Method::GIE}) {
      const double e1 = flow_error(c.f, c.p, 1.0, 200, m);
      const double e2 = flow_error(c.f, c.p, 1.0, 400, m);
      CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.05));
    }
  }
}

TEST_CASE("expansivity ratio for a linear contraction") {
  const double alpha = 0.5;
  const Field f = linear_field(-Mat::Identity(2, 2) / alpha, Vec::Zero(2));
  const ChartPoint p = f.manifold().point({1.0, 0.0});
  const ChartPoint q = f.manifold().point({0.0, 2.0});
  for (double h : {0.1, 0.5, 0.9, 1.5, 50.0}) {
    CHECK(expansivity_ratio(f, p, q, h, Method::GEE) == doctest::Approx(std::abs(1.0 - h / alpha)).epsilon(1e-12));
    CHECK(expansivity_ratio(f, p, q, h, Method::GIE) == doctest::Approx(1.0 / (1.0 + h / alpha)).epsilon(1e-12));
  }
  // Past 2 alpha the explicit step expands.
  CHECK(expansivity_ratio(f, p, q, 2.2 * alpha, Method::GEE) > 1.0);
  CHECK_THROWS_AS((void)expansivity_ratio(f, p, p, 0.1, Method::GEE), Error);
}
