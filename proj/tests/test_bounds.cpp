#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "core/examples.hpp"

using namespace geostab;
using std::numbers::pi;

namespace {

StabilityConstants positive(double alpha, double mu, double C) {
  StabilityConstants c;
  c.alpha = alpha;
  c.mu_plus = mu;
  c.mu_minus = mu;
  c.C = C;
  c.rho = 1.0;
  return c;
}

StabilityConstants negative(double alpha, double mu, double sigma, double C) {
  StabilityConstants c;
  c.alpha = alpha;
  c.mu_plus = mu;
  c.mu_minus = mu;
  c.sigma = sigma;
  c.C = C;
  c.rho = -1.0;
  return c;
}

// Penalties from the raw trigonometric definitions (moderate kappa only).
double raw_penalty_pos(double k) {
  if (k == 0.0) return 0.0;
  const double c = std::cos(k), s = std::sin(k) / k;
  return (1.0 - c * s) - std::sqrt((1.0 - c * c) * (1.0 - s * s));
}

double raw_rhs_neg(double alpha, double mu, double k) {
  if (k == 0.0) return alpha;
  const double c = std::cosh(k), s = std::sinh(k) / k;
  const double f2 = c * s - 1.0, f3 = s * s - 1.0, f1 = c * c - 1.0;
  return alpha * (1.0 + f2) / (1.0 + f3) - mu * (f2 - std::sqrt(f1 * f3)) / (1.0 + f3);
}

// Largest grid h in (0, hi] with h <= 2 alpha - 2 mu F(h k), scanning upward.
double scan_positive(double alpha, double mu, double k, int n) {
  const double hi = std::min(2.0 * alpha, pi / k);
  double last = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double h = hi * i / n;
    if (h <= 2.0 * alpha - 2.0 * mu * raw_penalty_pos(h * k)) last = h;
    else break;
  }
  return last;
}

// Largest grid h with h <= s * min_{kappa <= h k} rhs(kappa), tracking a running minimum.
double scan_negative(double alpha, double mu, double sigma, double C, int n) {
  const double s = 2.0 / (1.0 + sigma * sigma * C * C);
  const double hi = s * alpha;
  double run = alpha, last = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double h = hi * i / n;
    run = std::min(run, raw_rhs_neg(alpha, mu, h * C));
    if (h <= s * run) last = h;
    else break;
  }
  return last;
}

}  // namespace

TEST_CASE("flat limit") {
  const double alpha = 0.7;
  const BoundResult p = bound_positive(positive(alpha, 1.3, 1e-9));
  CHECK(p.h_max == doctest::Approx(2.0 * alpha).epsilon(1e-12));
  CHECK(p.binding == Binding::Flat);
  const BoundResult n = bound_negative(negative(alpha, 1.3, 2.0, 1e-9));
  CHECK(n.h_max == doctest::Approx(2.0 * alpha).epsilon(1e-12));
  const BoundResult z = bound_positive(positive(alpha, 1.3, 0.0));
  CHECK(z.h_max == 2.0 * alpha);
  CHECK(z.kappa_at_h == 0.0);
}

TEST_CASE("Euclidean bound") {
  CHECK(euclidean_bound(1.0).h_max == 2.0);
  CHECK(euclidean_bound(0.5).h_max == 1.0);
  CHECK(euclidean_bound(1e-9).h_max == 2e-9);
  CHECK(euclidean_bound(1.0).binding == Binding::Flat);
  CHECK(euclidean_bound(kInfinity).unconditional());
  for (double bad : {0.0, -1.0, std::nan("")}) {
    try {
      (void)euclidean_bound(bad);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoBound);
    }
  }
}

TEST_CASE("positive curvature bound against a dense scan") {
  const double phi = pi / 3;
  for (double eps : {0.5, 1.0, 2.0}) {
    const Field f = s2_field(eps);
    const ChartPoint p = example_point(Example::S2, phi, 0.0);
    const AnalyticConstants a = analytic_constants(Example::S2, eps, p);
    const BoundResult r = bound_positive(positive(*a.alpha, *a.mu_plus, *a.C));
    const double ref = scan_positive(*a.alpha, *a.mu_plus, *a.C, 1000000);
    CHECK(r.h_max == doctest::Approx(ref).epsilon(3e-6));
    CHECK(r.h_max >= ref);
    CHECK(r.kappa_at_h == doctest::Approx(r.h_max * *a.C));
    CHECK(r.kind == BoundKind::PositiveCurvature);
  }
}

TEST_CASE("negative curvature bound against a dense scan") {
  for (double eps : {0.5, 1.0, 2.0}) {
    const ChartPoint p = example_point(Example::H2, 1.0, 0.0);
    const AnalyticConstants a = analytic_constants(Example::H2, eps, p);
    const StabilityConstants c = negative(*a.alpha, *a.mu_minus, *a.sigma, *a.C);
    const BoundResult r = bound_negative(c);
    const double ref = scan_negative(*a.alpha, *a.mu_minus, *a.sigma, *a.C, 200000);
    CHECK(r.h_max == doctest::Approx(ref).epsilon(2e-5));
    CHECK(r.kind == BoundKind::NegativeCurvature);
  }
  // A large mu makes the curvature term bind.
  const StabilityConstants c = negative(1.0, 40.0, 0.3, 1.0);
  const BoundResult r = bound_negative(c);
  CHECK(r.binding == Binding::Curvature);
  CHECK(r.h_max == doctest::Approx(scan_negative(1.0, 40.0, 0.3, 1.0, 200000)).epsilon(2e-5));
}

TEST_CASE("negative curvature with mu = 0 and sigma = 0 gives 2 alpha") {
  const BoundResult r = bound_negative(negative(1.0, 0.0, 0.0, 1.0));
  CHECK(r.h_max == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.binding == Binding::Flat);
  CHECK(negative_rhs_minimum(1.0, 0.0, 5.0) == doctest::Approx(1.0).epsilon(1e-15));
  // Negative mu is clamped to zero.
  CHECK(bound_negative(negative(1.0, -3.0, 0.0, 1.0)).h_max == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("kappa cap and binding labels") {
  const BoundResult cap = bound_positive(positive(10.0, 1e-3, 1.0));
  CHECK(cap.binding == Binding::KappaCap);
  CHECK(cap.h_max == doctest::Approx(pi));
  CHECK(cap.kappa_at_h == doctest::Approx(pi));
  const BoundResult flat = bound_positive(positive(0.5, 0.0, 1.0));
  CHECK(flat.binding == Binding::Flat);
  CHECK(flat.h_max == 1.0);
  const BoundResult curv = bound_positive(positive(1.0, 5.0, 1.0));
  CHECK(curv.binding == Binding::Curvature);
  CHECK(curv.h_max < 2.0);
  CHECK(std::string(to_string(Binding::KappaCap)) == "kappa_cap");
  CHECK(std::string(to_string(Binding::Unconditional)) == "unconditional");
}

TEST_CASE("positive curvature parameter is capped at pi") {
  for (double alpha : {0.1, 1.0, 10.0, 100.0})
    for (double mu : {0.0, 0.1, 1.0, 10.0})
      for (double C : {0.01, 0.5, 1.0, 5.0}) {
        const BoundResult r = bound_positive(positive(alpha, std::max(mu, alpha), C));
        CHECK(r.kappa_at_h <= pi * (1.0 + 1e-15));
        CHECK(r.h_max <= 2.0 * alpha);
        CHECK(r.h_max > 0.0);
      }
}

TEST_CASE("bounds are monotone in the constants") {
  const std::vector<double> grid = {0.1, 0.3, 0.7, 1.5, 3.0};
  for (double alpha : grid) {
    double prev = kInfinity;
    for (double mu : grid) {
      const double h = bound_positive(positive(alpha, mu, 1.0)).h_max;
      CHECK(h <= prev * (1.0 + 1e-12));
      prev = h;
    }
    prev = kInfinity;
    for (double C : grid) {
      const double h = bound_positive(positive(alpha, 1.0, C)).h_max;
      CHECK(h <= prev * (1.0 + 1e-12));
      prev = h;
    }
    prev = kInfinity;
    for (double sigma : grid) {
      const double h = bound_negative(negative(alpha, 1.0, sigma, 1.0)).h_max;
      CHECK(h <= prev * (1.0 + 1e-12));
      prev = h;
    }
    prev = kInfinity;
    for (double mu : grid) {
      const double h = bound_negative(negative(alpha, mu, 0.5, 1.0)).h_max;
      CHECK(h <= prev * (1.0 + 1e-12));
      prev = h;
    }
    prev = kInfinity;
    for (double C : grid) {
      const double h = bound_negative(negative(alpha, 1.0, 0.5, C)).h_max;
      CHECK(h <= prev * (1.0 + 1e-12));
      prev = h;
    }
  }
  for (double mu : grid) {
    double prev = 0.0;
    for (double alpha : grid) {
      const double hp = bound_positive(positive(alpha, mu, 1.0)).h_max;
      CHECK(hp >= prev * (1.0 - 1e-12));
      prev = hp;
    }
  }
}

TEST_CASE("bounds along the example grids") {
  // Towards the pole alpha shrinks, but the field slows and the bound approaches 2 alpha.
  double prev = kInfinity, prev_ratio = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double phi = 0.1 + 1.37 * i / 39.0;
    const ChartPoint p = example_point(Example::S2, phi, 0.0);
    const AnalyticConstants a = analytic_constants(Example::S2, 1.0, p);
    const double h = bound_positive(positive(*a.alpha, *a.mu_plus, *a.C)).h_max;
    CHECK(h <= prev);
    CHECK(h / (2.0 * *a.alpha) >= prev_ratio);
    prev = h;
    prev_ratio = h / (2.0 * *a.alpha);
  }
  CHECK(prev_ratio > 0.99);
  // On the half-plane everything scales with y.
  for (double y : {0.5, 1.0, 2.0, 4.0}) {
    const ChartPoint p = example_point(Example::H2, y, 0.0);
    const AnalyticConstants a = analytic_constants(Example::H2, 1.0, p);
    const double h = bound_negative(negative(*a.alpha, *a.mu_minus, *a.sigma, *a.C)).h_max;
    CHECK(h / y == doctest::Approx(bound_negative(negative(0.5, *a.mu_minus / y, *a.sigma / y, *a.C * y)).h_max)
                       .epsilon(1e-9));
  }
}

TEST_CASE("singular field bound") {
  // z = (1 + n^2) / (2n) = 2 at n = 2 - sqrt(3).
  const double n = 2.0 - std::sqrt(3.0);
  CHECK(singular_point_bound(1.0, 1.0, n, -1.0) == doctest::Approx(0.5 * std::log(3.0) / n).epsilon(1e-14));
  // z = 1 exactly: no restriction.
  CHECK(singular_point_bound(1.0, 1.0, 1.0, -1.0) == kInfinity);
  // As |X| -> 0 the bound tends to 2 alpha.
  CHECK(singular_point_bound(0.8, 1.0, 1e-8, -1.0) == doctest::Approx(1.6).epsilon(1e-7));
  CHECK(singular_point_bound(0.8, 1.0, 0.0, -1.0) == 1.6);
  try {
    (void)singular_point_bound(1.0, 0.5, 1.0, -1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentConstants);
  }

  StabilityConstants c = negative(1.0, std::nan(""), 1.0, 1.0);
  c.singular = true;
  c.x_norm_min = 1.0;
  const BoundResult r = bound_for(c);
  CHECK(r.kind == BoundKind::SingularField);
  CHECK(r.unconditional());
  CHECK(r.h_max == kInfinity);
  // A range of |X| takes the worst point.
  const BoundResult rr = bound_singular(c, n, 1.0);
  CHECK(rr.h_max == doctest::Approx(0.5 * std::log(3.0) / n).epsilon(1e-12));
  CHECK_THROWS_AS((void)bound_singular(c, 2.0, 1.0), Error);
}

TEST_CASE("dispatch by curvature") {
  CHECK(bound_for(positive(1.0, 1.0, 0.5)).kind == BoundKind::PositiveCurvature);
  CHECK(bound_for(negative(1.0, 1.0, 1.0, 0.5)).kind == BoundKind::NegativeCurvature);
  StabilityConstants flat = positive(0.25, 1.0, 1.0);
  flat.rho = 0.0;
  CHECK(bound_for(flat).h_max == 0.5);
  CHECK_THROWS_AS((void)bound_positive(negative(1.0, 1.0, 1.0, 1.0)), Error);
  CHECK_THROWS_AS((void)bound_negative(positive(1.0, 1.0, 1.0)), Error);
  CHECK_THROWS_AS((void)bound_positive(positive(0.0, 1.0, 1.0)), Error);
}
