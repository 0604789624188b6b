#include "core/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "core/errors.hpp"
#include "core/jacobi.hpp"

namespace geostab {

namespace {

constexpr int kMaxBisection = 200;
constexpr int kInnerGrid = 2000;

struct Minimum {
  double x;
  double f;
};

/// Grid scan of f on [a, b] followed by golden-section search in the best cell pair.
Minimum grid_minimize(const std::function<double(double)>& f, double a, double b, int n) {
  Minimum best{a, f(a)};
  int best_i = 0;
  for (int i = 1; i <= n; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / n;
    const double fx = f(x);
    if (fx < best.f) {
      best = {x, fx};
      best_i = i;
    }
  }
  double lo = a + (b - a) * std::max(0, best_i - 1) / n;
  double hi = a + (b - a) * std::min(n, best_i + 1) / n;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  if (f1 < best.f) best = {x1, f1};
  if (f2 < best.f) best = {x2, f2};
  return best;
}

/// Largest h in [0, hi] with feasible(h), assuming feasibility is monotone and feasible(0).
double bisect_feasible(const std::function<bool(double)>& feasible, double hi) {
  double lo = 0.0;
  for (int it = 0; it < kMaxBisection && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

void require_alpha(double alpha) {
  if (std::isnan(alpha) || alpha <= 0.0) {
    throw Error(ErrorCode::NoBound, "alpha must be positive for a step-size bound");
  }
}

double arccoth(double z) { return 0.5 * std::log1p(2.0 / (z - 1.0)); }

Binding flat_or_curvature(double h, double alpha) {
  return h >= 2.0 * alpha * (1.0 - 1e-12) ? Binding::Flat : Binding::Curvature;
}

}  // namespace

const char* to_string(BoundKind k) noexcept {
  switch (k) {
    case BoundKind::PositiveCurvature: return "positive-curvature";
    case BoundKind::NegativeCurvature: return "negative-curvature";
    case BoundKind::SingularField: return "singular-field";
    case BoundKind::Flat: return "flat";
  }
  return "?";
}

const char* to_string(Binding b) noexcept {
  switch (b) {
    case Binding::Curvature: return "curvature";
    case Binding::KappaCap: return "kappa_cap";
    case Binding::Flat: return "flat";
    case Binding::Unconditional: return "unconditional";
  }
  return "?";
}

BoundResult euclidean_bound(double alpha) {
  require_alpha(alpha);
  if (std::isinf(alpha)) return {kInfinity, 0.0, BoundKind::Flat, Binding::Unconditional};
  return {2.0 * alpha, 0.0, BoundKind::Flat, Binding::Flat};
}

BoundResult bound_positive(const StabilityConstants& c) {
  require_alpha(c.alpha);
  if (!(c.rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "positive-curvature bound needs rho > 0");
  if (!std::isfinite(c.alpha) || !std::isfinite(c.mu_plus) || !std::isfinite(c.C) || c.C < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "positive-curvature bound needs finite alpha, mu_plus and C");
  }
  const double mu = std::max(c.mu_plus, 0.0);
  const double k = c.C * std::sqrt(c.rho);
  BoundResult r{2.0 * c.alpha, 0.0, BoundKind::PositiveCurvature, Binding::Flat};
  if (k == 0.0 || mu == 0.0) {
    r.kappa_at_h = r.h_max * k;
    if (r.kappa_at_h > std::numbers::pi) {
      r.h_max = std::numbers::pi / k;
      r.kappa_at_h = std::numbers::pi;
      r.binding = Binding::KappaCap;
    }
    return r;
  }
  const auto feasible = [&](double h) {
    return h <= 2.0 * c.alpha - 2.0 * mu * curvature_penalty(h * k, CurvatureSign::Positive);
  };
  const double cap = std::numbers::pi / k;
  const double hi = std::min(2.0 * c.alpha, cap);
  if (feasible(hi)) {
    r.h_max = hi;
    r.binding = hi == cap ? Binding::KappaCap : Binding::Flat;
  } else {
    r.h_max = bisect_feasible(feasible, hi);
    r.binding = Binding::Curvature;
  }
  r.kappa_at_h = std::min(r.h_max * k, std::numbers::pi);
  return r;
}

double negative_rhs_minimum(double alpha, double mu, double kmax, int n_grid) {
  const auto rhs = [&](double kappa) { return alpha * kappa_coth(kappa) - mu * scaled_negative_penalty(kappa); };
  if (kmax <= 0.0) return rhs(0.0);
  return grid_minimize(rhs, 0.0, kmax, n_grid).f;
}

BoundResult bound_negative(const StabilityConstants& c) {
  require_alpha(c.alpha);
  if (!(c.rho < 0.0)) throw Error(ErrorCode::InvalidArgument, "negative-curvature bound needs rho < 0");
  if (!std::isfinite(c.alpha) || !std::isfinite(c.mu_minus) || !std::isfinite(c.sigma) ||
      !std::isfinite(c.C) || c.C < 0.0 || c.sigma < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "negative-curvature bound needs finite alpha, mu_minus, sigma and C");
  }
  const double mu = std::max(c.mu_minus, 0.0);
  const double abs_rho = -c.rho;
  const double k = c.C * std::sqrt(abs_rho);
  const double scale = 2.0 / (1.0 + c.sigma * c.sigma * c.C * c.C * abs_rho);
  BoundResult r{scale * c.alpha, 0.0, BoundKind::NegativeCurvature, Binding::Flat};
  if (k == 0.0) return r;

  const auto feasible = [&](double h) { return h <= scale * negative_rhs_minimum(c.alpha, mu, h * k, kInnerGrid); };
  // The inner minimum never exceeds its value alpha at kappa = 0.
  const double hi = scale * c.alpha;
  double h = feasible(hi) ? hi : bisect_feasible(feasible, hi);
  // Re-check on a ten times finer grid; shrinking the interval can only raise its minimum.
  const double fine = scale * negative_rhs_minimum(c.alpha, mu, h * k, 10 * kInnerGrid);
  if (h > fine) h = fine;
  r.h_max = h;
  r.kappa_at_h = h * k;
  r.binding = flat_or_curvature(h, c.alpha);
  return r;
}

double singular_point_bound(double alpha, double sigma, double x_norm, double rho) {
  require_alpha(alpha);
  if (!(rho < 0.0)) throw Error(ErrorCode::InvalidArgument, "singular-field bound needs rho < 0");
  if (x_norm < 0.0 || !std::isfinite(x_norm)) throw Error(ErrorCode::InvalidArgument, "bad field norm");
  if (std::isinf(alpha)) return kInfinity;
  const double s = std::sqrt(-rho);
  if (x_norm == 0.0) return 2.0 * alpha;  // limit of arccoth(z) / (n sqrt|rho|) as n -> 0
  const double ns = x_norm * s;
  const double z = (1.0 + ns * ns * sigma * sigma) / (2.0 * alpha * ns);
  if (z - 1.0 <= 1e-12) {
    if (z < 1.0 - 1e-12) {
      throw Error(ErrorCode::InconsistentConstants,
                  "arccoth argument below 1: sigma is inconsistent with alpha and |X|");
    }
    return kInfinity;
  }
  return arccoth(z) / ns;
}

BoundResult bound_singular(const StabilityConstants& c, double x_norm_min, double x_norm_max) {
  if (!(x_norm_min <= x_norm_max)) throw Error(ErrorCode::InvalidArgument, "empty |X| range");
  BoundResult r{0.0, 0.0, BoundKind::SingularField, Binding::Curvature};
  const auto f = [&](double n) { return singular_point_bound(c.alpha, c.sigma, n, c.rho); };
  double h = std::min(f(x_norm_min), f(x_norm_max));
  if (x_norm_max > x_norm_min) h = std::min(h, grid_minimize(f, x_norm_min, x_norm_max, kInnerGrid).f);
  r.h_max = h;
  if (std::isinf(h)) {
    r.binding = Binding::Unconditional;
    r.kappa_at_h = kInfinity;
  } else {
    r.kappa_at_h = h * c.C * std::sqrt(-c.rho);
    r.binding = flat_or_curvature(h, c.alpha);
  }
  return r;
}

BoundResult bound_for(const StabilityConstants& c) {
  if (c.rho > 0.0) return bound_positive(c);
  if (c.rho == 0.0) return euclidean_bound(c.alpha);
  if (c.singular) return bound_singular(c, c.x_norm_min, c.C);
  return bound_negative(c);
}

}  // namespace geostab
