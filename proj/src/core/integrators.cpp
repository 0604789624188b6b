#include "core/integrators.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "core/errors.hpp"

namespace geostab {

namespace {

void require_step(double h) {
  if (!std::isfinite(h) || h < 0.0) throw Error(ErrorCode::InvalidArgument, "step size must be finite and >= 0");
}

}  // namespace

const char* to_string(Method m) noexcept { return m == Method::GEE ? "GEE" : "GIE"; }

ChartPoint gee_step(const Field& field, const ChartPoint& p, double h) {
  require_step(h);
  const TangentVector x = field.value(p);
  return field.manifold().exp_map({p, h * x.comps});
}

double gie_defect(const Field& field, const ChartPoint& p, const ChartPoint& q, double h) {
  const Manifold& m = field.manifold();
  const ChartPoint back = m.exp_map({q, -h * field.value(q).comps});
  return m.distance(back, p);
}

ChartPoint gie_step(const Field& field, const ChartPoint& p, double h, double tol, int max_iter) {
  require_step(h);
  if (!(tol > 0.0) || max_iter < 1) throw Error(ErrorCode::InvalidArgument, "bad GIE solver settings");
  const Manifold& m = field.manifold();
  m.validate(p);
  if (h == 0.0) return p;
  const int d = m.dim();

  // Residual exp_q(-h X_q) - p in chart coordinates; empty if q or the geodesic leaves the chart.
  const auto residual = [&](const Vec& q) -> std::optional<Vec> {
    if (!q.allFinite() || !m.contains(q)) return std::nullopt;
    try {
      const ChartPoint qp = m.point(q);
      const ChartPoint back = m.exp_map({qp, -h * field.value(qp).comps});
      return m.chart_difference(back, p);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ChartExit || e.code() == ErrorCode::Domain) return std::nullopt;
      throw;
    }
  };

  // Explicit predictor, or p itself if that already fails.
  Vec q = p.coords;
  try {
    const ChartPoint pred = gee_step(field, p, h);
    if (residual(pred.coords)) q = pred.coords;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ChartExit) throw;
  }
  std::optional<Vec> r = residual(q);
  if (!r) throw Error(ErrorCode::ChartExit, "GIE start point left the chart domain");

  // Damped Newton with a central-difference Jacobian.
  for (int it = 0; it < max_iter; ++it) {
    if (gie_defect(field, p, m.point(q), h) <= tol) return m.point(q);
    Mat jac(d, d);
    bool have_jacobian = true;
    for (int j = 0; j < d && have_jacobian; ++j) {
      const double step = 1e-7 * std::max(1.0, std::abs(q[j]));
      Vec qp = q, qm = q;
      qp[j] += step;
      qm[j] -= step;
      const std::optional<Vec> rp = residual(qp), rm = residual(qm);
      if (!rp || !rm) {
        have_jacobian = false;
        break;
      }
      jac.col(j) = (*rp - *rm) / (2.0 * step);
    }
    Vec dq = -*r;  // fallback: plain defect correction
    if (have_jacobian) {
      const Eigen::FullPivLU<Mat> lu(jac);
      if (lu.isInvertible()) dq = lu.solve(-*r);
    }
    const double r0 = r->norm();
    bool moved = false;
    for (double lambda = 1.0; lambda > 1e-10; lambda *= 0.5) {
      const Vec trial = q + lambda * dq;
      const std::optional<Vec> rt = residual(trial);
      if (rt && rt->norm() < r0) {
        q = m.point(trial).coords;
        r = rt;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  const double defect = gie_defect(field, p, m.point(q), h);
  if (defect <= tol) return m.point(q);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", defect);
  throw Error(ErrorCode::NonConvergence,
              "GIE did not converge in " + std::to_string(max_iter) + " iterations (defect " + buf + ")");
}

ChartPoint step(const Field& field, const ChartPoint& p, double h, Method method) {
  return method == Method::GEE ? gee_step(field, p, h) : gie_step(field, p, h);
}

Trajectory integrate(const Field& field, const ChartPoint& p0, double h, int n_steps, Method method) {
  if (n_steps < 0) throw Error(ErrorCode::InvalidArgument, "number of steps must be >= 0");
  field.manifold().validate(p0);
  Trajectory t{{p0}, h, method};
  t.points.reserve(static_cast<std::size_t>(n_steps) + 1);
  for (int i = 0; i < n_steps; ++i) t.points.push_back(step(field, t.points.back(), h, method));
  return t;
}

double expansivity_ratio(const Field& field, const ChartPoint& p, const ChartPoint& q, double h, Method method) {
  const Manifold& m = field.manifold();
  const double d0 = m.distance(p, q);
  if (!(d0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "expansivity ratio needs distinct points");
  if (h == 0.0) return 1.0;
  return m.distance(step(field, p, h, method), step(field, q, h, method)) / d0;
}

}  // namespace geostab
