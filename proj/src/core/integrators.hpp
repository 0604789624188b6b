#pragma once

#include <vector>

#include "core/fields.hpp"

namespace geostab {

enum class Method { GEE, GIE };

[[nodiscard]] const char* to_string(Method m) noexcept;

inline constexpr double kGieTolerance = 1e-12;
inline constexpr int kGieMaxIterations = 200;

struct Trajectory {
  std::vector<ChartPoint> points;
  double h = 0.0;
  Method method = Method::GEE;
};

/// y1 = exp_p(h X_p).
[[nodiscard]] ChartPoint gee_step(const Field& field, const ChartPoint& p, double h);

/// Solves p = exp_q(-h X_q) for q by defect correction in chart coordinates,
/// starting from the explicit predictor. The returned q satisfies
/// d(exp_q(-h X_q), p) <= tol; otherwise ErrorCode::NonConvergence.
[[nodiscard]] ChartPoint gie_step(const Field& field, const ChartPoint& p, double h, double tol = kGieTolerance,
                                  int max_iter = kGieMaxIterations);

/// d(exp_q(-h X_q), p): how far q is from solving the implicit step.
[[nodiscard]] double gie_defect(const Field& field, const ChartPoint& p, const ChartPoint& q, double h);

[[nodiscard]] ChartPoint step(const Field& field, const ChartPoint& p, double h, Method method);

/// n_steps steps from p0; the result holds n_steps + 1 points.
[[nodiscard]] Trajectory integrate(const Field& field, const ChartPoint& p0, double h, int n_steps, Method method);

/// d(step(p), step(q)) / d(p, q).
[[nodiscard]] double expansivity_ratio(const Field& field, const ChartPoint& p, const ChartPoint& q, double h,
                                       Method method);

}  // namespace geostab
