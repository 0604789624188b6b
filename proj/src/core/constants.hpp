#pragma once

#include <limits>
#include <span>

#include "core/fields.hpp"

namespace geostab {

/// Constants feeding the step-size bounds, collected over a set of sample points.
struct StabilityConstants {
  double alpha = 0.0;     ///< cocoercivity: <nabla_v X, v> <= -alpha |nabla_v X|^2
  double mu_plus = 0.0;   ///< <nabla_v X, (I - P_X) v> >= -mu_plus |nabla_v X|^2
  double mu_minus = 0.0;  ///< <nabla_v X, P_X v> >= -mu_minus |nabla_v X|^2
  double sigma = 0.0;     ///< bound on the (range-restricted) inverse of nabla X
  double C = 0.0;         ///< max |X|_g
  double rho = 0.0;
  bool singular = false;  ///< nabla X has a kernel; mu_plus / mu_minus are NaN
  double x_norm_min = 0.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
/// sigma_min / sigma_max below this counts as a rank drop.
inline constexpr double kRankThreshold = 1e-12;

/// Largest eigenvalue of the symmetric part of g^{1/2} A g^{-1/2}.
[[nodiscard]] double log_g_norm(const Mat& a, const Mat& g);

/// Tightest alpha with <Av, v>_g <= -alpha |Av|_g^2; negative when A is not
/// cocoercive and +inf when A = 0. For singular A requires range(A) to equal
/// the range of its g-adjoint (otherwise ErrorCode::NoFiniteAlpha).
[[nodiscard]] double alpha_point(const Mat& a, const Mat& g);

/// Tightest mu_plus / mu_minus for invertible A (ErrorCode::SingularOperator otherwise).
[[nodiscard]] double mu_plus_point(const Mat& a, const Mat& g, const Vec& x);
[[nodiscard]] double mu_minus_point(const Mat& a, const Mat& g, const Vec& x);

/// g-operator norm of A^{-1}. With restrict_to_range the kernel must be
/// one-dimensional and spanned by x; the inverse is then taken on its complement.
[[nodiscard]] double sigma_point(const Mat& a, const Mat& g, bool restrict_to_range, const Vec& x = Vec());

/// True when sigma_min / sigma_max of g^{1/2} A g^{-1/2} is below kRankThreshold.
[[nodiscard]] bool is_singular(const Mat& a, const Mat& g);

/// Folds the pointwise constants over the samples: alpha = min, the rest = max.
/// Throws ErrorCode::NotCocoercive (listing the points) if some alpha_p <= 0.
[[nodiscard]] StabilityConstants region_constants(const Field& field, std::span<const ChartPoint> samples);
[[nodiscard]] StabilityConstants point_constants(const Field& field, const ChartPoint& p);

}  // namespace geostab
