#pragma once

#include "core/fields.hpp"
#include "core/manifolds.hpp"

namespace geostab {

enum class CurvatureSign { Negative = -1, Zero = 0, Positive = 1 };

[[nodiscard]] CurvatureSign sign_of(double rho) noexcept;
[[nodiscard]] inline int as_int(CurvatureSign s) noexcept { return static_cast<int>(s); }

/// c_kappa(t): cos(kappa t), 1 or cosh(kappa t).
[[nodiscard]] double ck(double kappa, double t, CurvatureSign sign);
/// s_kappa(t): sin(kappa t)/kappa, t or sinh(kappa t)/kappa; equals t at kappa = 0.
[[nodiscard]] double sk(double kappa, double t, CurvatureSign sign);

struct FValues {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
};

/// f1 = sign(1 - c^2), f2 = sign(1 - c s), f3 = sign(1 - s^2) with c, s taken at t = 1.
/// Evaluated without cancellation near kappa = 0.
[[nodiscard]] FValues f_functions(double kappa, CurvatureSign sign);

/// f2 - sqrt(f1 f3), the curvature penalty entering every step-size bound.
/// For negative curvature and large kappa it uses a rearrangement that keeps
/// full relative accuracy (the naive form cancels terms of size e^{2 kappa}).
[[nodiscard]] double curvature_penalty(double kappa, CurvatureSign sign);

/// (f2 - sqrt(f1 f3)) / (1 + f3) for negative curvature; tends to 0 as kappa grows.
[[nodiscard]] double scaled_negative_penalty(double kappa);

/// kappa coth(kappa), equal to 1 at kappa = 0.
[[nodiscard]] double kappa_coth(double kappa);

/// Frame coefficients of a Jacobi field along t -> exp(t u).
struct JacobiData {
  Frame frame;      ///< orthonormal frame at the base point, e_1 parallel to u
  Vec a;            ///< a_i = <J(0), e_i>
  Vec b;            ///< b_i = <D_t J(0), e_i>
  double kappa = 0; ///< sqrt|rho| |u|
  CurvatureSign sign = CurvatureSign::Zero;
  /// b_i / kappa, kept separately so the GEE construction can form it without
  /// the step size h (which cancels analytically). Unused when kappa == 0.
  Vec rate;
  /// Absolute error bounds on the entries of a, b and rate (zero when exact).
  double a_error = 0.0;
  double b_error = 0.0;
  double rate_error = 0.0;
};

/// A computed norm difference together with a bound on its rounding error.
struct NormDifference {
  double value = 0.0;
  double error = 0.0;
};

/// JacobiData for J(0) = v, D_t J(0) = w along exp(t u).
[[nodiscard]] JacobiData jacobi_data(const Manifold& manifold, const TangentVector& v,
                                     const TangentVector& w, const TangentVector& u);

/// |J(1)|^2 - |J(0)|^2 from the frame coefficients (stable for large kappa).
[[nodiscard]] double norm_difference(const JacobiData& data);
/// Same value plus a first-order bound on the error caused by rounding in the
/// evaluation and by the stated input errors of `data`.
[[nodiscard]] NormDifference norm_difference_bounded(const JacobiData& data);

/// |J(1)|^2 - |J(0)|^2 = |w|^2 + 2<v,w> - sign * sum_{i>=2}(a_i^2 f1 + 2 a_i b_i f2 + b_i^2 f3).
[[nodiscard]] double norm_diff(const Manifold& manifold, const TangentVector& v, const TangentVector& w,
                               const TangentVector& u);

/// J(t) expressed in `frame_at_t`, which must be the parallel transport of data.frame.
[[nodiscard]] TangentVector jacobi_eval(const JacobiData& data, const Frame& frame_at_t, double t);

/// Everything about the GEE variation Gamma(s, t) = exp_{y(s)}(t h X) at one
/// point that does not depend on the step size or the variation direction.
class GeeVariation {
 public:
  GeeVariation(const Field& field, const ChartPoint& p);

  [[nodiscard]] const Frame& frame() const noexcept { return frame_; }
  /// nabla X in the frame: entry (i, j) = <nabla_{e_j} X, e_i>.
  [[nodiscard]] const Mat& frame_operator() const noexcept { return operator_; }
  /// |X_p| (g-norm).
  [[nodiscard]] double field_norm() const noexcept { return field_norm_; }
  [[nodiscard]] CurvatureSign sign() const noexcept { return sign_; }
  [[nodiscard]] double kappa(double h) const noexcept { return h * curvature_speed_; }

  /// Frame coefficients of a chart tangent vector at the base point.
  [[nodiscard]] Vec coefficients(const TangentVector& v) const;
  /// JacobiData for S_0 = sum xi_i e_i, D_t S(0) = h nabla_{S_0} X, u = h X_p.
  [[nodiscard]] JacobiData data(const Vec& xi, double h) const;
  /// |S(1)|^2 - |S(0)|^2 for S_0 = sum xi_i e_i.
  [[nodiscard]] double delta(const Vec& xi, double h) const;

 private:
  Frame frame_;
  Mat gram_;       // g at the base point
  Mat operator_;
  double beta_error_ = 0.0;  // per unit |xi|
  double field_norm_ = 0.0;
  double curvature_speed_ = 0.0;  // |X| sqrt|rho|
  CurvatureSign sign_ = CurvatureSign::Zero;
};

/// JacobiData for the GEE variation through p in the unit direction e.
[[nodiscard]] JacobiData gee_jacobi_data(const Field& field, const ChartPoint& p, const TangentVector& e,
                                         double h);

}  // namespace geostab
