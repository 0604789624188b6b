#pragma once

#include "core/constants.hpp"

namespace geostab {

enum class BoundKind { PositiveCurvature, NegativeCurvature, SingularField, Flat };

[[nodiscard]] const char* to_string(BoundKind k) noexcept;

/// What limited the step: the curvature correction, the kappa <= pi cap, the
/// flat value 2 alpha, or nothing at all.
enum class Binding { Curvature, KappaCap, Flat, Unconditional };

[[nodiscard]] const char* to_string(Binding b) noexcept;

struct BoundResult {
  double h_max = 0.0;       ///< +inf when no step restriction applies
  double kappa_at_h = 0.0;  ///< h_max C sqrt|rho|
  BoundKind kind = BoundKind::Flat;
  Binding binding = Binding::Flat;
  [[nodiscard]] bool unconditional() const noexcept { return binding == Binding::Unconditional; }
};

/// Largest h with h <= 2 alpha - 2 mu_+ (f2 - sqrt(f1 f3))(h C sqrt(rho)) and h C sqrt(rho) <= pi.
[[nodiscard]] BoundResult bound_positive(const StabilityConstants& c);

/// Largest h with h <= 2 / (1 + sigma^2 C^2 |rho|) * (alpha k coth k - mu_- (f2 - sqrt(f1 f3)) / (1 + f3))
/// for every k in [0, h C sqrt|rho|].
[[nodiscard]] BoundResult bound_negative(const StabilityConstants& c);

/// Step bound for a field whose covariant derivative has a kernel spanned by X:
/// inf over |X| in [x_norm_min, x_norm_max] of arccoth((1 + n^2 |rho| sigma^2) / (2 alpha n sqrt|rho|)) / (n sqrt|rho|).
[[nodiscard]] BoundResult bound_singular(const StabilityConstants& c, double x_norm_min, double x_norm_max);

/// h_max = 2 alpha.
[[nodiscard]] BoundResult euclidean_bound(double alpha);

/// Picks the solver matching the sign of rho and whether nabla X is singular.
[[nodiscard]] BoundResult bound_for(const StabilityConstants& c);

/// Single-point form of the singular bound.
[[nodiscard]] double singular_point_bound(double alpha, double sigma, double x_norm, double rho);

/// Minimum of alpha k coth k - mu (f2 - sqrt(f1 f3)) / (1 + f3) over k in [0, kmax],
/// from an n_grid-point scan refined by golden-section search.
[[nodiscard]] double negative_rhs_minimum(double alpha, double mu, double kmax, int n_grid = 2000);

}  // namespace geostab
