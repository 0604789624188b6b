#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "core/fields.hpp"

namespace geostab {

/// The built-in test problems.
enum class Example { S2, H2, H2Singular, S3, Euclid };

[[nodiscard]] const char* to_string(Example e) noexcept;
/// Accepts "s2", "h2", "h2-singular", "s3", "euclid".
[[nodiscard]] std::optional<Example> parse_example(std::string_view name) noexcept;

/// Field for the example. `param` is epsilon for s2/h2/s3, alpha for euclid
/// (X(p) = -p / alpha on R^2) and ignored for h2-singular.
[[nodiscard]] Field example_field(Example e, double param);

/// Base point from the swept parameters: phi0 (s2), (x=0, y0) (h2), (psi0, theta0, 0) (s3),
/// (1, 0) scaled by base1 for euclid.
[[nodiscard]] ChartPoint example_point(Example e, double base1, double base2);

/// Closed-form pointwise constants where they are known.
struct AnalyticConstants {
  std::optional<double> alpha;
  std::optional<double> mu_plus;
  std::optional<double> mu_minus;
  std::optional<double> sigma;
  std::optional<double> C;
  std::optional<double> log_norm;
};

[[nodiscard]] AnalyticConstants analytic_constants(Example e, double param, const ChartPoint& p);

}  // namespace geostab
