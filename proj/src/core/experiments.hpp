#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/examples.hpp"
#include "core/jacobi.hpp"

namespace geostab {

inline constexpr int kDefaultDirections2 = 512;
inline constexpr int kDefaultDirections3 = 2048;
inline constexpr double kDefaultTolH = 1e-12;

/// Worst direction found by a sweep.
struct SweepMaximum {
  double delta = 0.0;  ///< max over directions of |S(1)|^2 - |S(0)|^2
  Vec direction;       ///< frame coefficients of the maximizing unit direction
};

/// Direction sweep of the one-step norm change at p: uniform angles (d = 2) or a
/// Fibonacci sphere (d = 3), refined around the best candidate. n_dirs <= 0 picks the default.
[[nodiscard]] SweepMaximum direction_sweep(const GeeVariation& var, double h, int n_dirs);
[[nodiscard]] double direction_sweep_delta(const Field& field, const ChartPoint& p, double h, int n_dirs);

/// Value below which a swept maximum counts as non-expansive (absorbs rounding).
[[nodiscard]] double expansion_threshold(const GeeVariation& var, double h);

struct NumericalHmax {
  double h = 0.0;
  bool unconditional = false;  ///< no expansion detected up to h_hi
};

/// Smallest h in [h_lo, h_hi] at which the swept norm change turns positive,
/// located by a geometric scan and bisection to relative width tol_h. Returns
/// the last non-expansive h.
[[nodiscard]] NumericalHmax numerical_hmax(const Field& field, const ChartPoint& p, int n_dirs, double h_lo,
                                           double h_hi, double tol_h = kDefaultTolH);

/// Max over n_dirs directions of d(GEE(q+), GEE(q-)) / d(q+, q-) for the pair
/// q+- = exp_p(+-delta/2 e) centred on p.
[[nodiscard]] double finite_pair_ratio(const Field& field, const ChartPoint& p, double h, int n_dirs = 64,
                                       double delta = 1e-5);

struct SweepRow {
  Example example = Example::S2;
  double epsilon = 0.0;
  double base1 = 0.0;
  std::optional<double> base2;
  double h_numeric = 0.0;
  double h_theory = 0.0;
  double kappa_at_h = 0.0;
  Binding binding = Binding::Flat;
  bool numeric_unconditional = false;
};

struct SweepConfig {
  Example example = Example::S2;
  std::vector<double> epsilons;
  std::vector<double> base_grid;
  std::vector<double> base2_grid;  ///< S3 only (theta0); empty elsewhere
  int n_dirs = 0;                  ///< 0: per-dimension default
  double tol_h = kDefaultTolH;
  double h_hi = 1e3;
  int threads = 0;                 ///< 0: GEOSTAB_THREADS or hardware concurrency
};

/// Constants for one sweep row: closed forms where known, numerics otherwise.
/// Both are computed and must agree to 1e-8 relative (ErrorCode::Internal otherwise).
[[nodiscard]] StabilityConstants row_constants(Example e, double epsilon, const ChartPoint& p);

/// One row per (epsilon, base point) in grid order.
[[nodiscard]] std::vector<SweepRow> figure_sweep(const SweepConfig& config);
[[nodiscard]] SweepRow sweep_row(Example e, double epsilon, double base1, std::optional<double> base2, int n_dirs,
                                 double tol_h, double h_hi);

/// Worker count: GEOSTAB_THREADS if set to a positive integer, else hardware concurrency.
[[nodiscard]] int sweep_threads(int requested = 0);

/// Index of the first row with h_theory > h_numeric + 1e-9, if any.
[[nodiscard]] std::optional<std::size_t> first_unsound_row(const std::vector<SweepRow>& rows);

struct ValidationReport {
  Example example = Example::S2;
  int n_cases = 0;
  double max_deviation = 0.0;
  [[nodiscard]] bool passed() const noexcept { return max_deviation <= 1e-6; }
};

/// Compares the closed-form |S(1)| with a central difference of
/// s -> exp_{y(s)}(h X) in the embedding (delta 1e-5) at random p, e, h <= 0.5.
[[nodiscard]] ValidationReport jacobi_validation(Example e, int n_cases, std::uint64_t seed);

}  // namespace geostab
