#include "core/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

#include "core/errors.hpp"
#include "core/integrators.hpp"

namespace geostab {

namespace {

constexpr int kRefineRounds = 8;
constexpr int kScanPoints = 400;

struct Candidate {
  double objective = -kInfinity;
  double value = -kInfinity;
  Vec xi;
};

/// Evaluates every direction and keeps the best objective; value is tracked separately.
class SweepState {
 public:
  SweepState(const GeeVariation& var, double h, bool use_excess) : var_(var), h_(h), use_excess_(use_excess) {}

  void visit(const Vec& xi) {
    const NormDifference nd = norm_difference_bounded(var_.data(xi, h_));
    const double obj = use_excess_ ? nd.value - nd.error : nd.value;
    if (nd.value > max_value_) max_value_ = nd.value;
    if (obj > best_.objective || best_.xi.size() == 0) best_ = {obj, nd.value, xi};
  }

  [[nodiscard]] const Candidate& best() const { return best_; }
  [[nodiscard]] double max_value() const { return max_value_; }

 private:
  const GeeVariation& var_;
  double h_;
  bool use_excess_;
  Candidate best_;
  double max_value_ = -kInfinity;
};

Vec fibonacci_direction(int i, int n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * i + 1.0) / n;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden * i;
  Vec v(3);
  v << r * std::cos(phi), r * std::sin(phi), z;
  return v;
}

void sweep_circle(SweepState& st, int n) {
  const double two_pi = 2.0 * std::numbers::pi;
  Vec xi(2);
  for (int i = 0; i < n; ++i) {
    const double w = two_pi * i / n;
    xi << std::cos(w), std::sin(w);
    st.visit(xi);
  }
  double step = two_pi / n;
  for (int round = 0; round < kRefineRounds; ++round) {
    const Vec centre = st.best().xi;
    const double w0 = std::atan2(centre[1], centre[0]);
    step /= 8.0;
    for (int j = -8; j <= 8; ++j) {
      if (j == 0) continue;
      xi << std::cos(w0 + j * step), std::sin(w0 + j * step);
      st.visit(xi);
    }
  }
}

void sweep_sphere(SweepState& st, int n) {
  for (int i = 0; i < n; ++i) st.visit(fibonacci_direction(i, n));
  double spacing = std::sqrt(4.0 * std::numbers::pi / n);
  for (int round = 0; round < 2 * kRefineRounds; ++round) {
    const Vec centre = st.best().xi;
    // Orthonormal basis of the tangent plane at the centre.
    Vec t1 = Vec::Zero(3);
    int axis = 0;
    centre.cwiseAbs().minCoeff(&axis);
    t1[axis] = 1.0;
    t1 -= t1.dot(centre) * centre;
    t1.normalize();
    Vec t2(3);
    t2 << centre[1] * t1[2] - centre[2] * t1[1], centre[2] * t1[0] - centre[0] * t1[2],
        centre[0] * t1[1] - centre[1] * t1[0];
    spacing /= 2.0;
    for (int a = -2; a <= 2; ++a) {
      for (int b = -2; b <= 2; ++b) {
        if (a == 0 && b == 0) continue;
        const Vec v = centre + spacing * (a * t1 + b * t2);
        st.visit(v / v.norm());
      }
    }
  }
}

void sweep_random(SweepState& st, int dim, int n) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Vec xi(dim);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < dim; ++k) xi[k] = normal(rng);
    const double len = xi.norm();
    if (len > 0.0) st.visit(xi / len);
  }
}

SweepState run_sweep(const GeeVariation& var, double h, int n_dirs, bool use_excess) {
  if (n_dirs <= 0) n_dirs = var.frame().vectors.cols() >= 3 ? kDefaultDirections3 : kDefaultDirections2;
  if (n_dirs < 8) throw Error(ErrorCode::InvalidArgument, "direction sweep needs at least 8 directions");
  SweepState st(var, h, use_excess);
  const auto dim = static_cast<int>(var.frame().vectors.cols());
  switch (dim) {
    case 1: {
      Vec xi(1);
      xi << 1.0;
      st.visit(xi);
      break;
    }
    case 2: sweep_circle(st, n_dirs); break;
    case 3: sweep_sphere(st, n_dirs); break;
    default: sweep_random(st, dim, n_dirs); break;
  }
  return st;
}

int default_directions(const Field& field) {
  return field.manifold().dim() >= 3 ? kDefaultDirections3 : kDefaultDirections2;
}

bool expands(const GeeVariation& var, double h, int n_dirs) {
  return run_sweep(var, h, n_dirs, true).best().objective > 0.0;
}

double relative_gap(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

void cross_check(const char* what, std::optional<double> analytic, double numeric) {
  if (!analytic) return;
  const double tol = 1e-8;
  const bool ok = (std::isinf(*analytic) && *analytic == numeric) ||
                  relative_gap(*analytic, numeric) <= tol ||
                  (std::abs(*analytic) < 1e-12 && std::abs(numeric) < 1e-12);
  if (!ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: closed form %.17g disagrees with numeric %.17g", what, *analytic, numeric);
    throw Error(ErrorCode::Internal, buf);
  }
}

}  // namespace

SweepMaximum direction_sweep(const GeeVariation& var, double h, int n_dirs) {
  const SweepState st = run_sweep(var, h, n_dirs, false);
  return {st.max_value(), st.best().xi};
}

double direction_sweep_delta(const Field& field, const ChartPoint& p, double h, int n_dirs) {
  const GeeVariation var(field, p);
  return direction_sweep(var, h, n_dirs).delta;
}

double expansion_threshold(const GeeVariation& var, double h) {
  // Largest rounding-error bound among the coordinate directions.
  const auto dim = var.frame().vectors.cols();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    worst = std::max(worst, norm_difference_bounded(var.data(Vec::Unit(dim, i), h)).error);
  }
  return worst;
}

NumericalHmax numerical_hmax(const Field& field, const ChartPoint& p, int n_dirs, double h_lo, double h_hi,
                             double tol_h) {
  if (!(h_lo > 0.0) || !(h_hi > h_lo) || !std::isfinite(h_hi) || !(tol_h > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need 0 < h_lo < h_hi < inf and tol_h > 0");
  }
  if (n_dirs <= 0) n_dirs = default_directions(field);
  const GeeVariation var(field, p);
  if (expands(var, h_lo, n_dirs)) {
    throw Error(ErrorCode::Bracket, "the step is already expansive at h_lo");
  }
  // Geometric scan for the first expansive step, then bisection inside that cell.
  const double ratio = std::pow(h_hi / h_lo, 1.0 / kScanPoints);
  double lo = h_lo;
  double hi = 0.0;
  for (int i = 1; i <= kScanPoints; ++i) {
    const double h = i == kScanPoints ? h_hi : h_lo * std::pow(ratio, i);
    if (expands(var, h, n_dirs)) {
      hi = h;
      break;
    }
    lo = h;
  }
  if (hi == 0.0) return {h_hi, true};
  while (hi - lo > tol_h * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (expands(var, mid, n_dirs) ? hi : lo) = mid;
  }
  return {lo, false};
}

double finite_pair_ratio(const Field& field, const ChartPoint& p, double h, int n_dirs, double delta) {
  if (n_dirs < 1 || !(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "bad finite-pair settings");
  const Manifold& m = field.manifold();
  const GeeVariation var(field, p);
  const Mat& frame = var.frame().vectors;
  const auto dim = static_cast<int>(frame.cols());
  double worst = 0.0;
  for (int i = 0; i < n_dirs; ++i) {
    Vec xi(dim);
    if (dim == 1) {
      xi << 1.0;
    } else if (dim == 2) {
      const double w = std::numbers::pi * i / n_dirs;
      xi << std::cos(w), std::sin(w);
    } else if (dim == 3) {
      xi = fibonacci_direction(i, n_dirs);
    } else {
      xi = Vec::Unit(dim, i % dim);
    }
    const Vec e = frame * xi;
    const ChartPoint qp = m.exp_map({p, 0.5 * delta * e});
    const ChartPoint qm = m.exp_map({p, -0.5 * delta * e});
    worst = std::max(worst, expansivity_ratio(field, qp, qm, h, Method::GEE));
  }
  return worst;
}

StabilityConstants row_constants(Example e, double epsilon, const ChartPoint& p) {
  const Field field = example_field(e, epsilon);
  StabilityConstants c = point_constants(field, p);
  const AnalyticConstants a = analytic_constants(e, epsilon, p);
  cross_check("alpha", a.alpha, c.alpha);
  cross_check("C", a.C, c.C);
  cross_check("log g-norm", a.log_norm,
              log_g_norm(field.covariant_matrix(p).entries, field.manifold().metric(p)));
  if (!c.singular) {
    cross_check("mu_plus", a.mu_plus, c.mu_plus);
    cross_check("mu_minus", a.mu_minus, c.mu_minus);
  }
  cross_check("sigma", a.sigma, c.sigma);
  if (a.alpha) c.alpha = *a.alpha;
  if (a.C) c.C = *a.C, c.x_norm_min = *a.C;
  if (a.mu_plus && !c.singular) c.mu_plus = *a.mu_plus;
  if (a.mu_minus && !c.singular) c.mu_minus = *a.mu_minus;
  if (a.sigma) c.sigma = *a.sigma;
  return c;
}

SweepRow sweep_row(Example e, double epsilon, double base1, std::optional<double> base2, int n_dirs, double tol_h,
                   double h_hi) {
  const double b2 = base2.value_or(std::numbers::pi / 2.0);
  const ChartPoint p = example_point(e, base1, b2);
  const Field field = example_field(e, epsilon);
  const StabilityConstants c = row_constants(e, epsilon, p);
  const BoundResult bound = bound_for(c);

  SweepRow row{e, epsilon, base1, e == Example::S3 ? std::optional<double>(b2) : std::nullopt};
  row.h_theory = bound.h_max;
  row.kappa_at_h = bound.kappa_at_h;
  row.binding = bound.binding;

  double lo = 1e-3;
  double hi = h_hi;
  if (std::isfinite(bound.h_max)) {
    lo = 1e-3 * bound.h_max;
    hi = std::max(h_hi, 10.0 * bound.h_max);
  }
  const NumericalHmax num = numerical_hmax(field, p, n_dirs, lo, hi, tol_h);
  row.numeric_unconditional = num.unconditional;
  row.h_numeric = num.unconditional ? kInfinity : num.h;
  return row;
}

int sweep_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GEOSTAB_THREADS")) {
    int n = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, n);
    if (ec == std::errc() && ptr == end && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> figure_sweep(const SweepConfig& config) {
  if (config.epsilons.empty() || config.base_grid.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sweep needs at least one epsilon and one base point");
  }
  struct Task {
    double epsilon;
    double base1;
    std::optional<double> base2;
  };
  std::vector<Task> tasks;
  std::vector<std::optional<double>> second;
  if (config.base2_grid.empty()) {
    second.push_back(std::nullopt);
  } else {
    second.assign(config.base2_grid.begin(), config.base2_grid.end());
  }
  for (double eps : config.epsilons)
    for (const auto& b2 : second)
      for (double b1 : config.base_grid) tasks.push_back({eps, b1, b2});

  std::vector<SweepRow> rows(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        rows[i] = sweep_row(config.example, tasks[i].epsilon, tasks[i].base1, tasks[i].base2, config.n_dirs,
                            config.tol_h, config.h_hi);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::min<int>(sweep_threads(config.threads), static_cast<int>(tasks.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return rows;
}

std::optional<std::size_t> first_unsound_row(const std::vector<SweepRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].h_theory <= rows[i].h_numeric + 1e-9)) return i;
  }
  return std::nullopt;
}

ValidationReport jacobi_validation(Example e, int n_cases, std::uint64_t seed) {
  if (n_cases < 0) throw Error(ErrorCode::InvalidArgument, "number of cases must be >= 0");
  ValidationReport report{e, n_cases, 0.0};
  std::mt19937_64 rng(seed);
  const auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  std::normal_distribution<double> normal;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  constexpr double delta = 1e-5;

  for (int k = 0; k < n_cases; ++k) {
    const double eps = uniform(0.3, 2.0);
    ChartPoint p;
    switch (e) {
      case Example::S2: p = Manifold::sphere2().point({uniform(0.1, 1.4), uniform(0.0, two_pi)}); break;
      case Example::H2:
      case Example::H2Singular: p = Manifold::hyperbolic2().point({uniform(-2.0, 2.0), uniform(0.3, 3.0)}); break;
      case Example::S3:
        p = Manifold::sphere3().point({uniform(0.2, 2.9), uniform(0.2, 2.9), uniform(0.0, two_pi)});
        break;
      case Example::Euclid: p = Manifold::euclidean(2).point({uniform(0.5, 2.0), uniform(-1.0, 1.0)}); break;
    }
    const Field field = example_field(e, eps);
    const Manifold& m = field.manifold();
    const GeeVariation var(field, p);
    const auto dim = var.frame().vectors.cols();
    Vec xi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) xi[i] = normal(rng);
    xi /= xi.norm();
    const double h = uniform(0.01, 0.5);

    const JacobiData data = var.data(xi, h);
    Vec coeff(dim);
    coeff[0] = data.a[0] + data.b[0];
    const double c = ck(data.kappa, 1.0, data.sign);
    const double s = sk(data.kappa, 1.0, data.sign);
    for (Eigen::Index i = 1; i < dim; ++i) coeff[i] = data.a[i] * c + data.b[i] * s;
    const double closed = coeff.norm();

    const Vec dir = var.frame().vectors * xi;
    const Vec plus = m.embed(gee_step(field, m.exp_map({p, delta * dir}), h));
    const Vec minus = m.embed(gee_step(field, m.exp_map({p, -delta * dir}), h));
    const Vec deriv = (plus - minus) / (2.0 * delta);
    const double fd = std::sqrt(std::max(0.0, m.ambient_inner(deriv, deriv)));
    report.max_deviation = std::max(report.max_deviation, std::abs(closed - fd));
  }
  return report;
}

}  // namespace geostab
