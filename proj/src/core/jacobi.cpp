#include "core/jacobi.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace geostab {

namespace {

// Below this argument the series are exact to rounding (next term ~ x^10 / 4e7).
constexpr double kSeriesCutoff = 1e-2;
// Above this kappa the negative-curvature Jacobi terms use the e^{+-kappa} split.
constexpr double kSplitCutoff = 1.0;

/// 1 - sin(x)/x
double one_minus_sinc(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    const double x2 = x * x;
    return x2 * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 5040.0 - x2 / 362880.0)));
  }
  return 1.0 - std::sin(x) / x;
}

/// sinh(x)/x - 1
double sinhc_minus_one(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    const double x2 = x * x;
    return x2 * (1.0 / 6.0 + x2 * (1.0 / 120.0 + x2 * (1.0 / 5040.0 + x2 / 362880.0)));
  }
  return std::sinh(x) / x - 1.0;
}

double sinc(double x) { return 1.0 - one_minus_sinc(x); }
double sinhc(double x) { return 1.0 + sinhc_minus_one(x); }

}  // namespace

CurvatureSign sign_of(double rho) noexcept {
  if (rho > 0.0) return CurvatureSign::Positive;
  if (rho < 0.0) return CurvatureSign::Negative;
  return CurvatureSign::Zero;
}

double ck(double kappa, double t, CurvatureSign sign) {
  switch (sign) {
    case CurvatureSign::Positive: return std::cos(kappa * t);
    case CurvatureSign::Negative: return std::cosh(kappa * t);
    case CurvatureSign::Zero: return 1.0;
  }
  return 1.0;
}

double sk(double kappa, double t, CurvatureSign sign) {
  switch (sign) {
    case CurvatureSign::Positive: return t * sinc(kappa * t);
    case CurvatureSign::Negative: return t * sinhc(kappa * t);
    case CurvatureSign::Zero: return t;
  }
  return t;
}

FValues f_functions(double kappa, CurvatureSign sign) {
  switch (sign) {
    case CurvatureSign::Positive: {
      const double s = std::sin(kappa);
      // 1 - cos k sin k / k = 1 - sinc(2k);  1 - sinc^2 k = (1 - sinc k)(1 + sinc k)
      return {s * s, one_minus_sinc(2.0 * kappa), one_minus_sinc(kappa) * (1.0 + sinc(kappa))};
    }
    case CurvatureSign::Negative: {
      const double s = std::sinh(kappa);
      return {s * s, sinhc_minus_one(2.0 * kappa), sinhc_minus_one(kappa) * (sinhc(kappa) + 1.0)};
    }
    case CurvatureSign::Zero: return {};
  }
  return {};
}

double curvature_penalty(double kappa, CurvatureSign sign) {
  switch (sign) {
    case CurvatureSign::Zero: return 0.0;
    case CurvatureSign::Positive: {
      const FValues f = f_functions(kappa, sign);
      return f.f2 - std::abs(std::sin(kappa)) * std::sqrt(f.f3);
    }
    case CurvatureSign::Negative: {
      if (kappa <= kSplitCutoff) {
        const FValues f = f_functions(kappa, sign);
        return f.f2 - std::sinh(kappa) * std::sqrt(f.f3);
      }
      // sinh(k) e^{-k} / k + k / (1 + sqrt(1 - k^2/sinh^2 k)) - 1
      const double inv_shc = kappa / std::sinh(kappa);  // -> 0, never overflows to nan
      const double first = -std::expm1(-2.0 * kappa) / (2.0 * kappa);
      return first + kappa / (1.0 + std::sqrt(1.0 - inv_shc * inv_shc)) - 1.0;
    }
  }
  return 0.0;
}

double scaled_negative_penalty(double kappa) {
  const double shc = sinhc(kappa);
  if (!std::isfinite(shc)) return 0.0;
  return curvature_penalty(kappa, CurvatureSign::Negative) / (shc * shc);
}

double kappa_coth(double kappa) {
  const double k = std::abs(kappa);
  if (k < kSeriesCutoff) {
    const double k2 = k * k;
    return 1.0 + k2 / 3.0 - k2 * k2 / 45.0;
  }
  return k / std::tanh(k);
}

JacobiData jacobi_data(const Manifold& manifold, const TangentVector& v, const TangentVector& w,
                       const TangentVector& u) {
  const Frame frame = manifold.orthonormal_frame(u);
  const Mat g = manifold.metric(u.base);
  const int d = manifold.dim();
  JacobiData data{frame, Vec(d), Vec(d), 0.0, sign_of(manifold.rho()), Vec::Zero(d)};
  for (int i = 0; i < d; ++i) {
    data.a[i] = frame.vectors.col(i).dot(g * v.comps);
    data.b[i] = frame.vectors.col(i).dot(g * w.comps);
  }
  data.kappa = std::sqrt(std::abs(manifold.rho())) * manifold.norm(u);
  if (data.kappa > 0.0) data.rate = data.b / data.kappa;
  return data;
}

NormDifference norm_difference_bounded(const JacobiData& data) {
  constexpr double u = 0x1p-53;
  const Eigen::Index d = data.a.size();
  const double ae = data.a_error, be = data.b_error, re = data.rate_error;

  const double a1 = data.a[0], b1 = data.b[0];
  double total = b1 * b1 + 2.0 * a1 * b1;
  double magnitude = b1 * b1 + 2.0 * std::abs(a1 * b1);
  double propagated = 2.0 * std::abs(b1) * ae + 2.0 * std::abs(a1 + b1) * be + be * be;

  const double k = data.kappa;
  const bool split = data.sign == CurvatureSign::Negative && k > kSplitCutoff;
  const double c = ck(k, 1.0, data.sign);
  const double s = sk(k, 1.0, data.sign);
  const double f1 = f_functions(k, data.sign).f1;
  const double e = split ? std::exp(k) : 1.0;
  for (Eigen::Index i = 1; i < d; ++i) {
    const double a = data.a[i];
    if (split) {
      // a cosh k + r sinh k = (e^k (a + r) + e^{-k} (a - r)) / 2
      const double r = data.rate[i];
      const double plus = a + r;
      const double minus = a - r;
      double grow = 0.0, grow_slope = 0.0, grow_curv = 0.0;
      if (plus != 0.0) {
        const double ep = e * plus;
        grow = 0.25 * ep * ep;
        grow_slope = 0.5 * e * std::abs(ep);
      }
      if (ae + re > 0.0) grow_curv = 0.25 * (e * (ae + re)) * (e * (ae + re));
      const double decay = 0.25 * (minus / e) * (minus / e);
      const double half = 0.5 * (a * a + r * r);
      total += grow + decay - half;
      magnitude += grow + decay + half;
      const double decay_slope = 0.5 * std::abs(minus) / (e * e);
      propagated += (grow_slope + decay_slope + std::abs(a)) * ae + (grow_slope + decay_slope + std::abs(r)) * re +
                    grow_curv;
    } else {
      const double b = data.b[i];
      const double bs = b * s;
      const double j1 = a * c + bs;
      // (a c + b s)^2 - a^2 with the a^2 (c^2 - 1) part formed from f1.
      total += bs * (2.0 * a * c + bs) - as_int(data.sign) * a * a * f1;
      magnitude += std::abs(bs) * (2.0 * std::abs(a * c) + std::abs(bs)) + a * a * f1;
      propagated += 2.0 * std::abs(c * j1 - a) * ae + 2.0 * std::abs(s * j1) * be + (ae + be) * (ae + be);
    }
  }
  return {total, 4.0 * (propagated + 8.0 * static_cast<double>(d) * u * magnitude)};
}

double norm_difference(const JacobiData& data) { return norm_difference_bounded(data).value; }

double norm_diff(const Manifold& manifold, const TangentVector& v, const TangentVector& w,
                 const TangentVector& u) {
  if (manifold.norm(u) < 1e-14) throw Error(ErrorCode::DegenerateDirection, "geodesic direction u vanishes");
  const JacobiData data = jacobi_data(manifold, v, w, u);
  const FValues f = f_functions(data.kappa, data.sign);
  double sum = 0.0;
  for (Eigen::Index i = 1; i < data.a.size(); ++i) {
    const double a = data.a[i], b = data.b[i];
    sum += a * a * f.f1 + 2.0 * a * b * f.f2 + b * b * f.f3;
  }
  return manifold.inner(w, w) + 2.0 * manifold.inner(v, w) - as_int(data.sign) * sum;
}

TangentVector jacobi_eval(const JacobiData& data, const Frame& frame_at_t, double t) {
  const Eigen::Index d = data.a.size();
  Vec coeff(d);
  coeff[0] = data.a[0] + data.b[0] * t;
  const double c = ck(data.kappa, t, data.sign);
  const double s = sk(data.kappa, t, data.sign);
  for (Eigen::Index i = 1; i < d; ++i) coeff[i] = data.a[i] * c + data.b[i] * s;
  return {frame_at_t.base, frame_at_t.vectors * coeff};
}

GeeVariation::GeeVariation(const Field& field, const ChartPoint& p) {
  const Manifold& m = field.manifold();
  const TangentVector x = field.value(p);
  field_norm_ = m.norm(x);
  if (!(field_norm_ >= 1e-14)) {
    throw Error(ErrorCode::StationaryPoint, "the vector field vanishes at the base point");
  }
  frame_ = m.orthonormal_frame(x);
  gram_ = m.metric(p);
  const Mat a = field.covariant_matrix(p).entries;
  // <nabla_{e_j} X, e_i>_g
  operator_ = frame_.vectors.transpose() * gram_ * (a * frame_.vectors);
  // Entries of the product carry errors up to a few ulps of the largest term.
  const double scale = (frame_.vectors.cwiseAbs().transpose() * gram_.cwiseAbs() *
                        (a.cwiseAbs() * frame_.vectors.cwiseAbs()))
                           .maxCoeff();
  beta_error_ = 8.0 * 0x1p-53 * static_cast<double>(a.rows() + 2) * static_cast<double>(a.rows()) * scale;
  sign_ = sign_of(m.rho());
  curvature_speed_ = field_norm_ * std::sqrt(std::abs(m.rho()));
}

Vec GeeVariation::coefficients(const TangentVector& v) const {
  return frame_.vectors.transpose() * (gram_ * v.comps);
}

JacobiData GeeVariation::data(const Vec& xi, double h) const {
  const Vec beta = operator_ * xi;
  JacobiData d{frame_, xi, h * beta, kappa(h), sign_, Vec::Zero(xi.size())};
  const double xi_norm = xi.cwiseAbs().maxCoeff();
  const double beta_error = beta_error_ * xi_norm;
  d.a_error = 4.0 * 0x1p-53 * xi_norm;
  d.b_error = h * beta_error;
  if (curvature_speed_ > 0.0) {
    d.rate = beta / curvature_speed_;
    d.rate_error = beta_error / curvature_speed_;
  }
  return d;
}

double GeeVariation::delta(const Vec& xi, double h) const { return norm_difference(data(xi, h)); }

JacobiData gee_jacobi_data(const Field& field, const ChartPoint& p, const TangentVector& e, double h) {
  const GeeVariation var(field, p);
  return var.data(var.coefficients(e), h);
}

}  // namespace geostab
