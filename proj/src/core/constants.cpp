#include "core/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace geostab {

namespace {

struct Decomposition {
  Mat b;  // A in a g-orthonormal basis
  Eigen::JacobiSVD<Mat> svd;
  int rank = 0;
};

Decomposition decompose(const Mat& a, const Mat& g) {
  if (a.rows() != g.rows() || a.cols() != g.cols()) {
    throw Error(ErrorCode::InvalidArgument, "operator and metric sizes differ");
  }
  if (!a.allFinite()) throw Error(ErrorCode::InvalidArgument, "operator has non-finite entries");
  const SpdRoot root = spd_sqrt(g);
  Decomposition d{to_orthonormal(a, root), {}, 0};
  d.svd.compute(d.b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec s = d.svd.singularValues();
  const double smax = s.size() > 0 ? s[0] : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (smax > 0.0 && s[i] >= kRankThreshold * smax) ++d.rank;
  }
  return d;
}

Vec orthonormal_direction(const Mat& g, const Vec& x) {
  if (x.size() != g.rows()) throw Error(ErrorCode::InvalidArgument, "field vector has the wrong size");
  const Vec xh = spd_sqrt(g).half * x;
  const double n = xh.norm();
  if (!(n >= 1e-14)) throw Error(ErrorCode::StationaryPoint, "the vector field vanishes at this point");
  return xh / n;
}

Mat inverse_of(const Decomposition& d) {
  const Eigen::Index n = d.b.rows();
  if (d.rank < n) {
    throw Error(ErrorCode::SingularOperator,
                "nabla X is singular; use the range-restricted constants and the singular bound");
  }
  const Vec s = d.svd.singularValues();
  return d.svd.matrixV() * s.cwiseInverse().asDiagonal() * d.svd.matrixU().transpose();
}

double projected_mu(const Mat& a, const Mat& g, const Vec& x, bool complement) {
  const Decomposition d = decompose(a, g);
  const Mat inv = inverse_of(d);
  const Vec xh = orthonormal_direction(g, x);
  Mat p = xh * xh.transpose();
  if (complement) p = Mat::Identity(p.rows(), p.cols()) - p;
  return sym_lambda_max(-(p * inv));
}

std::string describe(const ChartPoint& p) {
  std::string s = "(";
  char buf[32];
  for (Eigen::Index i = 0; i < p.coords.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? ", " : "", p.coords[i]);
    s += buf;
  }
  return s + ")";
}

}  // namespace

double log_g_norm(const Mat& a, const Mat& g) { return sym_lambda_max(to_orthonormal(a, spd_sqrt(g))); }

bool is_singular(const Mat& a, const Mat& g) {
  const Decomposition d = decompose(a, g);
  return d.rank < d.b.rows();
}

double alpha_point(const Mat& a, const Mat& g) {
  const Decomposition d = decompose(a, g);
  if (d.rank == 0) return kInfinity;
  // Reduced SVD B = U_r S_r V_r^T; alpha = -lambda_max(sym(S_r^{-1} V_r^T U_r)).
  const Eigen::Index r = d.rank;
  const Mat u = d.svd.matrixU().leftCols(r);
  const Mat v = d.svd.matrixV().leftCols(r);
  const Vec s = d.svd.singularValues().head(r);
  if (r < d.b.rows()) {
    // The cross term <B v_r, v_k> vanishes only if range(B) = range(B^T).
    const double mismatch = (u * (u.transpose() * v) - v).cwiseAbs().maxCoeff();
    if (mismatch > 1e-9) {
      throw Error(ErrorCode::NoFiniteAlpha,
                  "range of nabla X differs from the range of its adjoint; no finite alpha exists");
    }
  }
  const Mat m = s.cwiseInverse().asDiagonal() * (v.transpose() * u);
  return -sym_lambda_max(m);
}

double mu_plus_point(const Mat& a, const Mat& g, const Vec& x) { return projected_mu(a, g, x, true); }

double mu_minus_point(const Mat& a, const Mat& g, const Vec& x) { return projected_mu(a, g, x, false); }

double sigma_point(const Mat& a, const Mat& g, bool restrict_to_range, const Vec& x) {
  const Decomposition d = decompose(a, g);
  const Eigen::Index n = d.b.rows();
  const Vec s = d.svd.singularValues();
  if (d.rank == n) return 1.0 / s[n - 1];
  if (!restrict_to_range) {
    throw Error(ErrorCode::SingularOperator, "nabla X is singular; sigma needs the range-restricted mode");
  }
  if (n - d.rank > 1) {
    throw Error(ErrorCode::Unsupported, "kernel of nabla X has dimension greater than one");
  }
  if (d.rank == 0) throw Error(ErrorCode::Unsupported, "nabla X vanishes");
  const Vec kernel = d.svd.matrixV().col(n - 1);
  const Vec xh = orthonormal_direction(g, x);
  if (std::abs(kernel.dot(xh)) < 1.0 - 1e-8) {
    throw Error(ErrorCode::Unsupported, "kernel of nabla X is not spanned by X");
  }
  return 1.0 / s[d.rank - 1];
}

StabilityConstants point_constants(const Field& field, const ChartPoint& p) {
  return region_constants(field, std::span<const ChartPoint>(&p, 1));
}

StabilityConstants region_constants(const Field& field, std::span<const ChartPoint> samples) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "region has no sample points");
  const Manifold& m = field.manifold();

  struct PointData {
    Mat a, g;
    Vec x;
    double alpha;
    bool singular;
  };
  std::vector<PointData> data;
  data.reserve(samples.size());
  std::string offending;
  int n_bad = 0;
  bool any_singular = false;
  for (const ChartPoint& p : samples) {
    PointData d{field.covariant_matrix(p).entries, m.metric(p), field.value(p).comps, 0.0, false};
    d.alpha = alpha_point(d.a, d.g);
    d.singular = is_singular(d.a, d.g);
    any_singular = any_singular || d.singular;
    if (!(d.alpha > 0.0)) {
      if (n_bad < 8) offending += (n_bad ? " " : "") + describe(p);
      ++n_bad;
    }
    data.push_back(std::move(d));
  }
  if (n_bad > 0) {
    throw Error(ErrorCode::NotCocoercive, "alpha_p <= 0 at " + std::to_string(n_bad) +
                                              " sample point(s): " + offending + (n_bad > 8 ? " ..." : ""));
  }

  StabilityConstants c;
  c.rho = m.rho();
  c.singular = any_singular;
  c.alpha = kInfinity;
  c.mu_plus = any_singular ? std::nan("") : -kInfinity;
  c.mu_minus = c.mu_plus;
  c.sigma = 0.0;
  c.C = 0.0;
  c.x_norm_min = kInfinity;
  for (const PointData& d : data) {
    const double xn = std::sqrt(d.x.dot(d.g * d.x));
    c.alpha = std::min(c.alpha, d.alpha);
    c.C = std::max(c.C, xn);
    c.x_norm_min = std::min(c.x_norm_min, xn);
    if (!any_singular) {
      c.mu_plus = std::max(c.mu_plus, mu_plus_point(d.a, d.g, d.x));
      c.mu_minus = std::max(c.mu_minus, mu_minus_point(d.a, d.g, d.x));
      c.sigma = std::max(c.sigma, sigma_point(d.a, d.g, false));
    } else {
      c.sigma = std::max(c.sigma, sigma_point(d.a, d.g, true, d.x));
    }
  }
  return c;
}

}  // namespace geostab
