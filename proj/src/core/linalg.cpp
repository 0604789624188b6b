#include "core/linalg.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace geostab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::ChartExit: return "chart exit";
    case ErrorCode::DegenerateDirection: return "degenerate direction";
    case ErrorCode::StationaryPoint: return "stationary point";
    case ErrorCode::NoFiniteAlpha: return "no finite cocoercivity constant";
    case ErrorCode::SingularOperator: return "singular operator";
    case ErrorCode::Unsupported: return "unsupported case";
    case ErrorCode::NotCocoercive: return "not cocoercive";
    case ErrorCode::NoBound: return "no step-size bound";
    case ErrorCode::InconsistentConstants: return "inconsistent constants";
    case ErrorCode::NonConvergence: return "no convergence";
    case ErrorCode::Bracket: return "bad bracket";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown error";
}

namespace {

bool is_diagonal(const Mat& g) {
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      if (i != j && g(i, j) != 0.0) return false;
    }
  }
  return true;
}

}  // namespace

SpdRoot spd_sqrt(const Mat& g) {
  if (g.rows() != g.cols() || g.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "metric must be a non-empty square matrix");
  }
  if (!g.allFinite() || (g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * g.cwiseAbs().maxCoeff()) {
    throw Error(ErrorCode::InvalidArgument, "metric is not symmetric");
  }
  const Eigen::Index d = g.rows();
  SpdRoot root{Mat::Zero(d, d), Mat::Zero(d, d)};
  // Diagonal metrics (every built-in chart) keep entry-wise exactness.
  if (is_diagonal(g)) {
    for (Eigen::Index i = 0; i < d; ++i) {
      if (!(g(i, i) > 0.0)) throw Error(ErrorCode::InvalidArgument, "metric is not positive definite");
      const double s = std::sqrt(g(i, i));
      root.half(i, i) = s;
      root.inv_half(i, i) = 1.0 / s;
    }
    return root;
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(g);
  const Vec w = eig.eigenvalues();
  if (!(w.minCoeff() > 0.0)) throw Error(ErrorCode::InvalidArgument, "metric is not positive definite");
  const Mat& q = eig.eigenvectors();
  root.half = q * w.cwiseSqrt().asDiagonal() * q.transpose();
  root.inv_half = q * w.cwiseSqrt().cwiseInverse().asDiagonal() * q.transpose();
  return root;
}

double sym_lambda_max(const Mat& m) {
  const Mat s = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(s, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

Mat to_orthonormal(const Mat& a, const SpdRoot& root) {
  const Eigen::Index d = a.rows();
  Mat b(d, d);
  bool diag = true;
  for (Eigen::Index i = 0; i < d && diag; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (i != j && root.half(i, j) != 0.0) { diag = false; break; }
  if (diag) {
    // s_i / s_i == 1 exactly, so diagonal entries of A survive unchanged.
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        b(i, j) = (i == j) ? a(i, j) : a(i, j) * (root.half(i, i) / root.half(j, j));
    return b;
  }
  return root.half * a * root.inv_half;
}

}  // namespace geostab
