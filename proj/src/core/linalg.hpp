#pragma once

#include <Eigen/Dense>

namespace geostab {

// Charts have d <= 3 and ambient spaces have dimension <= 4, so every vector
// and matrix lives on the stack.
inline constexpr int kMaxDim = 4;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Square root of a symmetric positive-definite matrix (and its inverse).
struct SpdRoot {
  Mat half;
  Mat inv_half;
};

/// Throws ErrorCode::InvalidArgument if g is not symmetric positive definite.
[[nodiscard]] SpdRoot spd_sqrt(const Mat& g);

/// Largest eigenvalue of (M + M^T) / 2.
[[nodiscard]] double sym_lambda_max(const Mat& m);

/// g^{1/2} A g^{-1/2}: the operator A written in a g-orthonormal basis.
[[nodiscard]] Mat to_orthonormal(const Mat& a, const SpdRoot& root);

}  // namespace geostab
