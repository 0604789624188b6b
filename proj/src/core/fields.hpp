#pragma once

#include <functional>
#include <string>

#include "core/manifolds.hpp"

namespace geostab {

/// Matrix of the (1,1)-tensor nabla X at a point: entries(i, j) = (nabla X)^i_j.
struct ConnectionMatrix {
  ChartPoint base;
  Mat entries;
};

using ComponentFn = std::function<Vec(const Vec&)>;
using JacobianFn = std::function<Mat(const Vec&)>;

/// A vector field on one of the model manifolds.
///
/// Built-in fields carry analytic partial derivatives; generic fields fall back
/// to central differences with step 1e-6.
class Field {
 public:
  Field(Manifold manifold, std::string name, ComponentFn components, JacobianFn jacobian);

  [[nodiscard]] const Manifold& manifold() const noexcept { return manifold_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

  [[nodiscard]] TangentVector value(const ChartPoint& p) const;
  /// Coordinate partials d_j X^i.
  [[nodiscard]] Mat jacobian(const ChartPoint& p) const;
  /// (nabla X)^i_j = d_j X^i + Gamma^i_{jk} X^k.
  [[nodiscard]] ConnectionMatrix covariant_matrix(const ChartPoint& p) const;
  /// nabla_v X as a tangent vector at v.base.
  [[nodiscard]] TangentVector directional_covariant(const TangentVector& v) const;

 private:
  Manifold manifold_;
  std::string name_;
  ComponentFn components_;
  JacobianFn jacobian_;
};

inline constexpr double kFiniteDifferenceStep = 1e-6;

/// X = eps cos(phi) d_phi + d_theta on S2.
[[nodiscard]] Field s2_field(double eps);
/// X = d_x + eps d_y on the half-plane.
[[nodiscard]] Field h2_field(double eps);
/// X = y d_y on the half-plane; nabla X has a one-dimensional kernel spanned by X.
[[nodiscard]] Field h2_singular_field();
/// X = -eps sin(psi) d_psi + d_phi on S3.
[[nodiscard]] Field s3_field(double eps);
/// X(p) = A p + b on R^d.
[[nodiscard]] Field linear_field(const Mat& a, const Vec& b);
/// Field from user components; the Jacobian is taken by central differences.
[[nodiscard]] Field generic_field(const Manifold& manifold, std::string name, ComponentFn components);

/// Central-difference Jacobian of `components` at `x`.
[[nodiscard]] Mat finite_difference_jacobian(const ComponentFn& components, const Vec& x,
                                             double step = kFiniteDifferenceStep);

}  // namespace geostab
