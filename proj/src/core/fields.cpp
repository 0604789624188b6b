#include "core/fields.hpp"

#include <cmath>
#include <utility>

#include "core/errors.hpp"

namespace geostab {

Field::Field(Manifold manifold, std::string name, ComponentFn components, JacobianFn jacobian)
    : manifold_(std::move(manifold)),
      name_(std::move(name)),
      components_(std::move(components)),
      jacobian_(std::move(jacobian)) {
  if (!components_ || !jacobian_) throw Error(ErrorCode::InvalidArgument, "field callbacks must be set");
}

TangentVector Field::value(const ChartPoint& p) const {
  manifold_.validate(p);
  Vec x = components_(p.coords);
  if (x.size() != manifold_.dim() || !x.allFinite()) {
    throw Error(ErrorCode::Domain, "field '" + name_ + "' is not finite at this point");
  }
  return {p, std::move(x)};
}

Mat Field::jacobian(const ChartPoint& p) const {
  manifold_.validate(p);
  Mat j = jacobian_(p.coords);
  if (j.rows() != manifold_.dim() || j.cols() != manifold_.dim() || !j.allFinite()) {
    throw Error(ErrorCode::Domain, "field '" + name_ + "' has no finite derivative at this point");
  }
  return j;
}

ConnectionMatrix Field::covariant_matrix(const ChartPoint& p) const {
  const Vec x = value(p).comps;
  Mat a = jacobian(p);
  const Christoffel gam = manifold_.christoffel(p);
  const int d = manifold_.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += gam[i](j, k) * x[k];
      a(i, j) += s;
    }
  }
  return {p, a};
}

TangentVector Field::directional_covariant(const TangentVector& v) const {
  const ConnectionMatrix a = covariant_matrix(v.base);
  return {v.base, a.entries * v.comps};
}

Mat finite_difference_jacobian(const ComponentFn& components, const Vec& x, double step) {
  const Vec f0 = components(x);
  Mat j(f0.size(), x.size());
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    Vec xp = x, xm = x;
    xp[c] += step;
    xm[c] -= step;
    j.col(c) = (components(xp) - components(xm)) / (2.0 * step);
  }
  return j;
}

Field s2_field(double eps) {
  auto comps = [eps](const Vec& c) {
    Vec x(2);
    x << eps * std::cos(c[0]), 1.0;
    return x;
  };
  auto jac = [eps](const Vec& c) {
    Mat j = Mat::Zero(2, 2);
    j(0, 0) = -eps * std::sin(c[0]);
    return j;
  };
  return Field(Manifold::sphere2(), "s2", comps, jac);
}

Field h2_field(double eps) {
  auto comps = [eps](const Vec&) {
    Vec x(2);
    x << 1.0, eps;
    return x;
  };
  auto jac = [](const Vec&) { return Mat(Mat::Zero(2, 2)); };
  return Field(Manifold::hyperbolic2(), "h2", comps, jac);
}

Field h2_singular_field() {
  auto comps = [](const Vec& c) {
    Vec x(2);
    x << 0.0, c[1];
    return x;
  };
  auto jac = [](const Vec&) {
    Mat j = Mat::Zero(2, 2);
    j(1, 1) = 1.0;
    return j;
  };
  return Field(Manifold::hyperbolic2(), "h2-singular", comps, jac);
}

Field s3_field(double eps) {
  auto comps = [eps](const Vec& c) {
    Vec x(3);
    x << -eps * std::sin(c[0]), 0.0, 1.0;
    return x;
  };
  auto jac = [eps](const Vec& c) {
    Mat j = Mat::Zero(3, 3);
    j(0, 0) = -eps * std::cos(c[0]);
    return j;
  };
  return Field(Manifold::sphere3(), "s3", comps, jac);
}

Field linear_field(const Mat& a, const Vec& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Error(ErrorCode::InvalidArgument, "linear field needs square A and matching b");
  }
  const int d = static_cast<int>(a.rows());
  auto comps = [a, b](const Vec& c) { return Vec(a * c + b); };
  auto jac = [a](const Vec&) { return a; };
  return Field(Manifold::euclidean(d), "linear", comps, jac);
}

Field generic_field(const Manifold& manifold, std::string name, ComponentFn components) {
  auto jac = [components](const Vec& c) { return finite_difference_jacobian(components, c); };
  return Field(manifold, std::move(name), components, jac);
}

}  // namespace geostab
