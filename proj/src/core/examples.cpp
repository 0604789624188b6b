#include "core/examples.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace geostab {

const char* to_string(Example e) noexcept {
  switch (e) {
    case Example::S2: return "s2";
    case Example::H2: return "h2";
    case Example::H2Singular: return "h2-singular";
    case Example::S3: return "s3";
    case Example::Euclid: return "euclid";
  }
  return "?";
}

std::optional<Example> parse_example(std::string_view name) noexcept {
  for (Example e : {Example::S2, Example::H2, Example::H2Singular, Example::S3, Example::Euclid}) {
    if (name == to_string(e)) return e;
  }
  return std::nullopt;
}

Field example_field(Example e, double param) {
  switch (e) {
    case Example::S2: return s2_field(param);
    case Example::H2: return h2_field(param);
    case Example::H2Singular: return h2_singular_field();
    case Example::S3: return s3_field(param);
    case Example::Euclid: {
      if (!(param > 0.0)) throw Error(ErrorCode::InvalidArgument, "euclid example needs alpha > 0");
      return linear_field(Mat(-Mat::Identity(2, 2) / param), Vec::Zero(2));
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown example");
}

ChartPoint example_point(Example e, double base1, double base2) {
  switch (e) {
    case Example::S2: return Manifold::sphere2().point({base1, 0.0});
    case Example::H2:
    case Example::H2Singular: return Manifold::hyperbolic2().point({0.0, base1});
    case Example::S3: return Manifold::sphere3().point({base1, base2, 0.0});
    case Example::Euclid: return Manifold::euclidean(2).point({base1, 0.0});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown example");
}

AnalyticConstants analytic_constants(Example e, double eps, const ChartPoint& p) {
  AnalyticConstants a;
  const double e2 = eps * eps;
  const double r = std::sqrt(1.0 + e2);
  switch (e) {
    case Example::S2: {
      const double phi = p.coords[0];
      const double alpha = eps / ((1.0 + e2) * std::sin(phi));
      a.alpha = alpha;
      a.mu_plus = (1.0 + r / (2.0 * eps * (1.0 + e2 + eps * r))) * alpha;
      a.C = r * std::cos(phi);
      a.log_norm = -eps * std::sin(phi);
      break;
    }
    case Example::H2: {
      const double y = p.coords[1];
      const double alpha = eps * y / (1.0 + e2);
      a.alpha = alpha;
      a.mu_minus = (r / (2.0 * eps) + 0.5) * alpha;
      a.sigma = y / r;
      a.C = r / y;
      a.log_norm = -eps / y;
      break;
    }
    case Example::H2Singular:
      a.alpha = 1.0;
      a.sigma = 1.0;
      a.C = 1.0;
      a.log_norm = 0.0;
      break;
    case Example::S3: {
      const double psi = p.coords[0];
      const double theta = p.coords[1];
      const double cp = std::cos(psi), ct = std::cos(theta), st = std::sin(theta);
      a.alpha = eps * cp / (cp * cp * (e2 + st * st) + ct * ct);
      a.C = std::sin(psi) * std::sqrt(e2 + st * st);
      a.log_norm = -eps * cp;
      break;
    }
    case Example::Euclid:
      a.alpha = eps;
      a.log_norm = -1.0 / eps;
      a.C = p.coords.norm() / eps;
      break;
  }
  return a;
}

}  // namespace geostab
