#include "core/manifolds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/errors.hpp"

namespace geostab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Endpoints landing on a coordinate singularity are moved this far inside.
constexpr double kChartNudge = 1e-12;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double wrap_signed(double a) {
  double w = std::remainder(a, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

double clamp_open(double a, double lo, double hi) {
  if (a < lo + kChartNudge) return lo + kChartNudge;
  if (a > hi - kChartNudge) return hi - kChartNudge;
  return a;
}

std::string describe(const Vec& c) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
  os << ")";
  return os.str();
}

// sinh(x)/x and sin(x)/x, exact at 0.
double sinhc(double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; }
double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

const char* to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Sphere2: return "S2";
    case ModelKind::Hyperbolic2: return "H2";
    case ModelKind::Sphere3: return "S3";
    case ModelKind::Euclidean: return "R^d";
  }
  return "?";
}

Manifold Manifold::euclidean(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw Error(ErrorCode::InvalidArgument, "euclidean dimension must be in [1, 4]");
  }
  return Manifold(ModelKind::Euclidean, dim);
}

double Manifold::rho() const noexcept { return static_cast<double>(curvature_sign()); }

int Manifold::curvature_sign() const noexcept {
  switch (kind_) {
    case ModelKind::Sphere2:
    case ModelKind::Sphere3: return 1;
    case ModelKind::Hyperbolic2: return -1;
    case ModelKind::Euclidean: return 0;
  }
  return 0;
}

int Manifold::ambient_dim() const noexcept { return kind_ == ModelKind::Euclidean ? dim_ : dim_ + 1; }

bool Manifold::contains(const Vec& c) const noexcept {
  if (c.size() != dim_ || !c.allFinite()) return false;
  switch (kind_) {
    case ModelKind::Sphere2: return std::abs(c[0]) < kPi / 2 && std::cos(c[0]) > 0.0;
    case ModelKind::Hyperbolic2: return c[1] > 0.0;
    case ModelKind::Sphere3:
      return c[0] > 0.0 && c[0] < kPi && c[1] > 0.0 && c[1] < kPi && std::sin(c[0]) > 0.0 &&
             std::sin(c[1]) > 0.0;
    case ModelKind::Euclidean: return true;
  }
  return false;
}

void Manifold::validate(const ChartPoint& p) const {
  if (p.model != kind_) {
    throw Error(ErrorCode::InvalidArgument, std::string("point belongs to model ") + to_string(p.model) +
                                                ", expected " + to_string(kind_));
  }
  if (!contains(p.coords)) {
    throw Error(ErrorCode::Domain,
                std::string("point ") + describe(p.coords) + " outside the " + to_string(kind_) + " chart");
  }
}

ChartPoint Manifold::point(const Vec& coords) const {
  ChartPoint p{kind_, coords};
  if (coords.size() == dim_ && coords.allFinite()) {
    if (kind_ == ModelKind::Sphere2) p.coords[1] = wrap_angle(coords[1]);
    if (kind_ == ModelKind::Sphere3) p.coords[2] = wrap_angle(coords[2]);
  }
  validate(p);
  return p;
}

ChartPoint Manifold::point(std::initializer_list<double> coords) const {
  Vec c(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double x : coords) c[i++] = x;
  return point(c);
}

TangentVector Manifold::tangent(const ChartPoint& p, const Vec& comps) const {
  validate(p);
  if (comps.size() != dim_ || !comps.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "tangent components must be finite with length dim");
  }
  return {p, comps};
}

Mat Manifold::metric(const ChartPoint& p) const {
  validate(p);
  const Vec& c = p.coords;
  Mat g = Mat::Identity(dim_, dim_);
  switch (kind_) {
    case ModelKind::Sphere2: {
      const double cp = std::cos(c[0]);
      g(1, 1) = cp * cp;
      break;
    }
    case ModelKind::Hyperbolic2: {
      const double iy2 = 1.0 / (c[1] * c[1]);
      g(0, 0) = iy2;
      g(1, 1) = iy2;
      break;
    }
    case ModelKind::Sphere3: {
      const double sp = std::sin(c[0]);
      const double st = std::sin(c[1]);
      g(1, 1) = sp * sp;
      g(2, 2) = sp * sp * st * st;
      break;
    }
    case ModelKind::Euclidean: break;
  }
  return g;
}

Christoffel Manifold::christoffel(const ChartPoint& p) const {
  validate(p);
  Christoffel gam;
  for (int k = 0; k < dim_; ++k) gam[k] = Mat::Zero(dim_, dim_);
  const Vec& c = p.coords;
  switch (kind_) {
    case ModelKind::Sphere2: {
      const double sp = std::sin(c[0]);
      const double cp = std::cos(c[0]);
      gam[0](1, 1) = sp * cp;
      gam[1](0, 1) = gam[1](1, 0) = -sp / cp;
      break;
    }
    case ModelKind::Hyperbolic2: {
      const double iy = 1.0 / c[1];
      gam[0](0, 1) = gam[0](1, 0) = -iy;
      gam[1](0, 0) = iy;
      gam[1](1, 1) = -iy;
      break;
    }
    case ModelKind::Sphere3: {
      const double sp = std::sin(c[0]);
      const double cp = std::cos(c[0]);
      const double st = std::sin(c[1]);
      const double ct = std::cos(c[1]);
      gam[0](1, 1) = -sp * cp;
      gam[0](2, 2) = -sp * cp * st * st;
      gam[1](0, 1) = gam[1](1, 0) = cp / sp;
      gam[1](2, 2) = -st * ct;
      gam[2](0, 2) = gam[2](2, 0) = cp / sp;
      gam[2](1, 2) = gam[2](2, 1) = ct / st;
      break;
    }
    case ModelKind::Euclidean: break;
  }
  return gam;
}

double Manifold::inner(const TangentVector& a, const TangentVector& b) const {
  const Mat g = metric(a.base);
  return a.comps.dot(g * b.comps);
}

double Manifold::norm(const TangentVector& v) const { return std::sqrt(std::max(0.0, inner(v, v))); }

Vec Manifold::embed(const ChartPoint& p) const {
  validate(p);
  const Vec& c = p.coords;
  Vec x(ambient_dim());
  switch (kind_) {
    case ModelKind::Sphere2:
      x << std::cos(c[0]) * std::cos(c[1]), std::cos(c[0]) * std::sin(c[1]), std::sin(c[0]);
      break;
    case ModelKind::Hyperbolic2: {
      const double r2 = c[0] * c[0] + c[1] * c[1];
      x << (r2 + 1.0) / (2.0 * c[1]), c[0] / c[1], (r2 - 1.0) / (2.0 * c[1]);
      break;
    }
    case ModelKind::Sphere3: {
      const double sp = std::sin(c[0]);
      const double st = std::sin(c[1]);
      x << std::cos(c[0]), sp * std::cos(c[1]), sp * st * std::cos(c[2]), sp * st * std::sin(c[2]);
      break;
    }
    case ModelKind::Euclidean: x = c; break;
  }
  return x;
}

Mat Manifold::embedding_jacobian(const ChartPoint& p) const {
  validate(p);
  const Vec& c = p.coords;
  Mat j = Mat::Zero(ambient_dim(), dim_);
  switch (kind_) {
    case ModelKind::Sphere2: {
      const double sp = std::sin(c[0]), cp = std::cos(c[0]);
      const double st = std::sin(c[1]), ct = std::cos(c[1]);
      j.col(0) << -sp * ct, -sp * st, cp;
      j.col(1) << -cp * st, cp * ct, 0.0;
      break;
    }
    case ModelKind::Hyperbolic2: {
      const double x = c[0], y = c[1];
      const double y2 = y * y;
      j.col(0) << x / y, 1.0 / y, x / y;
      j.col(1) << (y2 - x * x - 1.0) / (2.0 * y2), -x / y2, (y2 - x * x + 1.0) / (2.0 * y2);
      break;
    }
    case ModelKind::Sphere3: {
      const double sps = std::sin(c[0]), cps = std::cos(c[0]);
      const double st = std::sin(c[1]), ct = std::cos(c[1]);
      const double sf = std::sin(c[2]), cf = std::cos(c[2]);
      j.col(0) << -sps, cps * ct, cps * st * cf, cps * st * sf;
      j.col(1) << 0.0, -sps * st, sps * ct * cf, sps * ct * sf;
      j.col(2) << 0.0, 0.0, -sps * st * sf, sps * st * cf;
      break;
    }
    case ModelKind::Euclidean: j = Mat::Identity(dim_, dim_); break;
  }
  return j;
}

Vec Manifold::push_forward(const TangentVector& v) const { return embedding_jacobian(v.base) * v.comps; }

double Manifold::ambient_inner(const Vec& a, const Vec& b) const {
  if (kind_ == ModelKind::Hyperbolic2) return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return a.dot(b);
}

TangentVector Manifold::pull_back(const ChartPoint& p, const Vec& ambient) const {
  const Mat j = embedding_jacobian(p);
  Vec rhs(dim_);
  for (int i = 0; i < dim_; ++i) rhs[i] = ambient_inner(j.col(i), ambient);
  const Mat g = metric(p);
  return {p, g.ldlt().solve(rhs)};
}

ChartPoint Manifold::from_ambient(const Vec& x) const {
  if (x.size() != ambient_dim() || !x.allFinite()) {
    throw Error(ErrorCode::ChartExit, "ambient point is not finite");
  }
  Vec c(dim_);
  switch (kind_) {
    case ModelKind::Sphere2:
      c[0] = clamp_open(std::atan2(x[2], std::hypot(x[0], x[1])), -kPi / 2, kPi / 2);
      c[1] = wrap_angle(std::atan2(x[1], x[0]));
      break;
    case ModelKind::Hyperbolic2: {
      const double u = x[0] - x[2];
      if (!(u > 0.0)) throw Error(ErrorCode::ChartExit, "hyperboloid point maps outside the half-plane");
      c[1] = 1.0 / u;
      c[0] = x[1] / u;
      break;
    }
    case ModelKind::Sphere3:
      c[0] = clamp_open(std::atan2(std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]), x[0]), 0.0, kPi);
      c[1] = clamp_open(std::atan2(std::hypot(x[2], x[3]), x[1]), 0.0, kPi);
      c[2] = wrap_angle(std::atan2(x[3], x[2]));
      break;
    case ModelKind::Euclidean: c = x; break;
  }
  ChartPoint q{kind_, c};
  if (!contains(c)) {
    throw Error(ErrorCode::ChartExit, "geodesic endpoint " + describe(c) + " is not representable in the chart");
  }
  return q;
}

ChartPoint Manifold::exp_map(const TangentVector& v) const {
  validate(v.base);
  const Vec& c = v.base.coords;
  switch (kind_) {
    case ModelKind::Euclidean: return {kind_, c + v.comps};
    case ModelKind::Hyperbolic2: {
      // Closed-form half-plane geodesic:
      //   x' = x + S vx / D,  y' = y / D,  S = sinh(n)/n,  D = cosh(n) - S vy / y,
      // with D split into e^{+n} and e^{-n} parts to avoid cancellation.
      const double x = c[0], y = c[1];
      const double vx = v.comps[0], vy = v.comps[1];
      const double hyp = std::hypot(vx, vy);
      if (hyp == 0.0) return v.base;
      const double n = hyp / y;
      const double s = sinhc(n);
      double n_minus_c = 0.0;  // (|v| - vy) / y
      double n_plus_c = 0.0;   // (|v| + vy) / y
      if (vy > 0.0) {
        n_minus_c = vx * vx / (hyp + vy) / y;
        n_plus_c = (hyp + vy) / y;
      } else {
        n_minus_c = (hyp - vy) / y;
        n_plus_c = vx * vx / (hyp - vy) / y;
      }
      const double d = 0.5 * std::exp(n) * n_minus_c / n + 0.5 * std::exp(-n) * n_plus_c / n;
      if (!(d > 0.0) || !std::isfinite(d)) {
        throw Error(ErrorCode::ChartExit, "half-plane geodesic left the representable range");
      }
      ChartPoint q{kind_, Vec(2)};
      q.coords << x + s * vx / d, y / d;
      if (!contains(q.coords)) {
        throw Error(ErrorCode::ChartExit, "half-plane geodesic endpoint " + describe(q.coords) + " not representable");
      }
      return q;
    }
    case ModelKind::Sphere2:
    case ModelKind::Sphere3: {
      const Vec p = embed(v.base);
      const Vec u = push_forward(v);
      const double n = u.norm();
      if (n == 0.0) return v.base;
      const Vec q = std::cos(n) * p + sinc(n) * u;
      return from_ambient(q);
    }
  }
  return v.base;
}

TangentVector Manifold::geodesic_velocity(const TangentVector& v, double t) const {
  const ChartPoint q = exp_map({v.base, t * v.comps});
  if (kind_ == ModelKind::Euclidean) return {q, v.comps};
  const Vec p = embed(v.base);
  const Vec u = push_forward(v);
  const double n = std::sqrt(std::max(0.0, ambient_inner(u, u)));
  Vec vel;
  if (curvature_sign() > 0) {
    vel = -n * std::sin(n * t) * p + std::cos(n * t) * u;
  } else {
    vel = n * std::sinh(n * t) * p + std::cosh(n * t) * u;
  }
  return pull_back(q, vel);
}

TangentVector Manifold::parallel_transport(const TangentVector& u, const TangentVector& w, double t) const {
  const ChartPoint q = exp_map({u.base, t * u.comps});
  if (kind_ == ModelKind::Euclidean) return {q, w.comps};
  const Vec p = embed(u.base);
  const Vec uu = push_forward(u);
  const Vec ww = push_forward(w);
  const double n = std::sqrt(std::max(0.0, ambient_inner(uu, uu)));
  if (n == 0.0) return {q, w.comps};
  const Vec dir = uu / n;
  const double along = ambient_inner(ww, dir);
  const Vec perp = ww - along * dir;
  Vec moved_dir;
  if (curvature_sign() > 0) {
    moved_dir = -std::sin(n * t) * p + std::cos(n * t) * dir;
  } else {
    moved_dir = std::sinh(n * t) * p + std::cosh(n * t) * dir;
  }
  return pull_back(q, along * moved_dir + perp);
}

Frame Manifold::transport_frame(const TangentVector& u, const Frame& frame, double t) const {
  Frame out{exp_map({u.base, t * u.comps}), Mat(dim_, dim_)};
  for (int i = 0; i < dim_; ++i) {
    out.vectors.col(i) = parallel_transport(u, frame.vector(i), t).comps;
  }
  return out;
}

double Manifold::distance(const ChartPoint& p, const ChartPoint& q) const {
  validate(p);
  validate(q);
  switch (kind_) {
    case ModelKind::Euclidean: return (p.coords - q.coords).norm();
    case ModelKind::Hyperbolic2: {
      const double chord = std::hypot(p.coords[0] - q.coords[0], p.coords[1] - q.coords[1]);
      return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.coords[1] * q.coords[1])));
    }
    case ModelKind::Sphere2:
    case ModelKind::Sphere3: {
      const Vec a = embed(p);
      const Vec b = embed(q);
      return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
    }
  }
  return 0.0;
}

Frame Manifold::orthonormal_frame(const TangentVector& first) const {
  const Mat g = metric(first.base);
  auto g_inner = [&g](const Vec& a, const Vec& b) { return a.dot(g * b); };
  const double n = std::sqrt(std::max(0.0, g_inner(first.comps, first.comps)));
  if (!(n >= 1e-14)) {
    throw Error(ErrorCode::DegenerateDirection, "frame direction has vanishing norm");
  }
  Frame f{first.base, Mat::Zero(dim_, dim_)};
  f.vectors.col(0) = first.comps / n;
  int filled = 1;
  for (int k = 0; k < dim_ && filled < dim_; ++k) {
    Vec e = Vec::Zero(dim_);
    e[k] = 1.0;
    const double scale = std::sqrt(g_inner(e, e));
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < filled; ++j) {
        e -= g_inner(f.vectors.col(j), e) * f.vectors.col(j);
      }
    }
    const double r = std::sqrt(std::max(0.0, g_inner(e, e)));
    if (r > 1e-8 * scale) f.vectors.col(filled++) = e / r;
  }
  return f;
}

Vec Manifold::chart_difference(const ChartPoint& a, const ChartPoint& b) const {
  Vec d = a.coords - b.coords;
  if (kind_ == ModelKind::Sphere2) d[1] = wrap_signed(d[1]);
  if (kind_ == ModelKind::Sphere3) d[2] = wrap_signed(d[2]);
  return d;
}

}  // namespace geostab
