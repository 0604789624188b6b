#include "support/oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

namespace {

Vec gamma_contract(const geostab::Christoffel& gam, const Vec& a, const Vec& b) {
  const auto d = a.size();
  Vec out = Vec::Zero(d);
  for (Eigen::Index k = 0; k < d; ++k) out[k] = a.dot(gam[k] * b);
  return out;
}

int steps_for(double t, double step) { return std::max(1, static_cast<int>(std::ceil(std::abs(t) / step))); }

// The ODEs may pass through wrapped angles, so points are built without validation.
ChartPoint raw(const Manifold& m, const Vec& x) { return {m.kind(), x}; }

Vec part(const DVec& s, int block, int d) { return s.segment(block * d, d); }

DVec stack(std::initializer_list<Vec> parts) {
  Eigen::Index n = 0;
  for (const Vec& p : parts) n += p.size();
  DVec out(n);
  n = 0;
  for (const Vec& p : parts) {
    out.segment(n, p.size()) = p;
    n += p.size();
  }
  return out;
}

}  // namespace

DVec rk4(const std::function<DVec(const DVec&)>& f, DVec y, double t, int n) {
  const double h = t / n;
  for (int i = 0; i < n; ++i) {
    const DVec k1 = f(y);
    const DVec k2 = f(y + 0.5 * h * k1);
    const DVec k3 = f(y + 0.5 * h * k2);
    const DVec k4 = f(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

GeodesicState geodesic(const Manifold& m, const TangentVector& v, double t, double step) {
  const int d = m.dim();
  const auto f = [&](const DVec& y) {
    const Vec x = part(y, 0, d), xd = part(y, 1, d);
    return stack({xd, -gamma_contract(m.christoffel(raw(m, x)), xd, xd)});
  };
  const DVec y = rk4(f, stack({v.base.coords, v.comps}), t, steps_for(t, step));
  return {part(y, 0, d), part(y, 1, d)};
}

Vec transport(const Manifold& m, const TangentVector& u, const Vec& w, double t, double step) {
  const int d = m.dim();
  const auto f = [&](const DVec& y) {
    const Vec x = part(y, 0, d), xd = part(y, 1, d), wv = part(y, 2, d);
    const auto gam = m.christoffel(raw(m, x));
    return stack({xd, -gamma_contract(gam, xd, xd), -gamma_contract(gam, xd, wv)});
  };
  return part(rk4(f, stack({u.base.coords, u.comps, w}), t, steps_for(t, step)), 2, d);
}

Vec jacobi_field(const Manifold& m, const TangentVector& u, const Vec& j0, const Vec& dj0, double t, double step) {
  // State (x, x', J, P) with P = D_t J, all chart components:
  //   J' = P - Gamma(x', J),  P' = -R(J, T)T - Gamma(x', P).
  const int d = m.dim();
  const double rho = m.rho();
  const auto f = [&](const DVec& s) {
    const Vec x = part(s, 0, d), xd = part(s, 1, d), jv = part(s, 2, d), pv = part(s, 3, d);
    const ChartPoint p = raw(m, x);
    const auto gam = m.christoffel(p);
    const Mat gm = m.metric(p);
    const double tt = xd.dot(gm * xd), jt = jv.dot(gm * xd);
    const Vec curv = rho * (tt * jv - jt * xd);
    return stack({xd, -gamma_contract(gam, xd, xd), pv - gamma_contract(gam, xd, jv),
                  -curv - gamma_contract(gam, xd, pv)});
  };
  return part(rk4(f, stack({u.base.coords, u.comps, j0, dj0}), t, steps_for(t, step)), 2, d);
}

Vec flow(const Field& field, const ChartPoint& p, double t, int n) {
  const Manifold& m = field.manifold();
  const auto f = [&](const DVec& x) -> DVec { return field.value(m.point(Vec(x))).comps; };
  return rk4(f, p.coords, t, n);
}

geostab::Christoffel christoffel_from_metric(const Manifold& m, const ChartPoint& p, double step) {
  const int d = m.dim();
  std::array<Mat, geostab::kMaxDim> dg;  // dg[k] = d g / d x^k
  for (int k = 0; k < d; ++k) {
    Vec xp = p.coords, xm = p.coords;
    xp[k] += step;
    xm[k] -= step;
    dg[k] = (m.metric(raw(m, xp)) - m.metric(raw(m, xm))) / (2.0 * step);
  }
  const Mat ginv = m.metric(p).inverse();
  geostab::Christoffel gam;
  for (int k = 0; k < d; ++k) {
    gam[k] = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l)
          gam[k](i, j) += 0.5 * ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
  }
  return gam;
}

ChartPoint random_point(const Manifold& m, std::mt19937_64& rng) {
  const auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  constexpr double pi = std::numbers::pi;
  switch (m.kind()) {
    case geostab::ModelKind::Sphere2: return m.point({u(-1.3, 1.3), u(0.0, 2.0 * pi)});
    case geostab::ModelKind::Hyperbolic2: return m.point({u(-2.0, 2.0), u(0.2, 3.0)});
    case geostab::ModelKind::Sphere3: return m.point({u(0.2, pi - 0.2), u(0.2, pi - 0.2), u(0.0, 2.0 * pi)});
    case geostab::ModelKind::Euclidean: {
      Vec x(m.dim());
      for (int i = 0; i < m.dim(); ++i) x[i] = u(-2.0, 2.0);
      return m.point(x);
    }
  }
  return {};
}

Vec random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = n(rng);
  return v / v.norm();
}

TangentVector random_tangent(const Manifold& m, const ChartPoint& p, double norm, std::mt19937_64& rng) {
  const Vec c = random_unit(m.dim(), rng);
  const TangentVector v{p, c};
  return {p, c * (norm / m.norm(v))};
}

}  // namespace oracle
