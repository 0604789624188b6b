#pragma once

#include <array>

#include "core/linalg.hpp"

namespace geostab {

enum class ModelKind { Sphere2, Hyperbolic2, Sphere3, Euclidean };

[[nodiscard]] const char* to_string(ModelKind kind) noexcept;

/// Chart coordinates of a point. S2: (phi, theta) with phi the elevation;
/// H2: half-plane (x, y); S3: (psi, theta, phi); Euclidean: Cartesian.
struct ChartPoint {
  ModelKind model = ModelKind::Euclidean;
  Vec coords;
};

struct TangentVector {
  ChartPoint base;
  Vec comps;
};

/// g-orthonormal frame at `base`; column i holds the chart components of e_{i+1}.
struct Frame {
  ChartPoint base;
  Mat vectors;

  [[nodiscard]] TangentVector vector(int i) const { return {base, vectors.col(i)}; }
};

/// Christoffel symbols: gamma[k](i, j) = Gamma^k_{ij}.
using Christoffel = std::array<Mat, kMaxDim>;

/// Constant-curvature model space (rho in {+1, 0, -1}) in a fixed chart.
///
/// The curved models also carry an isometric embedding: the unit sphere in
/// R^3 / R^4, and the hyperboloid model in Minkowski R^{1,2} for H2. Geodesics,
/// distances and parallel transport are evaluated there and mapped back.
class Manifold {
 public:
  static Manifold sphere2() { return Manifold(ModelKind::Sphere2, 2); }
  static Manifold hyperbolic2() { return Manifold(ModelKind::Hyperbolic2, 2); }
  static Manifold sphere3() { return Manifold(ModelKind::Sphere3, 3); }
  static Manifold euclidean(int dim);

  [[nodiscard]] ModelKind kind() const noexcept { return kind_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] double rho() const noexcept;
  [[nodiscard]] int curvature_sign() const noexcept;
  [[nodiscard]] int ambient_dim() const noexcept;

  /// Builds a validated point; periodic angles are wrapped into [0, 2pi).
  [[nodiscard]] ChartPoint point(const Vec& coords) const;
  [[nodiscard]] ChartPoint point(std::initializer_list<double> coords) const;
  [[nodiscard]] TangentVector tangent(const ChartPoint& p, const Vec& comps) const;
  [[nodiscard]] bool contains(const Vec& coords) const noexcept;
  /// Throws ErrorCode::Domain when p is outside the open chart domain.
  void validate(const ChartPoint& p) const;

  [[nodiscard]] Mat metric(const ChartPoint& p) const;
  [[nodiscard]] Christoffel christoffel(const ChartPoint& p) const;
  [[nodiscard]] double inner(const TangentVector& a, const TangentVector& b) const;
  [[nodiscard]] double norm(const TangentVector& v) const;

  [[nodiscard]] ChartPoint exp_map(const TangentVector& v) const;
  /// Velocity of t -> exp(t v) at time t, as a tangent vector at exp(t v).
  [[nodiscard]] TangentVector geodesic_velocity(const TangentVector& v, double t) const;
  /// Parallel transport of w along s -> exp(s u), s in [0, t].
  [[nodiscard]] TangentVector parallel_transport(const TangentVector& u, const TangentVector& w,
                                                 double t) const;
  [[nodiscard]] Frame transport_frame(const TangentVector& u, const Frame& frame, double t) const;
  [[nodiscard]] double distance(const ChartPoint& p, const ChartPoint& q) const;
  /// e_1 = first / |first|, completed by Gram-Schmidt on the coordinate basis.
  [[nodiscard]] Frame orthonormal_frame(const TangentVector& first) const;

  [[nodiscard]] Vec embed(const ChartPoint& p) const;
  /// Columns are the ambient images of the coordinate basis vectors.
  [[nodiscard]] Mat embedding_jacobian(const ChartPoint& p) const;
  [[nodiscard]] Vec push_forward(const TangentVector& v) const;
  /// Chart components of the tangent part of an ambient vector at p.
  [[nodiscard]] TangentVector pull_back(const ChartPoint& p, const Vec& ambient) const;
  /// Euclidean for the spheres, Lorentzian (-,+,+) for the hyperboloid.
  [[nodiscard]] double ambient_inner(const Vec& a, const Vec& b) const;
  [[nodiscard]] ChartPoint from_ambient(const Vec& x) const;

  /// a - b in chart coordinates with periodic coordinates wrapped into (-pi, pi].
  [[nodiscard]] Vec chart_difference(const ChartPoint& a, const ChartPoint& b) const;

  friend bool operator==(const Manifold&, const Manifold&) = default;

 private:
  Manifold(ModelKind kind, int dim) : kind_(kind), dim_(dim) {}

  ModelKind kind_;
  int dim_;
};

}  // namespace geostab
