#pragma once

// Chart model of the homogeneous spaces E(kappa, tau).
//
// Every geometry is realized in one rotationally symmetric chart (x, y, z):
//
//   g = mu^2 (dx^2 + dy^2) + (dz + tau * mu * (y dx - x dy))^2,
//   mu(x, y) = 1 / (1 + kappa (x^2 + y^2) / 4).
//
// The projection (x, y, z) -> (x, y) is a Riemannian submersion onto the
// constant-curvature-kappa base, and xi = d/dz is the unit vertical Killing
// field. Cross products use the volume form sqrt(det g) dx^dy^dz, i.e. the
// ordered chart frame (d/dx, d/dy, d/dz) is positive. With that orientation
// nabla_X xi = tau X x xi holds for the sign of tau used above.

#include <array>
#include <string_view>

#include <Eigen/Dense>

namespace cmclab {

enum class Geometry { ProductH2R, ProductS2R, Heisenberg, PslCover, Berger, Euclidean };

std::string_view to_string(Geometry g);

class SpaceParams {
 public:
  // Flat R^3 = E(0, 0). It violates kappa - 4 tau^2 != 0 and is only used as
  // a chart-level sanity model; operations that divide by b reject it.
  static SpaceParams euclidean();

  int kappa() const noexcept { return kappa_; }
  double tau() const noexcept { return tau_; }
  // b = kappa - 4 tau^2
  double b() const noexcept { return b_; }
  Geometry geometry() const noexcept { return geometry_; }
  std::string_view tag() const noexcept { return to_string(geometry_); }
  bool degenerate() const noexcept { return b_ == 0.0; }

  // Largest admissible x^2 + y^2 for chart points.
  double chart_radius2_max() const noexcept { return chart_r2_max_; }

  // a4 = H^2 + tau^2 (the constant of the K <= 0 bound), a6 = 4 (H^2 + tau^2).
  double a4(double H) const noexcept { return H * H + tau_ * tau_; }
  double a6(double H) const noexcept { return 4.0 * (H * H + tau_ * tau_); }

 private:
  friend SpaceParams make_space(int kappa, double tau, double chart_r2_max);
  SpaceParams(int kappa, double tau, double chart_r2_max);

  int kappa_;
  double tau_;
  double b_;
  Geometry geometry_;
  double chart_r2_max_;
};

// Throws Error{InvalidKappa} for kappa outside {-1, 0, 1} and
// Error{Degenerate} when kappa - 4 tau^2 == 0. chart_r2_max bounds x^2 + y^2
// for kappa = +1; for kappa = -1 the chart is the open disk x^2 + y^2 < 4.
SpaceParams make_space(int kappa, double tau, double chart_r2_max = 4.0);

struct ChartPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

using MetricTensor = Eigen::Matrix3d;
using TangentVector = Eigen::Vector3d;

// Christoffel symbols: gamma[k](i, j) = Gamma^k_ij.
using Christoffel = std::array<Eigen::Matrix3d, 3>;

bool in_chart(const SpaceParams& space, const ChartPoint& p);
void require_in_chart(const SpaceParams& space, const ChartPoint& p);

// Base conformal factor mu(x, y).
double base_factor(const SpaceParams& space, double x, double y);

MetricTensor metric_at(const SpaceParams& space, const ChartPoint& p);
TangentVector vertical_field_at(const SpaceParams& space, const ChartPoint& p);

// Central differences of metric_at with step h (default 1e-4).
Christoffel christoffel_fd(const SpaceParams& space, const ChartPoint& p, double h = 1e-4);

// Metric cross product X x Y at p.
TangentVector cross(const MetricTensor& g, const TangentVector& X, const TangentVector& Y);

inline double inner(const MetricTensor& g, const TangentVector& X, const TangentVector& Y) {
  return X.dot(g * Y);
}

// Norm of nabla_X xi - tau X x xi, with Christoffel symbols at step h.
double check_killing_identity(const SpaceParams& space, const ChartPoint& p,
                              const TangentVector& X, double h);

// Gaussian curvature of the base metric mu^2 |dx|^2 from second differences
// of ln mu at step h; equals kappa up to O(h^2).
double base_curvature_fd(const SpaceParams& space, double x, double y, double h);

}  // namespace cmclab
