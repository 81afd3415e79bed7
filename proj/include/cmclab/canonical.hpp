#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cmclab/rational_poly.hpp"
#include "cmclab/space_kernel.hpp"
#include "cmclab/surface_patch.hpp"

namespace cmclab {

// ---------------------------------------------------------------------------
// Curves of constant geodesic curvature on the base M^2(kappa)

struct CurveSample {
  double s = 0.0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // chart angle of the tangent
};

struct Curve2D {
  int kappa = 0;
  double k_g = 0.0;
  double h_s = 0.0;
  std::vector<CurveSample> samples;
};

// Unit-speed curve with geodesic curvature k_g, started at (x0, y0) with
// chart heading theta0, integrated with classical RK4 on
//   x' = cos(theta) / mu,  y' = sin(theta) / mu,
//   theta' = k_g - (kappa / 2)(y cos(theta) - x sin(theta)).
// The step is length / round(length / h_s). Throws ChartExit if the curve
// leaves the chart (x^2 + y^2 < chart_r2_max for kappa = 1, < 4 for
// kappa = -1).
Curve2D gen_curve_constant_kg(int kappa, double k_g, double length, double h_s,
                              double x0 = 0.0, double y0 = 0.0, double theta0 = 0.0,
                              double chart_r2_max = 4.0);

// Geodesic curvature recovered from the sampled chart positions alone:
// k_g = (k_euclid - d_n ln mu) / mu (n the left normal) with
// finite-difference derivatives.
std::vector<double> measured_geodesic_curvature(const Curve2D& curve);

// CSV with header "s,x,y,theta,k_g_measured".
std::string curve_csv(const Curve2D& curve);

// ---------------------------------------------------------------------------
// Surface generators

// Horizontal slice z = 0 over [-extent, extent]^2 in M^2(kappa) x R.
// Only kappa = -1 and kappa = +1 are accepted (InvalidKappa otherwise).
ImmersedPatch gen_slice(int kappa, double extent, int n);

struct CylinderPatches {
  ImmersedPatch immersed;
  DataPatch data;
  Curve2D curve;
};

// Vertical cylinder over the curve of geodesic curvature 2H started at the
// chart origin. The immersion is (alpha(u), -v - int_0^u F) with
// F = tau (y x' - x y') the connection form along the curve; it is
// isothermal with lambda = 1. The DataPatch is the closed form
//   lambda = 1, nu = 0, A = i/2, p = (H - i tau)/2,
// oriented so that H is measured against N = X_u x X_v. The u direction
// has n nodes over [0, length]; the v direction covers fiber_extent with
// the same spacing (at least 7 nodes, so that extraction keeps 5).
CylinderPatches gen_cylinder(const SpaceParams& space, double H, double length,
                             double fiber_extent, int n);

// g_raw(nu) = 4H^2 + kappa - (kappa - 4 tau^2) nu^2
double g_raw(const SpaceParams& space, double H, double nu);
// g_normalized(nu) = g_raw(nu) / (4 sqrt(H^2 + tau^2))
double g_normalized(const SpaceParams& space, double H, double nu);

// Closed-form rotational sphere data in the coordinate w = s + i t where
// nu = tanh(s) is harmonic.
struct SphereDataPoint {
  double nu;
  double lambda;
  Complex A;
  Complex p;
};
SphereDataPoint sphere_data_at(const SpaceParams& space, double H, double s);

// Rotational sphere data on s in [s_lo, s_hi] with n nodes and n_t >= 5
// nodes in t at the same spacing. Throws HypothesisViolated unless
// 4H^2 + kappa > 0 and (H, tau) != (0, 0); GVanishes if g_normalized has a
// zero on the range.
DataPatch gen_rotational_sphere_data(const SpaceParams& space, double H, double s_lo,
                                     double s_hi, int n, int n_t = 5);
inline DataPatch gen_rotational_sphere_data(const SpaceParams& space, double H,
                                            double s_extent = 2.0, int n = 4001) {
  return gen_rotational_sphere_data(space, H, -s_extent, s_extent, n);
}

struct SphereImmersedOptions {
  double pole_eps = 1e-5;     // start radius next to the pole
  double pole_step = 1e-4;    // arclength step of the pole-to-equator shot
  int max_steps = 2000000;
  int substeps = 4;           // RK4 steps per grid spacing in the conformal phase
  int n_v = 7;
};

// Rotational CMC sphere in M^2(kappa) x R (tau = 0) from the profile system
//   rho' = cos(sigma), h' = sin(sigma), sigma' = 2H - ct_kappa(rho) sin(sigma),
// shot from the pole with sigma ~ H rho. The patch is centred on the equator
// (sigma = pi/2) and uses the conformal coordinate du = ds / sn_kappa(rho) with
// n_u nodes at spacing h; lambda = sn_kappa(rho)^2.
ImmersedPatch gen_rotational_sphere_immersed(int kappa, double H, int n_u, double h,
                                             const SphereImmersedOptions& options = {});

// ---------------------------------------------------------------------------
// Constant-angle family parameters

struct SFamilyParams {
  SpaceParams space;
  double H;
  double nu2;
  double K;
  double Ke;
};

// nu^2 = 1 - 4(H^2 + tau^2)/(4 tau^2 - kappa), K_e = -tau^2,
// K = (kappa - 4 tau^2) nu^2. Throws NoSFamily unless kappa < 0,
// 4H^2 + kappa < 0 and 0 < nu^2 < 1.
SFamilyParams s_family_params(const SpaceParams& space, double H);

struct SFamilyParamsExact {
  Rational nu2;
  Rational K;
  Rational Ke;
  Rational residual;  // 4H^2 + 4tau^2 + (kappa - 4tau^2)(1 - nu^2)
};

SFamilyParamsExact s_family_params_exact(int kappa, const Rational& tau, const Rational& H);

}  // namespace cmclab
