#include "cmclab/canonical.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "cmclab/error.hpp"

namespace cmclab {

namespace {

bool chart_ok(int kappa, double x, double y, double chart_r2_max) {
  if (!std::isfinite(x) || !std::isfinite(y)) return false;
  const double r2 = x * x + y * y;
  if (kappa < 0) return r2 < 4.0;
  if (kappa > 0) return r2 < chart_r2_max;
  return true;
}

double mu_of(int kappa, double x, double y) { return 1.0 / (1.0 + kappa * (x * x + y * y) / 4.0); }

using CurveState = std::array<double, 3>;  // x, y, theta

CurveState curve_rhs(int kappa, double k_g, const CurveState& q) {
  const double mu = mu_of(kappa, q[0], q[1]);
  const double c = std::cos(q[2]);
  const double s = std::sin(q[2]);
  return {c / mu, s / mu, k_g - 0.5 * kappa * (q[1] * c - q[0] * s)};
}

template <class State, class Rhs>
State rk4_step(const State& q, double h, Rhs&& rhs) {
  auto axpy = [](const State& a, double t, const State& b) {
    State r;
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * b[i];
    return r;
  };
  const State k1 = rhs(q);
  const State k2 = rhs(axpy(q, 0.5 * h, k1));
  const State k3 = rhs(axpy(q, 0.5 * h, k2));
  const State k4 = rhs(axpy(q, h, k3));
  State out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    out[i] = q[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace

Curve2D gen_curve_constant_kg(int kappa, double k_g, double length, double h_s, double x0,
                              double y0, double theta0, double chart_r2_max) {
  if (kappa < -1 || kappa > 1) throw Error(ErrorKind::InvalidKappa, "kappa must be -1, 0 or 1");
  if (!(length > 0.0) || !(h_s > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "length and step must be positive");
  }
  const long steps = std::max(1L, std::lround(length / h_s));
  const double h = length / static_cast<double>(steps);
  Curve2D curve{kappa, k_g, h, {}};
  curve.samples.reserve(static_cast<std::size_t>(steps) + 1);
  CurveState q{x0, y0, theta0};
  if (!chart_ok(kappa, x0, y0, chart_r2_max)) {
    throw Error(ErrorKind::ChartExit, "curve start outside the chart");
  }
  curve.samples.push_back({0.0, q[0], q[1], q[2]});
  auto rhs = [&](const CurveState& s) { return curve_rhs(kappa, k_g, s); };
  for (long k = 1; k <= steps; ++k) {
    q = rk4_step(q, h, rhs);
    if (!chart_ok(kappa, q[0], q[1], chart_r2_max)) {
      throw Error(ErrorKind::ChartExit,
                  "curve leaves the chart at s = " + std::to_string(static_cast<double>(k) * h));
    }
    curve.samples.push_back({static_cast<double>(k) * h, q[0], q[1], q[2]});
  }
  return curve;
}

std::vector<double> measured_geodesic_curvature(const Curve2D& curve) {
  const auto& c = curve.samples;
  const std::size_t n = c.size();
  if (n < 4) throw Error(ErrorKind::InvalidInput, "need at least 4 curve samples");
  const double h = curve.h_s;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double x1, y1, x2, y2;
    if (k == 0) {
      x1 = (-3.0 * c[0].x + 4.0 * c[1].x - c[2].x) / (2.0 * h);
      y1 = (-3.0 * c[0].y + 4.0 * c[1].y - c[2].y) / (2.0 * h);
      x2 = (2.0 * c[0].x - 5.0 * c[1].x + 4.0 * c[2].x - c[3].x) / (h * h);
      y2 = (2.0 * c[0].y - 5.0 * c[1].y + 4.0 * c[2].y - c[3].y) / (h * h);
    } else if (k == n - 1) {
      x1 = (3.0 * c[k].x - 4.0 * c[k - 1].x + c[k - 2].x) / (2.0 * h);
      y1 = (3.0 * c[k].y - 4.0 * c[k - 1].y + c[k - 2].y) / (2.0 * h);
      x2 = (2.0 * c[k].x - 5.0 * c[k - 1].x + 4.0 * c[k - 2].x - c[k - 3].x) / (h * h);
      y2 = (2.0 * c[k].y - 5.0 * c[k - 1].y + 4.0 * c[k - 2].y - c[k - 3].y) / (h * h);
    } else {
      x1 = (c[k + 1].x - c[k - 1].x) / (2.0 * h);
      y1 = (c[k + 1].y - c[k - 1].y) / (2.0 * h);
      x2 = (c[k + 1].x - 2.0 * c[k].x + c[k - 1].x) / (h * h);
      y2 = (c[k + 1].y - 2.0 * c[k].y + c[k - 1].y) / (h * h);
    }
    const double speed = std::hypot(x1, y1);
    const double k_euclid = (x1 * y2 - y1 * x2) / (speed * speed * speed);
    const double mu = mu_of(curve.kappa, c[k].x, c[k].y);
    // grad ln mu = -(kappa / 2) mu (x, y); left normal = (-y', x') / |.|
    const double dn_log_mu =
        -0.5 * curve.kappa * mu * (-c[k].x * y1 + c[k].y * x1) / speed;
    out[k] = (k_euclid - dn_log_mu) / mu;
  }
  return out;
}

std::string curve_csv(const Curve2D& curve) {
  const std::vector<double> kg = measured_geodesic_curvature(curve);
  std::ostringstream os;
  os << "s,x,y,theta,k_g_measured\n";
  char buf[160];
  for (std::size_t k = 0; k < curve.samples.size(); ++k) {
    const CurveSample& c = curve.samples[k];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", c.s, c.x, c.y, c.theta,
                  kg[k]);
    os << buf;
  }
  return os.str();
}

ImmersedPatch gen_slice(int kappa, double extent, int n) {
  if (kappa != -1 && kappa != 1) {
    throw Error(ErrorKind::InvalidKappa, "slices exist only in H2xR and S2xR");
  }
  if (n < 5 || !(extent > 0.0)) throw Error(ErrorKind::InvalidInput, "slice needs n >= 5");
  const SpaceParams space = make_space(kappa, 0.0);
  const double h = 2.0 * extent / (n - 1);
  const Grid grid = make_grid(n, n, h, -extent, -extent);
  std::vector<ChartPoint> pos(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) pos[static_cast<std::size_t>(grid.index(i, j))] = {grid.u(i), grid.v(j), 0.0};
  }
  return ImmersedPatch(space, grid, std::move(pos), Parametrization::Isothermal);
}

CylinderPatches gen_cylinder(const SpaceParams& space, double H, double length,
                             double fiber_extent, int n) {
  if (n < 5 || !(length > 0.0) || !(fiber_extent > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "cylinder needs n >= 5 and positive extents");
  }
  const double h = length / (n - 1);
  Curve2D curve = gen_curve_constant_kg(space.kappa(), 2.0 * H, length, 0.5 * h, 0.0, 0.0, 0.0,
                                        space.chart_radius2_max());
  if (curve.samples.size() != static_cast<std::size_t>(2 * (n - 1) + 1)) {
    throw Error(ErrorKind::InvalidInput, "curve sampling does not match the grid");
  }

  // metric coefficients of (s, t) -> (alpha(s), t)
  const std::size_t m = curve.samples.size();
  std::vector<double> E(m), F(m), G(m);
  for (std::size_t k = 0; k < m; ++k) {
    const CurveSample& c = curve.samples[k];
    const ChartPoint pt{c.x, c.y, 0.0};
    const MetricTensor g = metric_at(space, pt);
    const double mu = base_factor(space, c.x, c.y);
    const TangentVector a(std::cos(c.theta) / mu, std::sin(c.theta) / mu, 0.0);
    const TangentVector xi = vertical_field_at(space, pt);
    E[k] = inner(g, a, a);
    F[k] = inner(g, a, xi);
    G[k] = inner(g, xi, xi);
  }
  const Isothermalization iso = isothermalize_cohomogeneity1(E, F, G, 0.0, h);

  const int n_v = std::max(7, static_cast<int>(std::lround(fiber_extent / h)) + 1);
  const Grid grid = make_grid(n, n_v, h);
  std::vector<ChartPoint> pos(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < n; ++i) {
    const CurveSample& c = curve.samples[static_cast<std::size_t>(2 * i)];
    for (int j = 0; j < n_v; ++j) {
      pos[static_cast<std::size_t>(grid.index(i, j))] = {c.x, c.y, -grid.v(j) - iso.t_shift[static_cast<std::size_t>(i)]};
    }
  }
  ImmersedPatch immersed(space, grid, std::move(pos), Parametrization::Isothermal);

  DataPatch data = make_data_patch(space, H, grid);
  for (std::size_t k = 0; k < data.lambda.values().size(); ++k) {
    data.lambda.values()[k] = 1.0;
    data.nu.values()[k] = 0.0;
    data.A.values()[k] = Complex(0.0, 0.5);
    data.p.values()[k] = 0.5 * Complex(H, -space.tau());
  }
  return CylinderPatches{std::move(immersed), std::move(data), std::move(curve)};
}

double g_raw(const SpaceParams& space, double H, double nu) {
  return 4.0 * H * H + space.kappa() - space.b() * nu * nu;
}

double g_normalized(const SpaceParams& space, double H, double nu) {
  return g_raw(space, H, nu) / (4.0 * std::sqrt(H * H + space.tau() * space.tau()));
}

SphereDataPoint sphere_data_at(const SpaceParams& space, double H, double s) {
  const double tau = space.tau();
  const double root = std::sqrt(H * H + tau * tau);
  const double nu = std::tanh(s);
  const double sech = 1.0 / std::cosh(s);
  const double sech2 = sech * sech;
  const double gn = g_normalized(space, H, nu);
  const Complex htau(H, tau);
  const Complex A = -htau * sech2 / (2.0 * root * gn);
  const Complex p = space.b() * A * A / (2.0 * htau);
  return {nu, sech2 / (gn * gn), A, p};
}

DataPatch gen_rotational_sphere_data(const SpaceParams& space, double H, double s_lo,
                                     double s_hi, int n, int n_t) {
  if (!(4.0 * H * H + space.kappa() > 0.0)) {
    throw Error(ErrorKind::HypothesisViolated, "rotational spheres need 4H^2 + kappa > 0");
  }
  if (H == 0.0 && space.tau() == 0.0) {
    throw Error(ErrorKind::HypothesisViolated, "rotational sphere data needs (H, tau) != (0, 0)");
  }
  if (n < 5 || n_t < 5 || !(s_hi > s_lo)) {
    throw Error(ErrorKind::InvalidInput, "sphere data needs at least 5x5 nodes on s_lo < s_hi");
  }
  const double h = (s_hi - s_lo) / (n - 1);
  const Grid grid = make_grid(n, n_t, h, s_lo, 0.0);
  DataPatch d = make_data_patch(space, H, grid);
  for (int i = 0; i < n; ++i) {
    const double s = grid.u(i);
    if (!(std::abs(g_normalized(space, H, std::tanh(s))) > 1e-12)) {
      throw Error(ErrorKind::GVanishes, "g_normalized vanishes at s = " + std::to_string(s));
    }
    const SphereDataPoint pt = sphere_data_at(space, H, s);
    for (int j = 0; j < n_t; ++j) {
      d.nu(i, j) = pt.nu;
      d.lambda(i, j) = pt.lambda;
      d.A(i, j) = pt.A;
      d.p(i, j) = pt.p;
    }
  }
  return d;
}

namespace {

double sn_k(int kappa, double r) {
  if (kappa < 0) return std::sinh(r);
  if (kappa > 0) return std::sin(r);
  return r;
}

double cs_k(int kappa, double r) {
  if (kappa < 0) return std::cosh(r);
  if (kappa > 0) return std::cos(r);
  return 1.0;
}

// chart radius of a point at base distance rho from the origin
double chart_radius(int kappa, double rho) {
  if (kappa < 0) return 2.0 * std::tanh(0.5 * rho);
  if (kappa > 0) return 2.0 * std::tan(0.5 * rho);
  return rho;
}

using ProfileState = std::array<double, 3>;  // rho, height, sigma

}  // namespace

ImmersedPatch gen_rotational_sphere_immersed(int kappa, double H, int n_u, double h,
                                             const SphereImmersedOptions& options) {
  if (kappa < -1 || kappa > 1) throw Error(ErrorKind::InvalidKappa, "kappa must be -1, 0 or 1");
  if (H == 0.0 || !(4.0 * H * H + kappa > 0.0)) {
    throw Error(ErrorKind::HypothesisViolated, "immersed spheres need H != 0 and 4H^2 + kappa > 0");
  }
  if (n_u < 5 || options.n_v < 5 || !(h > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "sphere patch needs at least 5x5 nodes");
  }
  constexpr double kHalfPi = std::numbers::pi / 2.0;

  auto arclength_rhs = [&](const ProfileState& q) {
    const double s = std::sin(q[2]);
    return ProfileState{std::cos(q[2]), s, 2.0 * H - cs_k(kappa, q[0]) / sn_k(kappa, q[0]) * s};
  };

  // pole to equator in arclength
  const double eps = options.pole_eps;
  ProfileState q{eps, 0.5 * H * eps * eps, H * eps};
  ProfileState prev = q;
  int steps = 0;
  while (q[2] < kHalfPi) {
    if (++steps > options.max_steps || !(q[0] > 0.0) || !std::isfinite(q[2])) {
      throw Error(ErrorKind::ShootingFailure, "profile did not reach the equator");
    }
    prev = q;
    q = rk4_step(q, options.pole_step, arclength_rhs);
  }
  double lo = 0.0, hi = options.pole_step;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (rk4_step(prev, mid, arclength_rhs)[2] < kHalfPi) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const ProfileState equator = rk4_step(prev, lo, arclength_rhs);

  // conformal phase: d/du = sn(rho) d/ds
  auto conformal_rhs = [&](const ProfileState& s) {
    const double sn = sn_k(kappa, s[0]);
    const double ss = std::sin(s[2]);
    return ProfileState{sn * std::cos(s[2]), sn * ss, 2.0 * H * sn - cs_k(kappa, s[0]) * ss};
  };
  const int centre = n_u / 2;
  std::vector<ProfileState> profile(static_cast<std::size_t>(n_u));
  profile[static_cast<std::size_t>(centre)] = equator;
  const double sub = h / options.substeps;
  for (int i = centre + 1; i < n_u; ++i) {
    ProfileState s = profile[static_cast<std::size_t>(i - 1)];
    for (int k = 0; k < options.substeps; ++k) s = rk4_step(s, sub, conformal_rhs);
    profile[static_cast<std::size_t>(i)] = s;
  }
  for (int i = centre - 1; i >= 0; --i) {
    ProfileState s = profile[static_cast<std::size_t>(i + 1)];
    for (int k = 0; k < options.substeps; ++k) s = rk4_step(s, -sub, conformal_rhs);
    profile[static_cast<std::size_t>(i)] = s;
  }

  const SpaceParams space = kappa == 0 ? SpaceParams::euclidean() : make_space(kappa, 0.0);
  const Grid grid = make_grid(n_u, options.n_v, h, -centre * h, 0.0);
  std::vector<ChartPoint> pos(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < n_u; ++i) {
    const ProfileState& s = profile[static_cast<std::size_t>(i)];
    if (!(s[0] > 0.0)) throw Error(ErrorKind::ShootingFailure, "profile reached the axis");
    const double r = chart_radius(kappa, s[0]);
    for (int j = 0; j < options.n_v; ++j) {
      const double v = grid.v(j);
      pos[static_cast<std::size_t>(grid.index(i, j))] = {r * std::cos(v), r * std::sin(v), s[1]};
    }
  }
  return ImmersedPatch(space, grid, std::move(pos), Parametrization::Isothermal);
}

SFamilyParams s_family_params(const SpaceParams& space, double H) {
  const double tau = space.tau();
  if (space.kappa() >= 0 || !(4.0 * H * H + space.kappa() < 0.0)) {
    throw Error(ErrorKind::NoSFamily, "constant-angle family needs kappa < 0 and 4H^2 + kappa < 0");
  }
  const double nu2 = 1.0 - 4.0 * (H * H + tau * tau) / (4.0 * tau * tau - space.kappa());
  if (!(nu2 > 0.0 && nu2 < 1.0)) {
    throw Error(ErrorKind::NoSFamily, "nu^2 = " + std::to_string(nu2) + " outside (0, 1)");
  }
  return SFamilyParams{space, H, nu2, space.b() * nu2, -tau * tau};
}

SFamilyParamsExact s_family_params_exact(int kappa, const Rational& tau, const Rational& H) {
  const Rational k(kappa);
  const Rational b = k - 4 * tau * tau;
  if (kappa >= 0 || !(4 * H * H + k < 0)) {
    throw Error(ErrorKind::NoSFamily, "constant-angle family needs kappa < 0 and 4H^2 + kappa < 0");
  }
  const Rational nu2 = 1 - 4 * (H * H + tau * tau) / (4 * tau * tau - k);
  if (!(nu2 > 0 && nu2 < 1)) throw Error(ErrorKind::NoSFamily, "nu^2 outside (0, 1)");
  SFamilyParamsExact out;
  out.nu2 = nu2;
  out.K = b * nu2;
  out.Ke = -tau * tau;
  out.residual = 4 * H * H + 4 * tau * tau + b * (1 - nu2);
  return out;
}

}  // namespace cmclab
