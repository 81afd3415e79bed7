#include "cmclab/space_kernel.hpp"

#include <cmath>
#include <string>

#include "cmclab/error.hpp"

namespace cmclab {

std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::ProductH2R: return "H2xR";
    case Geometry::ProductS2R: return "S2xR";
    case Geometry::Heisenberg: return "Heisenberg";
    case Geometry::PslCover: return "PSL2R-cover";
    case Geometry::Berger: return "Berger";
    case Geometry::Euclidean: return "R3";
  }
  return "unknown";
}

namespace {

Geometry classify_geometry(int kappa, double tau) {
  if (tau == 0.0) {
    if (kappa < 0) return Geometry::ProductH2R;
    if (kappa > 0) return Geometry::ProductS2R;
    return Geometry::Euclidean;
  }
  if (kappa > 0) return Geometry::Berger;
  if (kappa == 0) return Geometry::Heisenberg;
  return Geometry::PslCover;
}

}  // namespace

SpaceParams::SpaceParams(int kappa, double tau, double chart_r2_max)
    : kappa_(kappa),
      tau_(tau),
      b_(kappa - 4.0 * tau * tau),
      geometry_(classify_geometry(kappa, tau)),
      chart_r2_max_(kappa < 0 ? 4.0 : chart_r2_max) {}

SpaceParams SpaceParams::euclidean() { return SpaceParams(0, 0.0, 4.0); }

SpaceParams make_space(int kappa, double tau, double chart_r2_max) {
  if (kappa < -1 || kappa > 1) {
    throw Error(ErrorKind::InvalidKappa, "kappa must be -1, 0 or 1, got " + std::to_string(kappa));
  }
  if (!std::isfinite(tau)) throw Error(ErrorKind::InvalidInput, "tau must be finite");
  if (kappa - 4.0 * tau * tau == 0.0) {
    throw Error(ErrorKind::Degenerate, "kappa - 4 tau^2 vanishes (space form, not E(kappa, tau))");
  }
  if (!(chart_r2_max > 0.0)) throw Error(ErrorKind::InvalidInput, "chart_r2_max must be positive");
  return SpaceParams(kappa, tau, chart_r2_max);
}

bool in_chart(const SpaceParams& space, const ChartPoint& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) return false;
  if (space.kappa() == 0) return true;
  return p.x * p.x + p.y * p.y < space.chart_radius2_max();
}

void require_in_chart(const SpaceParams& space, const ChartPoint& p) {
  if (!in_chart(space, p)) {
    throw Error(ErrorKind::OutOfChart, "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                                           ", " + std::to_string(p.z) + ") outside chart domain");
  }
}

double base_factor(const SpaceParams& space, double x, double y) {
  return 1.0 / (1.0 + space.kappa() * (x * x + y * y) / 4.0);
}

MetricTensor metric_at(const SpaceParams& space, const ChartPoint& p) {
  require_in_chart(space, p);
  const double mu = base_factor(space, p.x, p.y);
  // connection form theta = dz + w_x dx + w_y dy
  const double wx = space.tau() * mu * p.y;
  const double wy = -space.tau() * mu * p.x;
  MetricTensor g;
  g << mu * mu + wx * wx, wx * wy, wx,
       wx * wy, mu * mu + wy * wy, wy,
       wx, wy, 1.0;
  return g;
}

TangentVector vertical_field_at(const SpaceParams& space, const ChartPoint& p) {
  require_in_chart(space, p);
  return TangentVector(0.0, 0.0, 1.0);
}

Christoffel christoffel_fd(const SpaceParams& space, const ChartPoint& p, double h) {
  // dg[l](i, j) = d g_ij / d x^l
  std::array<Eigen::Matrix3d, 3> dg;
  for (int l = 0; l < 3; ++l) {
    ChartPoint plus = p;
    ChartPoint minus = p;
    double* cp = l == 0 ? &plus.x : l == 1 ? &plus.y : &plus.z;
    double* cm = l == 0 ? &minus.x : l == 1 ? &minus.y : &minus.z;
    *cp += h;
    *cm -= h;
    dg[l] = (metric_at(space, plus) - metric_at(space, minus)) / (2.0 * h);
  }
  const Eigen::Matrix3d ginv = metric_at(space, p).inverse();
  Christoffel gamma;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int l = 0; l < 3; ++l) {
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        }
        gamma[k](i, j) = 0.5 * s;
      }
    }
  }
  return gamma;
}

TangentVector cross(const MetricTensor& g, const TangentVector& X, const TangentVector& Y) {
  // lowered components are sqrt(det g) * (X x Y)_euclid
  const TangentVector lowered = std::sqrt(g.determinant()) * X.cross(Y);
  return g.ldlt().solve(lowered);
}

double check_killing_identity(const SpaceParams& space, const ChartPoint& p,
                              const TangentVector& X, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidInput, "step h must be positive");
  for (int l = 0; l < 3; ++l) {
    for (double sgn : {-1.0, 1.0}) {
      ChartPoint q = p;
      (l == 0 ? q.x : l == 1 ? q.y : q.z) += sgn * h;
      require_in_chart(space, q);
    }
  }
  const MetricTensor g = metric_at(space, p);
  const TangentVector xi = vertical_field_at(space, p);
  const Christoffel gamma = christoffel_fd(space, p, h);
  // xi has constant components, so nabla_X xi = Gamma(X, xi)
  TangentVector nabla;
  for (int k = 0; k < 3; ++k) nabla[k] = X.dot(gamma[k] * xi);
  const TangentVector diff = nabla - space.tau() * cross(g, X, xi);
  return std::sqrt(std::max(0.0, inner(g, diff, diff)));
}

double base_curvature_fd(const SpaceParams& space, double x, double y, double h) {
  auto log_mu = [&](double a, double c) { return std::log(base_factor(space, a, c)); };
  const double lap = (log_mu(x + h, y) + log_mu(x - h, y) + log_mu(x, y + h) + log_mu(x, y - h) -
                      4.0 * log_mu(x, y)) /
                     (h * h);
  const double mu = base_factor(space, x, y);
  return -lap / (mu * mu);
}

}  // namespace cmclab
