#include "cmclab/surface_patch.hpp"

#include <cmath>
#include <string>

#include "cmclab/error.hpp"

namespace cmclab {

using Vec3 = Eigen::Vector3d;

ImmersedPatch::ImmersedPatch(SpaceParams space, Grid grid, std::vector<ChartPoint> positions,
                             Parametrization tag)
    : space_(space), grid_(grid), positions_(std::move(positions)), tag_(tag) {
  if (static_cast<int>(positions_.size()) != grid_.size()) {
    throw Error(ErrorKind::InvalidInput, "position count does not match the grid");
  }
  for (const ChartPoint& p : positions_) require_in_chart(space_, p);
}

ImmersedPatch ImmersedPatch::reversed_v() const {
  std::vector<ChartPoint> flipped(positions_.size());
  for (int i = 0; i < grid_.n_u; ++i) {
    for (int j = 0; j < grid_.n_v; ++j) {
      flipped[static_cast<std::size_t>(grid_.index(i, j))] = at(i, grid_.n_v - 1 - j);
    }
  }
  return ImmersedPatch(space_, grid_, std::move(flipped), tag_);
}

DataPatch make_data_patch(const SpaceParams& space, double H, const Grid& grid) {
  if (grid.h_u != grid.h_v) {
    throw Error(ErrorKind::InvalidInput, "data patches need equal spacing in u and v");
  }
  return DataPatch{space,
                   H,
                   grid,
                   ScalarField(grid, 0.0),
                   ComplexField(grid, Complex{}),
                   ComplexField(grid, Complex{}),
                   ScalarField(grid, 0.0),
                   0.0};
}

double angle_identity_residual(const DataPatch& d) {
  NormAccumulator acc;
  for (std::size_t k = 0; k < d.lambda.values().size(); ++k) {
    const double nu = d.nu.values()[k];
    acc.add(4.0 * std::norm(d.A.values()[k]) - d.lambda.values()[k] * (1.0 - nu * nu));
  }
  return acc.sup();
}

void validate(const DataPatch& d, double rel_tol) {
  double lambda_max = 0.0;
  for (std::size_t k = 0; k < d.lambda.values().size(); ++k) {
    const double l = d.lambda.values()[k];
    if (!(l > 0.0)) throw Error(ErrorKind::InvalidInput, "lambda must be positive everywhere");
    if (!(std::abs(d.nu.values()[k]) <= 1.0 + 1e-12)) {
      throw Error(ErrorKind::InvalidInput, "|nu| exceeds 1");
    }
    lambda_max = std::max(lambda_max, l);
  }
  const double r = angle_identity_residual(d);
  if (!(r <= rel_tol * lambda_max)) {
    throw Error(ErrorKind::InvalidInput,
                "4|A|^2 = lambda (1 - nu^2) violated, residual " + std::to_string(r));
  }
}

std::pair<double, double> tangent_components(const DataPatch& d, int i, int j) {
  const double s = 2.0 / d.lambda(i, j);
  return {s * d.A(i, j).real(), -s * d.A(i, j).imag()};
}

ScalarField tangent_norm2(const DataPatch& d) {
  ScalarField out(d.grid);
  for (int i = 0; i < d.grid.n_u; ++i) {
    for (int j = 0; j < d.grid.n_v; ++j) {
      const auto [tu, tv] = tangent_components(d, i, j);
      out(i, j) = d.lambda(i, j) * (tu * tu + tv * tv);
    }
  }
  return out;
}

DataPatch rescale_gauge(const DataPatch& d, double c) {
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidInput, "gauge factor must be positive");
  Grid g = d.grid;
  g.h_u *= c;
  g.h_v *= c;
  g.u0 *= c;
  g.v0 *= c;
  DataPatch out = make_data_patch(d.space, d.H, g);
  out.H_spread = d.H_spread;
  for (std::size_t k = 0; k < d.lambda.values().size(); ++k) {
    out.lambda.values()[k] = d.lambda.values()[k] / (c * c);
    out.p.values()[k] = d.p.values()[k] / (c * c);
    out.A.values()[k] = d.A.values()[k] / c;
    out.nu.values()[k] = d.nu.values()[k];
  }
  return out;
}

DataPatch sub_patch(const DataPatch& d, int i0, int i1, int j0, int j1) {
  const Grid& g = d.grid;
  if (i0 < 0 || j0 < 0 || i1 > g.n_u || j1 > g.n_v || i0 >= i1 || j0 >= j1) {
    throw Error(ErrorKind::InvalidInput, "sub-patch window outside the grid");
  }
  Grid w = g;
  w.n_u = i1 - i0;
  w.n_v = j1 - j0;
  w.u0 = g.u(i0);
  w.v0 = g.v(j0);
  DataPatch out = make_data_patch(d.space, d.H, w);
  out.H_spread = d.H_spread;
  for (int i = 0; i < w.n_u; ++i) {
    for (int j = 0; j < w.n_v; ++j) {
      out.lambda(i, j) = d.lambda(i0 + i, j0 + j);
      out.p(i, j) = d.p(i0 + i, j0 + j);
      out.A(i, j) = d.A(i0 + i, j0 + j);
      out.nu(i, j) = d.nu(i0 + i, j0 + j);
    }
  }
  return out;
}

namespace {

struct PatchGeometry {
  ScalarField E, F, G, L, M, N;
  ScalarField xi_u, xi_v;  // <xi, X_u>, <xi, X_v>
  ScalarField nu;
};

PatchGeometry compute_geometry(const ImmersedPatch& patch, double christoffel_h,
                               double degenerate_tol) {
  const Grid& grid = patch.grid();
  if (grid.n_u < 5 || grid.n_v < 5) {
    throw Error(ErrorKind::InvalidInput, "patch grid must be at least 5x5");
  }
  Field<Vec3> X(grid);
  for (int i = 0; i < grid.n_u; ++i) {
    for (int j = 0; j < grid.n_v; ++j) {
      const ChartPoint& p = patch.at(i, j);
      X(i, j) = Vec3(p.x, p.y, p.z);
    }
  }
  Field<Vec3> Xv(grid);
  for (int i = 0; i < grid.n_u; ++i) {
    for (int j = 0; j < grid.n_v; ++j) Xv(i, j) = stencil::d_v(X, i, j);
  }

  PatchGeometry out{ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid),
                    ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid),
                    ScalarField(grid)};
  for (int i = 0; i < grid.n_u; ++i) {
    for (int j = 0; j < grid.n_v; ++j) {
      const ChartPoint& pos = patch.at(i, j);
      const Vec3 xu = stencil::d_u(X, i, j);
      const Vec3 xv = Xv(i, j);
      const Vec3 xuu = stencil::d_uu(X, i, j);
      const Vec3 xvv = stencil::d_vv(X, i, j);
      const Vec3 xuv = stencil::d_u(Xv, i, j);

      const MetricTensor g = metric_at(patch.space(), pos);
      const Christoffel gamma = christoffel_fd(patch.space(), pos, christoffel_h);
      auto gamma_of = [&](const Vec3& a, const Vec3& b) {
        return Vec3(a.dot(gamma[0] * b), a.dot(gamma[1] * b), a.dot(gamma[2] * b));
      };

      const double E = inner(g, xu, xu);
      const double F = inner(g, xu, xv);
      const double G = inner(g, xv, xv);
      if (!(E * G - F * F > degenerate_tol * degenerate_tol) || !(E > degenerate_tol)) {
        throw Error(ErrorKind::DegenerateImmersion,
                    "degenerate tangent plane at node (" + std::to_string(i) + ", " +
                        std::to_string(j) + ")");
      }
      Vec3 n = cross(g, xu, xv);
      n /= std::sqrt(inner(g, n, n));

      out.E(i, j) = E;
      out.F(i, j) = F;
      out.G(i, j) = G;
      out.L(i, j) = inner(g, n, xuu + gamma_of(xu, xu));
      out.M(i, j) = inner(g, n, xuv + gamma_of(xu, xv));
      out.N(i, j) = inner(g, n, xvv + gamma_of(xv, xv));
      const Vec3 gxi = g.col(2);  // g * xi with xi = d/dz
      out.xi_u(i, j) = gxi.dot(xu);
      out.xi_v(i, j) = gxi.dot(xv);
      out.nu(i, j) = gxi.dot(n);
    }
  }
  return out;
}

ScalarField mean_curvature_from(const PatchGeometry& geo) {
  ScalarField H(geo.E.grid());
  for (std::size_t k = 0; k < H.values().size(); ++k) {
    const double E = geo.E.values()[k], F = geo.F.values()[k], G = geo.G.values()[k];
    const double L = geo.L.values()[k], M = geo.M.values()[k], N = geo.N.values()[k];
    H.values()[k] = (G * L - 2.0 * F * M + E * N) / (2.0 * (E * G - F * F));
  }
  return H;
}

DataPatch extract_oriented(const ImmersedPatch& patch, const ExtractOptions& options,
                           const PatchGeometry& geo) {
  const Grid& grid = patch.grid();
  for (int i = 0; i < grid.n_u; ++i) {
    for (int j = 0; j < grid.n_v; ++j) {
      if (!grid.interior(i, j)) continue;
      const double lambda = geo.E(i, j);
      if (std::abs(geo.F(i, j)) > options.isothermal_tol * lambda ||
          std::abs(geo.E(i, j) - geo.G(i, j)) > options.isothermal_tol * lambda) {
        throw Error(ErrorKind::NotIsothermal,
                    "metric not conformal at node (" + std::to_string(i) + ", " +
                        std::to_string(j) + ")");
      }
    }
  }
  const ScalarField Hf = mean_curvature_from(geo);
  const Range hr = field_range(Hf, true);

  // Border values come from one-sided stencils whose error is not smooth
  // across the border; the data patch keeps only the central-stencil nodes.
  Grid inner = grid;
  inner.n_u -= 2;
  inner.n_v -= 2;
  inner.u0 += grid.h_u;
  inner.v0 += grid.h_v;
  DataPatch d = make_data_patch(patch.space(), hr.mean, inner);
  d.H_spread = hr.spread();
  for (int i = 0; i < inner.n_u; ++i) {
    for (int j = 0; j < inner.n_v; ++j) {
      const int a = i + 1, b = j + 1;
      d.lambda(i, j) = geo.E(a, b);
      d.p(i, j) = 0.25 * Complex(geo.L(a, b) - geo.N(a, b), -2.0 * geo.M(a, b));
      d.A(i, j) = 0.5 * Complex(geo.xi_u(a, b), -geo.xi_v(a, b));
      d.nu(i, j) = geo.nu(a, b);
    }
  }
  return d;
}

}  // namespace

DataPatch extract_data(const ImmersedPatch& patch, const ExtractOptions& options) {
  if (patch.tag() != Parametrization::Isothermal) {
    throw Error(ErrorKind::NotIsothermal, "extract_data needs an isothermal parametrization");
  }
  PatchGeometry geo = compute_geometry(patch, options.christoffel_h, options.degenerate_tol);
  const Grid& grid = patch.grid();
  if (geo.nu(grid.n_u / 2, grid.n_v / 2) > options.anchor_tol) {
    const ImmersedPatch flipped = patch.reversed_v();
    geo = compute_geometry(flipped, options.christoffel_h, options.degenerate_tol);
    return extract_oriented(flipped, options, geo);
  }
  return extract_oriented(patch, options, geo);
}

ScalarField mean_curvature_field(const ImmersedPatch& patch, double christoffel_h) {
  return mean_curvature_from(compute_geometry(patch, christoffel_h, 1e-12));
}

namespace {

Isothermalization integrate_half_samples(std::span<const double> E, std::span<const double> F,
                                         std::span<const double> G, std::span<const double> s,
                                         std::span<const double> widths) {
  const std::size_t m = s.size();
  Isothermalization out;
  out.s.assign(s.begin(), s.end());
  out.u.assign(m, 0.0);
  out.t_shift.assign(m, 0.0);
  out.lambda.assign(m, 0.0);
  auto speed = [&](std::size_t k) {
    const double reduced = E[k] - F[k] * F[k] / G[k];
    if (!(reduced > 0.0) || !(G[k] > 0.0)) {
      throw Error(ErrorKind::DegenerateMetric, "E - F^2/G must stay positive");
    }
    return std::sqrt(reduced / G[k]);
  };
  auto shift = [&](std::size_t k) { return F[k] / G[k]; };
  for (std::size_t k = 0; k < m; ++k) {
    out.lambda[k] = G[2 * k];
    if (k == 0) {
      speed(0);
      continue;
    }
    const std::size_t a = 2 * (k - 1), mid = a + 1, b = a + 2;
    const double w = widths[k - 1] / 6.0;
    out.u[k] = out.u[k - 1] + w * (speed(a) + 4.0 * speed(mid) + speed(b));
    out.t_shift[k] = out.t_shift[k - 1] + w * (shift(a) + 4.0 * shift(mid) + shift(b));
  }
  return out;
}

}  // namespace

Isothermalization isothermalize_cohomogeneity1(const std::function<double(double)>& E,
                                               const std::function<double(double)>& F,
                                               const std::function<double(double)>& G,
                                               std::span<const double> s_nodes) {
  if (s_nodes.empty()) throw Error(ErrorKind::InvalidInput, "need at least one node");
  std::vector<double> e, f, g, widths;
  for (std::size_t k = 0; k < s_nodes.size(); ++k) {
    const double s = s_nodes[k];
    e.push_back(E(s));
    f.push_back(F(s));
    g.push_back(G(s));
    if (k + 1 < s_nodes.size()) {
      const double mid = 0.5 * (s + s_nodes[k + 1]);
      e.push_back(E(mid));
      f.push_back(F(mid));
      g.push_back(G(mid));
      widths.push_back(s_nodes[k + 1] - s);
    }
  }
  return integrate_half_samples(e, f, g, s_nodes, widths);
}

Isothermalization isothermalize_cohomogeneity1(std::span<const double> E_half,
                                               std::span<const double> F_half,
                                               std::span<const double> G_half, double s0,
                                               double h) {
  if (E_half.size() % 2 == 0 || E_half.size() != F_half.size() ||
      E_half.size() != G_half.size()) {
    throw Error(ErrorKind::InvalidInput, "half-step samples must have matching odd length");
  }
  const std::size_t m = (E_half.size() + 1) / 2;
  std::vector<double> s(m), widths(m > 0 ? m - 1 : 0, h);
  for (std::size_t k = 0; k < m; ++k) s[k] = s0 + static_cast<double>(k) * h;
  return integrate_half_samples(E_half, F_half, G_half, s, widths);
}

}  // namespace cmclab
