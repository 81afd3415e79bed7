#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cmclab/grid.hpp"
#include "cmclab/space_kernel.hpp"

namespace cmclab {

enum class Parametrization { Isothermal, Cohomogeneity1, General };

// Chart positions of a surface sampled on a rectangular (u, v) lattice.
class ImmersedPatch {
 public:
  // Throws OutOfChart if any position leaves the chart domain.
  ImmersedPatch(SpaceParams space, Grid grid, std::vector<ChartPoint> positions,
                Parametrization tag);

  const SpaceParams& space() const noexcept { return space_; }
  const Grid& grid() const noexcept { return grid_; }
  Parametrization tag() const noexcept { return tag_; }
  const ChartPoint& at(int i, int j) const {
    return positions_[static_cast<std::size_t>(grid_.index(i, j))];
  }
  const std::vector<ChartPoint>& positions() const noexcept { return positions_; }

  // Same surface with the v direction reversed (flips the induced orientation).
  ImmersedPatch reversed_v() const;

 private:
  SpaceParams space_;
  Grid grid_;
  std::vector<ChartPoint> positions_;
  Parametrization tag_;
};

// Fundamental data (lambda, p, A, nu) with constant H on an isothermal grid
// w = u + i v. The Hopf coefficient p and the pairing A = <xi, d/dw> are
// complex; nu = <N, xi> is the angle function.
struct DataPatch {
  SpaceParams space;
  double H = 0.0;
  Grid grid;
  ScalarField lambda;
  ComplexField p;
  ComplexField A;
  ScalarField nu;
  // Spread of the measured mean curvature when the data came from an
  // immersion; zero for closed-form data.
  double H_spread = 0.0;

  double h() const noexcept { return grid.h_u; }
};

// Allocates fields for `grid` (requires h_u == h_v).
DataPatch make_data_patch(const SpaceParams& space, double H, const Grid& grid);

// sup |4|A|^2 - lambda (1 - nu^2)| over all nodes.
double angle_identity_residual(const DataPatch& d);

// Checks lambda > 0, |nu| <= 1 + 1e-12 and the angle identity within
// rel_tol * sup lambda; throws InvalidInput otherwise.
void validate(const DataPatch& d, double rel_tol = 1e-6);

// Real components (T^u, T^v) of the tangent part of xi, reconstructed from
// A as T = (2 / lambda)(conj(A) d/dw + A d/dwbar).
std::pair<double, double> tangent_components(const DataPatch& d, int i, int j);

// ||T||^2 = lambda ((T^u)^2 + (T^v)^2); equals 1 - nu^2 on genuine data.
ScalarField tangent_norm2(const DataPatch& d);

// Gauge change w -> c w: h -> c h, lambda -> lambda / c^2, p -> p / c^2,
// A -> A / c. Intrinsic quantities (K, q, nu) are unchanged.
DataPatch rescale_gauge(const DataPatch& d, double c);

// Nodes [i0, i1) x [j0, j1) of d as a patch of its own. Throws InvalidInput
// for an empty or out-of-range window.
DataPatch sub_patch(const DataPatch& d, int i0, int i1, int j0, int j1);

struct ExtractOptions {
  // relative tolerance of the isothermality check at interior nodes
  double isothermal_tol = 1e-3;
  double degenerate_tol = 1e-12;
  double christoffel_h = 1e-4;
  // the v direction is reversed when nu at the centre node exceeds this
  double anchor_tol = 1e-8;
};

// Fundamental data of an isothermal immersion. The normal is N = X_u x X_v
// normalized; if nu > 0 at the centre node the v direction is reversed first
// so that nu <= 0 there. H is the mean of the interior mean-curvature field
// and its spread is stored in H_spread. The returned patch covers the
// interior nodes only (one node is cropped on every side).
DataPatch extract_data(const ImmersedPatch& patch, const ExtractOptions& options = {});

// Pointwise mean curvature with respect to N = X_u x X_v / |X_u x X_v|.
ScalarField mean_curvature_field(const ImmersedPatch& patch, double christoffel_h = 1e-4);

// Conformal coordinates for a metric E ds^2 + 2 F ds dt + G dt^2 whose
// coefficients depend on s only:
//   t' = t + int F / G ds,   u = int sqrt((E - F^2 / G) / G) ds,
// so the metric becomes G (du^2 + dt'^2). For G = 1 this is
// u = int sqrt(E - F^2) ds. Cumulative integrals use composite Simpson with
// interval midpoints.
struct Isothermalization {
  std::vector<double> s;
  std::vector<double> u;
  std::vector<double> t_shift;  // int_{s_0}^{s} F / G ds
  std::vector<double> lambda;   // G(s)
};

Isothermalization isothermalize_cohomogeneity1(const std::function<double(double)>& E,
                                               const std::function<double(double)>& F,
                                               const std::function<double(double)>& G,
                                               std::span<const double> s_nodes);

// Same, from samples at half-step resolution: entry 2k is node k, entry
// 2k + 1 the midpoint between nodes k and k + 1; node spacing h.
Isothermalization isothermalize_cohomogeneity1(std::span<const double> E_half,
                                               std::span<const double> F_half,
                                               std::span<const double> G_half, double s0,
                                               double h);

}  // namespace cmclab
