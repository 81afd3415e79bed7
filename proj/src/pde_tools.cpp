#include "cmclab/pde_tools.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmclab/compatibility.hpp"
#include "cmclab/error.hpp"

namespace cmclab {

std::string_view to_string(Conclusion c) {
  switch (c) {
    case Conclusion::NeverVanishes: return "NeverVanishes";
    case Conclusion::VanishesIdentically: return "VanishesIdentically";
    case Conclusion::Violated: return "Violated";
    case Conclusion::NotApplicable: return "NotApplicable";
  }
  return "NotApplicable";
}

namespace {

bool same_shape(const Grid& a, const Grid& b) { return a.n_u == b.n_u && a.n_v == b.n_v; }

}  // namespace

DichotomyResult dichotomy_check(const ScalarField& v, const ScalarField& g, const ScalarField& h,
                                const ScalarField& lambda, const DichotomyOptions& options) {
  const Grid& grid = v.grid();
  if (!same_shape(grid, g.grid()) || !same_shape(grid, h.grid()) ||
      !same_shape(grid, lambda.grid())) {
    throw Error(ErrorKind::InvalidInput, "dichotomy fields must share one grid");
  }
  if (grid.n_u < 3 || grid.n_v < 3) {
    throw Error(ErrorKind::InvalidInput, "dichotomy check needs interior nodes");
  }
  for (double x : h.values()) {
    if (!(x >= 0.0)) throw Error(ErrorKind::InvalidInput, "h must be nonnegative");
  }

  DichotomyResult out;
  double lap_sup = 0.0, gv_sup = 0.0, grad_sup = 0.0, hv_sup = 0.0, rounding = 0.0;
  const double stencil_gain = 4.0 / (grid.h_u * grid.h_u) + 4.0 / (grid.h_v * grid.h_v);
  for (int i = 1; i + 1 < grid.n_u; ++i) {
    for (int j = 1; j + 1 < grid.n_v; ++j) {
      const double lam = lambda(i, j);
      const double lap = stencil::laplacian(v, i, j) / lam;
      const double gv = g(i, j) * v(i, j);
      const double grad2 = 4.0 * std::norm(stencil::d_z(v, i, j)) / lam;
      const double hv2 = h(i, j) * v(i, j) * v(i, j);
      lap_sup = std::max(lap_sup, std::abs(lap));
      gv_sup = std::max(gv_sup, std::abs(gv));
      grad_sup = std::max(grad_sup, grad2);
      hv_sup = std::max(hv_sup, hv2);
      rounding = std::max(rounding, 16.0 * std::numeric_limits<double>::epsilon() *
                                        std::abs(v(i, j)) * stencil_gain / lam);
      out.pde_residual = std::max(out.pde_residual, std::abs(lap + gv));
      out.gradient_excess = std::max(out.gradient_excess, grad2 - hv2);
    }
  }
  out.pde_ok = out.pde_residual <= options.pde_tol * (lap_sup + gv_sup) + rounding;
  out.gradient_ok = out.gradient_excess <= options.grad_tol * (grad_sup + hv_sup);
  out.hypothesis_ok = out.pde_ok && out.gradient_ok;

  double v_sup = 0.0;
  for (double x : v.values()) v_sup = std::max(v_sup, std::abs(x));
  const double threshold = options.zero_tol * (v_sup + std::numeric_limits<double>::min());
  for (double x : v.values()) {
    if (std::abs(x) <= threshold) {
      ++out.zero_nodes;
    } else {
      ++out.nonzero_nodes;
    }
  }

  if (!out.hypothesis_ok) {
    out.conclusion = Conclusion::NotApplicable;
    if (!out.pde_ok) out.notes.push_back("Delta v + g v = 0 fails beyond tolerance");
    if (!out.gradient_ok) out.notes.push_back("||grad v||^2 <= h v^2 fails beyond tolerance");
  } else if (out.nonzero_nodes == 0) {
    out.conclusion = Conclusion::VanishesIdentically;
  } else if (out.zero_nodes == 0) {
    out.conclusion = Conclusion::NeverVanishes;
  } else {
    out.conclusion = Conclusion::Violated;
    out.notes.push_back("v has zero and nonzero nodes although the hypotheses hold");
  }
  out.notes.push_back("conclusion holds on the patch only");
  return out;
}

ScalarField jacobi_potential(const DataPatch& d) {
  const ScalarField Ke = extrinsic_curvature(d);
  const double H = d.H;
  const double tau = d.space.tau();
  const double b = d.space.b();
  ScalarField g(d.grid, 0.0);
  for (std::size_t k = 0; k < g.values().size(); ++k) {
    const double nu = d.nu.values()[k];
    g.values()[k] = 4.0 * H * H + 2.0 * tau * tau + b * (1.0 - nu * nu) - 2.0 * Ke.values()[k];
  }
  return g;
}

double gradient_ratio_bound(const DataPatch& d) {
  double worst = 0.0;
  for (int i = 1; i + 1 < d.grid.n_u; ++i) {
    for (int j = 1; j + 1 < d.grid.n_v; ++j) {
      const double nu = d.nu(i, j);
      const double grad2 = 4.0 * std::norm(stencil::d_z(d.nu, i, j)) / d.lambda(i, j);
      if (nu == 0.0) {
        if (grad2 > 0.0) return std::numeric_limits<double>::infinity();
        continue;
      }
      worst = std::max(worst, grad2 / (nu * nu));
    }
  }
  return worst;
}

DichotomyResult jacobi_consistency(const DataPatch& d, double h, const DichotomyOptions& options) {
  if (!(h >= 0.0)) throw Error(ErrorKind::InvalidInput, "h must be nonnegative");
  return dichotomy_check(d.nu, jacobi_potential(d), ScalarField(d.grid, h), d.lambda, options);
}

}  // namespace cmclab
