#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cmclab/surface_patch.hpp"

namespace cmclab {

// Discrete check of the zero-set dichotomy for Delta v + g v = 0 with
// ||grad v||^2 <= h v^2: either v never vanishes or v vanishes identically.
// On a patch both alternatives are asserted patch-wise only.

enum class Conclusion { NeverVanishes, VanishesIdentically, Violated, NotApplicable };

std::string_view to_string(Conclusion c);

struct DichotomyOptions {
  double zero_tol = 1e-7;  // |v| <= zero_tol (sup |v| + tiny) counts as a zero
  // sup |Delta v + g v| relative to sup |Delta v| + sup |g v|, plus the
  // rounding level of the 5-point stencil
  double pde_tol = 1e-5;
  double grad_tol = 1e-5;  // sup (||grad v||^2 - h v^2)_+ relative to sup ||grad v||^2 + sup h v^2
};

struct DichotomyResult {
  bool hypothesis_ok = false;
  bool pde_ok = false;
  bool gradient_ok = false;
  double pde_residual = 0.0;     // sup |Delta v + g v| over interior nodes
  double gradient_excess = 0.0;  // sup (||grad v||^2 - h v^2)_+ over interior nodes
  Conclusion conclusion = Conclusion::NotApplicable;
  long zero_nodes = 0;
  long nonzero_nodes = 0;
  std::vector<std::string> notes;
};

// Delta = Delta_flat / lambda and ||grad v||^2 = 4 |v_w|^2 / lambda on the
// grid of v. All fields must share that grid; h must be nonnegative.
DichotomyResult dichotomy_check(const ScalarField& v, const ScalarField& g, const ScalarField& h,
                                const ScalarField& lambda, const DichotomyOptions& options = {});

// g = 4H^2 + 2 tau^2 + b (1 - nu^2) - 2 K_e, the potential of the Jacobi
// equation Delta nu + g nu = 0.
ScalarField jacobi_potential(const DataPatch& d);

// sup over interior nodes of ||grad nu||^2 / nu^2 (infinite if nu has a zero).
double gradient_ratio_bound(const DataPatch& d);

// dichotomy_check for v = nu with the Jacobi potential and a constant h.
DichotomyResult jacobi_consistency(const DataPatch& d, double h,
                                   const DichotomyOptions& options = {});

}  // namespace cmclab
