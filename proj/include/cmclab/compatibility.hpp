#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmclab/surface_patch.hpp"

namespace cmclab {

struct ARField;

// Residual of one fundamental equation over interior nodes.
struct ResidualEntry {
  std::string id;        // "2.2" ... "2.9"
  bool differential = true;
  bool applicable = true;
  double sup = 0.0;
  double mean = 0.0;
  double rel_sup = 0.0;  // sup of |residual| / lambda^w, w the conformal weight (gauge invariant)
  std::optional<double> order;
  std::string note;
};

struct ResidualReport {
  double h = 0.0;
  double H_spread = 0.0;
  std::vector<ResidualEntry> entries;

  const ResidualEntry* find(const std::string& id) const;
  ResidualEntry* find(const std::string& id);
  // Largest sup norm over applicable entries.
  double max_sup() const;
};

// K = -(2 / lambda) d_z d_zbar ln(lambda) at interior nodes; border nodes
// hold NaN.
ScalarField gauss_curvature(const DataPatch& d);

// K_e = H^2 - 4 |p|^2 / lambda^2 at every node.
ScalarField extrinsic_curvature(const DataPatch& d);

// Equations 2.2-2.7: Gauss equation, Codazzi equation for p (CMC, so the
// H_z term is absent), the equations for A_zbar, nu_z, |A|^2 and A_z.
// Only 2.6 is algebraic; 2.2 differentiates lambda through K.
ResidualReport verify_lemma21(const DataPatch& d);

// Equations 2.8 (|grad nu|^2 in terms of K_e and q) and 2.9 (Jacobi
// equation for nu). 2.8 divides by kappa - 4 tau^2 and is reported as not
// applicable on the flat model.
ResidualReport verify_lemma22(const DataPatch& d, const ARField& ar);

// Both reports merged into one (2.2 ... 2.9).
ResidualReport verify_all(const DataPatch& d, const ARField& ar);

// Observed order log(r_coarse / r_fine) / log(h_coarse / h_fine) for each
// differential entry of consecutive levels, stored on the finer level.
// Entries whose coarse sup is below noise_floor get no order.
void attach_orders(std::vector<ResidualReport>& levels, double noise_floor = 1e-11);

double observed_order(double r_coarse, double r_fine, double h_coarse, double h_fine);

// CSV rows "equation,h,sup,mean,order" for every level.
std::string residuals_csv(const std::vector<ResidualReport>& levels);

}  // namespace cmclab
