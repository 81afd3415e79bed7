#pragma once

#include <optional>

#include "cmclab/surface_patch.hpp"

namespace cmclab {

// Abresch-Rosenberg differential Q dw^2 = (2(H + i tau) p - (kappa - 4 tau^2) A^2) dw^2
// and its modulus q = 4 |Q|^2 / lambda^2.
struct ARField {
  ComplexField Q;
  ScalarField q;
  MaskField zero_mask;  // 1 where q < q_floor
  double q_floor = 0.0;

  double masked_fraction() const;
};

// q_floor defaults to 1e-9 max q, or 1e-12 when max q < 1e-9.
ARField compute_Q(const DataPatch& d, std::optional<double> q_floor = std::nullopt);

// Builds q and the zero mask from a prescribed Q (synthetic checks).
ARField ar_field_from_Q(const DataPatch& d, ComplexField Q,
                        std::optional<double> q_floor = std::nullopt);

// sup over interior nodes of |d_zbar Q|.
double holomorphicity_residual(const ARField& f, const DataPatch& d);

struct HolomorphicityStudy {
  double coarse = 0.0;
  double fine = 0.0;
  double order = 0.0;
};

HolomorphicityStudy holomorphicity_order(const DataPatch& coarse, const DataPatch& fine);

// sup |Delta ln q - 4K| over interior nodes whose 5-point stencil avoids the
// zero mask, Delta = (4 / lambda) d_z d_zbar. Throws AllMasked when fewer
// than 10% of the interior nodes qualify (e.g. q == 0 on rotational spheres).
double check_dln_q(const ARField& f, const DataPatch& d);

// p -> p + magnitude * conj(w), w = u + i v the grid coordinate. Adds
// 2 (H + i tau) magnitude to d_zbar Q.
DataPatch plant_antiholomorphic_defect(const DataPatch& d, double magnitude);

struct SyntheticDlnq {
  DataPatch data;
  ARField ar;
};

// Hyperbolic conformal factor lambda = 4 / (1 - |w|^2)^2 (K = -1) with the
// holomorphic Q = w^2 on [u_lo, u_hi] x [v_lo, v_hi] at spacing h. The
// fundamental data carry nu = -1, A = 0 and p = Q / (2(H + i tau)) in
// H2xR with H = 1, so that compute_Q reproduces Q.
SyntheticDlnq make_synthetic_dlnq(double h, double u_lo = 0.4, double u_hi = 0.6,
                                  double v_lo = -0.1, double v_hi = 0.1);

}  // namespace cmclab
