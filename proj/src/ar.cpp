#include "cmclab/ar.hpp"

#include <algorithm>
#include <cmath>

#include "cmclab/compatibility.hpp"
#include "cmclab/error.hpp"

namespace cmclab {

double ARField::masked_fraction() const {
  const auto& m = zero_mask.values();
  if (m.empty()) return 0.0;
  return static_cast<double>(std::count(m.begin(), m.end(), std::uint8_t{1})) /
         static_cast<double>(m.size());
}

ARField ar_field_from_Q(const DataPatch& d, ComplexField Q, std::optional<double> q_floor) {
  if (!(Q.grid() == d.grid)) throw Error(ErrorKind::InvalidInput, "Q grid mismatch");
  ARField f{std::move(Q), ScalarField(d.grid), MaskField(d.grid, 0), 0.0};
  double q_max = 0.0;
  for (std::size_t k = 0; k < f.q.values().size(); ++k) {
    const double l = d.lambda.values()[k];
    f.q.values()[k] = 4.0 * std::norm(f.Q.values()[k]) / (l * l);
    q_max = std::max(q_max, f.q.values()[k]);
  }
  f.q_floor = q_floor ? *q_floor : (q_max < 1e-9 ? 1e-12 : 1e-9 * q_max);
  for (std::size_t k = 0; k < f.q.values().size(); ++k) {
    f.zero_mask.values()[k] = f.q.values()[k] < f.q_floor ? 1 : 0;
  }
  return f;
}

ARField compute_Q(const DataPatch& d, std::optional<double> q_floor) {
  const Complex h_plus(d.H, d.space.tau());
  const double b = d.space.b();
  ComplexField Q(d.grid);
  for (std::size_t k = 0; k < Q.values().size(); ++k) {
    const Complex A = d.A.values()[k];
    Q.values()[k] = 2.0 * h_plus * d.p.values()[k] - b * A * A;
  }
  return ar_field_from_Q(d, std::move(Q), q_floor);
}

double holomorphicity_residual(const ARField& f, const DataPatch& d) {
  if (d.grid.n_u < 5 || d.grid.n_v < 5) {
    throw Error(ErrorKind::InvalidInput, "holomorphicity check needs a 5x5 grid");
  }
  NormAccumulator acc;
  for (int i = 1; i < d.grid.n_u - 1; ++i) {
    for (int j = 1; j < d.grid.n_v - 1; ++j) acc.add(std::abs(stencil::d_zbar(f.Q, i, j)));
  }
  return acc.sup();
}

HolomorphicityStudy holomorphicity_order(const DataPatch& coarse, const DataPatch& fine) {
  HolomorphicityStudy s;
  s.coarse = holomorphicity_residual(compute_Q(coarse), coarse);
  s.fine = holomorphicity_residual(compute_Q(fine), fine);
  s.order = observed_order(s.coarse, s.fine, coarse.h(), fine.h());
  return s;
}

double check_dln_q(const ARField& f, const DataPatch& d) {
  const Grid& g = d.grid;
  if (g.n_u < 5 || g.n_v < 5) throw Error(ErrorKind::InvalidInput, "need a 5x5 grid");
  ScalarField log_q(g, 0.0);
  for (std::size_t k = 0; k < log_q.values().size(); ++k) {
    if (!f.zero_mask.values()[k]) log_q.values()[k] = std::log(f.q.values()[k]);
  }
  const ScalarField K = gauss_curvature(d);
  auto usable = [&](int i, int j) {
    return !f.zero_mask(i, j) && !f.zero_mask(i + 1, j) && !f.zero_mask(i - 1, j) &&
           !f.zero_mask(i, j + 1) && !f.zero_mask(i, j - 1);
  };
  NormAccumulator acc;
  long interior = 0;
  for (int i = 1; i < g.n_u - 1; ++i) {
    for (int j = 1; j < g.n_v - 1; ++j) {
      ++interior;
      if (!usable(i, j)) continue;
      acc.add(stencil::laplacian(log_q, i, j) / d.lambda(i, j) - 4.0 * K(i, j));
    }
  }
  if (acc.count() == 0 || 10 * acc.count() < interior) {
    throw Error(ErrorKind::AllMasked,
                "q is below its floor on too many nodes; Delta ln q = 4K is vacuous here");
  }
  return acc.sup();
}

DataPatch plant_antiholomorphic_defect(const DataPatch& d, double magnitude) {
  DataPatch out = d;
  for (int i = 0; i < d.grid.n_u; ++i) {
    for (int j = 0; j < d.grid.n_v; ++j) {
      out.p(i, j) += magnitude * Complex(d.grid.u(i), -d.grid.v(j));
    }
  }
  return out;
}

SyntheticDlnq make_synthetic_dlnq(double h, double u_lo, double u_hi, double v_lo, double v_hi) {
  if (!(h > 0.0) || !(u_hi > u_lo) || !(v_hi > v_lo)) {
    throw Error(ErrorKind::InvalidInput, "bad synthetic patch box");
  }
  const int n_u = static_cast<int>(std::lround((u_hi - u_lo) / h)) + 1;
  const int n_v = static_cast<int>(std::lround((v_hi - v_lo) / h)) + 1;
  const Grid grid = make_grid(n_u, n_v, h, u_lo, v_lo);
  const SpaceParams space = make_space(-1, 0.0);
  const double H = 1.0;
  DataPatch d = make_data_patch(space, H, grid);
  ComplexField Q(grid);
  for (int i = 0; i < n_u; ++i) {
    for (int j = 0; j < n_v; ++j) {
      const Complex w(grid.u(i), grid.v(j));
      const double r2 = std::norm(w);
      if (!(r2 < 1.0)) throw Error(ErrorKind::InvalidInput, "synthetic box leaves the unit disk");
      d.lambda(i, j) = 4.0 / ((1.0 - r2) * (1.0 - r2));
      d.nu(i, j) = -1.0;
      d.A(i, j) = Complex{};
      Q(i, j) = w * w;
      d.p(i, j) = Q(i, j) / (2.0 * Complex(H, space.tau()));
    }
  }
  ARField ar = ar_field_from_Q(d, std::move(Q));
  return SyntheticDlnq{std::move(d), std::move(ar)};
}

}  // namespace cmclab
