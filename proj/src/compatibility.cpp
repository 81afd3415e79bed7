#include "cmclab/compatibility.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "cmclab/ar.hpp"
#include "cmclab/error.hpp"

namespace cmclab {

const ResidualEntry* ResidualReport::find(const std::string& id) const {
  for (const ResidualEntry& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

ResidualEntry* ResidualReport::find(const std::string& id) {
  for (ResidualEntry& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

double ResidualReport::max_sup() const {
  double m = 0.0;
  for (const ResidualEntry& e : entries) {
    if (e.applicable) m = std::max(m, e.sup);
  }
  return m;
}

namespace {

void require_grid(const DataPatch& d) {
  if (d.grid.n_u < 5 || d.grid.n_v < 5) {
    throw Error(ErrorKind::InvalidInput, "verification needs at least a 5x5 grid");
  }
}

// Reduces a pointwise residual over interior nodes. `weight` is the
// conformal weight of the equation: under w -> c w its terms scale like
// lambda^weight, so |residual| / lambda^weight is gauge invariant.
ResidualEntry reduce(const DataPatch& d, std::string id, bool differential, double weight,
                     const std::function<double(int, int)>& residual) {
  NormAccumulator abs_acc, rel_acc;
  const Grid& g = d.grid;
  for (int i = 1; i < g.n_u - 1; ++i) {
    for (int j = 1; j < g.n_v - 1; ++j) {
      const double r = residual(i, j);
      abs_acc.add(r);
      rel_acc.add(r / std::pow(d.lambda(i, j), weight));
    }
  }
  ResidualEntry e;
  e.id = std::move(id);
  e.differential = differential;
  e.sup = abs_acc.sup();
  e.mean = abs_acc.mean();
  e.rel_sup = rel_acc.sup();
  return e;
}

}  // namespace

ScalarField gauss_curvature(const DataPatch& d) {
  require_grid(d);
  ScalarField log_lambda(d.grid);
  for (std::size_t k = 0; k < log_lambda.values().size(); ++k) {
    log_lambda.values()[k] = std::log(d.lambda.values()[k]);
  }
  ScalarField K(d.grid, std::numeric_limits<double>::quiet_NaN());
  for (int i = 1; i < d.grid.n_u - 1; ++i) {
    for (int j = 1; j < d.grid.n_v - 1; ++j) {
      // d_z d_zbar = Delta_flat / 4
      K(i, j) = -0.5 * stencil::laplacian(log_lambda, i, j) / d.lambda(i, j);
    }
  }
  return K;
}

ScalarField extrinsic_curvature(const DataPatch& d) {
  ScalarField Ke(d.grid);
  for (std::size_t k = 0; k < Ke.values().size(); ++k) {
    const double l = d.lambda.values()[k];
    Ke.values()[k] = d.H * d.H - 4.0 * std::norm(d.p.values()[k]) / (l * l);
  }
  return Ke;
}

ResidualReport verify_lemma21(const DataPatch& d) {
  require_grid(d);
  const double H = d.H;
  const double tau = d.space.tau();
  const double b = d.space.b();
  const Complex h_plus(H, tau);
  const Complex h_minus(H, -tau);
  const ScalarField K = gauss_curvature(d);
  const ScalarField Ke = extrinsic_curvature(d);

  ResidualReport rep;
  rep.h = d.h();
  rep.H_spread = d.H_spread;
  rep.entries.push_back(reduce(d, "2.2", true, 0.0, [&](int i, int j) {
    const double nu = d.nu(i, j);
    return K(i, j) - (Ke(i, j) + tau * tau + b * nu * nu);
  }));
  rep.entries.push_back(reduce(d, "2.3", true, 1.5, [&](int i, int j) {
    return std::abs(stencil::d_zbar(d.p, i, j) - 0.5 * d.lambda(i, j) * b * d.nu(i, j) * d.A(i, j));
  }));
  rep.entries.push_back(reduce(d, "2.4", true, 1.0, [&](int i, int j) {
    return std::abs(stencil::d_zbar(d.A, i, j) - 0.5 * d.lambda(i, j) * h_plus * d.nu(i, j));
  }));
  rep.entries.push_back(reduce(d, "2.5", true, 0.5, [&](int i, int j) {
    const Complex rhs = -h_minus * d.A(i, j) - 2.0 / d.lambda(i, j) * d.p(i, j) * std::conj(d.A(i, j));
    return std::abs(stencil::d_z(d.nu, i, j) - rhs);
  }));
  rep.entries.push_back(reduce(d, "2.6", false, 1.0, [&](int i, int j) {
    const double nu = d.nu(i, j);
    return 4.0 * std::norm(d.A(i, j)) - d.lambda(i, j) * (1.0 - nu * nu);
  }));
  rep.entries.push_back(reduce(d, "2.7", true, 1.0, [&](int i, int j) {
    const Complex rhs =
        stencil::d_z(d.lambda, i, j) / d.lambda(i, j) * d.A(i, j) + d.p(i, j) * d.nu(i, j);
    return std::abs(stencil::d_z(d.A, i, j) - rhs);
  }));
  return rep;
}

ResidualReport verify_lemma22(const DataPatch& d, const ARField& ar) {
  require_grid(d);
  const double H = d.H;
  const double tau = d.space.tau();
  const double kappa = d.space.kappa();
  const double b = d.space.b();
  const ScalarField Ke = extrinsic_curvature(d);

  ResidualReport rep;
  rep.h = d.h();
  rep.H_spread = d.H_spread;
  if (d.space.degenerate()) {
    ResidualEntry e;
    e.id = "2.8";
    e.applicable = false;
    e.note = "kappa - 4 tau^2 = 0";
    rep.entries.push_back(e);
  } else {
    rep.entries.push_back(reduce(d, "2.8", true, 0.0, [&](int i, int j) {
      const double nu = d.nu(i, j);
      const double grad2 = 4.0 / d.lambda(i, j) * std::norm(stencil::d_z(d.nu, i, j));
      const double g = 4.0 * H * H + kappa - b * nu * nu;
      const double rhs =
          g / (4.0 * b) * (4.0 * (H * H - Ke(i, j)) + b * (1.0 - nu * nu)) - ar.q(i, j) / b;
      return grad2 - rhs;
    }));
  }
  rep.entries.push_back(reduce(d, "2.9", true, 0.0, [&](int i, int j) {
    const double nu = d.nu(i, j);
    const double lap = stencil::laplacian(d.nu, i, j) / d.lambda(i, j);
    return lap + (4.0 * H * H + 2.0 * tau * tau + b * (1.0 - nu * nu) - 2.0 * Ke(i, j)) * nu;
  }));
  return rep;
}

ResidualReport verify_all(const DataPatch& d, const ARField& ar) {
  ResidualReport rep = verify_lemma21(d);
  for (ResidualEntry& e : verify_lemma22(d, ar).entries) rep.entries.push_back(std::move(e));
  return rep;
}

double observed_order(double r_coarse, double r_fine, double h_coarse, double h_fine) {
  return std::log(r_coarse / r_fine) / std::log(h_coarse / h_fine);
}

void attach_orders(std::vector<ResidualReport>& levels, double noise_floor) {
  for (std::size_t k = 1; k < levels.size(); ++k) {
    for (ResidualEntry& fine : levels[k].entries) {
      const ResidualEntry* coarse = levels[k - 1].find(fine.id);
      if (!coarse || !fine.differential || !fine.applicable || !coarse->applicable) continue;
      if (!(coarse->sup > noise_floor) || !(fine.sup > 0.0)) continue;
      fine.order = observed_order(coarse->sup, fine.sup, levels[k - 1].h, levels[k].h);
    }
  }
}

std::string residuals_csv(const std::vector<ResidualReport>& levels) {
  std::ostringstream os;
  os << "equation,h,sup,mean,order\n";
  char buf[200];
  for (const ResidualReport& rep : levels) {
    for (const ResidualEntry& e : rep.entries) {
      if (!e.applicable) continue;
      if (e.order) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g\n", e.id.c_str(), rep.h, e.sup,
                      e.mean, *e.order);
      } else {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,\n", e.id.c_str(), rep.h, e.sup,
                      e.mean);
      }
      os << buf;
    }
  }
  return os.str();
}

}  // namespace cmclab
