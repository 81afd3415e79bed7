// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are pinned
// here and not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cmclab/ar.hpp"
#include "cmclab/canonical.hpp"
#include "cmclab/classify.hpp"
#include "cmclab/compatibility.hpp"
#include "cmclab/error.hpp"
#include "cmclab/pde_tools.hpp"

using namespace cmclab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void fail(Outcome& o, const std::string& why) {
  o.pass = false;
  o.detail += (o.detail.empty() ? "" : "; ") + why;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Params {
  int kappa;
  double tau, H;
};

SpaceParams space_of(const Params& p) { return make_space(p.kappa, p.tau); }

// Twelve cylinders over all five geometries, including the two flat
// branches with 4H^2 + kappa = 0.
const std::vector<Params> kCylinders = {
    {-1, 0.0, 0.5}, {-1, 0.0, 0.8}, {-1, 0.0, 0.3}, {1, 0.0, 0.5},  {1, 0.0, 0.0},  {0, 0.5, 0.0},
    {0, 0.5, 0.5},  {0, 0.25, 1.0}, {-1, 0.5, 0.5}, {-1, 0.25, 1.0}, {1, 0.25, 0.5}, {1, 0.1, 0.3}};

// Rotational sphere data with K > 0 at both the poles and the equator.
const std::vector<Params> kSpheres = {
    {-1, 0.0, 1.0}, {0, 0.5, 1.0}, {1, 0.25, 0.5}, {1, 0.0, 1.0}, {-1, 0.25, 1.2}};

const std::vector<Params> kSFamily = {{-1, 0.0, 0.25}, {-1, 0.5, 0.1}, {-1, 0.2, 0.3}};

// 1. Structure equations on sphere data with convergence orders.
Outcome criterion1() {
  constexpr double kSupTol = 1e-4;
  constexpr double kMinOrder = 1.9;
  constexpr double kMaxSeconds = 10.0;
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const SpaceParams space = make_space(-1, 0.0);
  std::vector<ResidualReport> levels;
  for (const int n : {501, 1001, 2001, 4001}) {
    const DataPatch d = gen_rotational_sphere_data(space, 1.0, -2.0, 2.0, n);
    levels.push_back(verify_all(d, compute_Q(d)));
  }
  attach_orders(levels);
  const ResidualReport& fine = levels.back();
  if (std::abs(fine.h - 1e-3) > 1e-15) fail(o, "finest h is not 1e-3");
  double worst_sup = 0.0;
  for (const ResidualEntry& e : fine.entries) {
    worst_sup = std::max(worst_sup, e.sup);
    if (!(e.sup <= kSupTol)) fail(o, fmt("eq %s sup %.3e", e.id.c_str(), e.sup));
  }
  double worst_order = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < levels.size(); ++k) {
    for (const ResidualEntry& e : levels[k].entries) {
      if (!e.differential) continue;
      if (!e.order) {
        fail(o, fmt("eq %s level %zu has no order", e.id.c_str(), k));
        continue;
      }
      worst_order = std::min(worst_order, *e.order);
      if (!(*e.order >= kMinOrder)) fail(o, fmt("eq %s order %.3f", e.id.c_str(), *e.order));
    }
  }
  const double secs = seconds_since(t0);
  if (!(secs < kMaxSeconds)) fail(o, fmt("runtime %.1f s", secs));
  o.detail = fmt("max sup %.2e (<= %.0e), min order %.3f over 3 refinements (>= %.1f), %.2f s",
                 worst_sup, kSupTol, worst_order, kMinOrder, secs) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 2. K at the equator of the same sphere.
Outcome criterion2() {
  constexpr double kExactTol = 1e-8;
  constexpr double kFdTol = 1e-4;
  Outcome o;
  const SpaceParams space = make_space(-1, 0.0);
  const DataPatch d = gen_rotational_sphere_data(space, 1.0, -2.0, 2.0, 4001);
  const BoundConstants b = bound_constants(space, 1.0);
  const ScalarField K = gauss_curvature(d);
  const int mid = d.grid.n_u / 2;
  const int j = d.grid.n_v / 2;
  if (d.nu(mid, j) != 0.0) fail(o, "centre node has nu != 0");
  const double k66 = gauss_from_eq66(b.a6, b.b, d.nu(mid, j));
  const double kfd = K(mid, j);
  if (!(std::abs(k66 - 15.0 / 16.0) <= kExactTol)) fail(o, fmt("eq6_6 K = %.12f", k66));
  if (!(std::abs(kfd - 15.0 / 16.0) <= kFdTol)) fail(o, fmt("finite-difference K = %.8f", kfd));
  const Range r = field_range(K, true);
  double k66_min = std::numeric_limits<double>::infinity();
  for (double nu : d.nu.values()) k66_min = std::min(k66_min, gauss_from_eq66(b.a6, b.b, nu));
  if (!(r.min > 0.0)) fail(o, fmt("min finite-difference K = %.3e", r.min));
  if (!(k66_min > 0.0)) fail(o, fmt("min eq6_6 K = %.3e", k66_min));
  o.detail = fmt("K(nu=0): eq6_6 err %.1e, FD err %.1e; min K %.4f (FD), %.4f (eq6_6)",
                 std::abs(k66 - 0.9375), std::abs(kfd - 0.9375), r.min, k66_min) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 3. Cylinder suite.
Outcome criterion3() {
  constexpr double kKTol = 1e-5;
  constexpr double kQTol = 1e-8;
  Outcome o;
  double worst_K = 0.0, worst_q = 0.0;
  int flat_branch = 0;
  for (const Params& p : kCylinders) {
    const CylinderPatches cyl = gen_cylinder(space_of(p), p.H, 1.0, 0.1, 201);
    for (double nu : cyl.data.nu.values()) {
      if (nu != 0.0) {
        fail(o, fmt("(%d, %g, %g) nu != 0", p.kappa, p.tau, p.H));
        break;
      }
    }
    const double Ksup = [&] {
      const ScalarField K = gauss_curvature(cyl.data);
      const Range r = field_range(K, true);
      return std::max(std::abs(r.min), std::abs(r.max));
    }();
    const Range q = field_range(compute_Q(cyl.data).q);
    const double q0 = std::pow(4.0 * p.H * p.H + p.kappa, 2) / 4.0;
    const double qerr = std::max(std::abs(q.min - q0), std::abs(q.max - q0));
    worst_K = std::max(worst_K, Ksup);
    worst_q = std::max(worst_q, qerr);
    if (!(Ksup <= kKTol)) fail(o, fmt("(%d, %g, %g) K sup %.2e", p.kappa, p.tau, p.H, Ksup));
    if (!(qerr <= kQTol)) fail(o, fmt("(%d, %g, %g) q err %.2e", p.kappa, p.tau, p.H, qerr));
    if (4.0 * p.H * p.H + p.kappa == 0.0) {
      ++flat_branch;
      if (q.min != 0.0 || q.max != 0.0) fail(o, fmt("(%d, %g, %g) q not exactly 0", p.kappa, p.tau, p.H));
    }
  }
  if (flat_branch < 2) fail(o, "suite lacks the horocycle cylinder and the Nil vertical plane");
  o.detail = fmt("%zu cylinders: nu == 0, max |K| %.1e, max q err %.1e, q == 0 exactly on %d flat-branch cases",
                 kCylinders.size(), worst_K, worst_q, flat_branch) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 4. Holomorphicity on every canonical patch and defect detection.
Outcome criterion4() {
  constexpr double kHolTol = 1e-6;
  constexpr double kDefect = 0.1;
  constexpr double kDetect = 0.05;
  Outcome o;
  double worst = 0.0;
  int patches = 0;
  auto check = [&](const std::string& name, const DataPatch& d, const ARField& f) {
    const double r = holomorphicity_residual(f, d);
    worst = std::max(worst, r);
    ++patches;
    if (!(r <= kHolTol)) fail(o, fmt("%s: %.2e", name.c_str(), r));
  };
  for (const Params& p : kCylinders) {
    const CylinderPatches cyl = gen_cylinder(space_of(p), p.H, 1.0, 0.1, 801);
    check(fmt("cylinder (%d, %g, %g)", p.kappa, p.tau, p.H), cyl.data, compute_Q(cyl.data));
    const DataPatch ex = extract_data(cyl.immersed);
    check(fmt("extracted cylinder (%d, %g, %g)", p.kappa, p.tau, p.H), ex, compute_Q(ex));
  }
  for (const Params& p : kSpheres) {
    const DataPatch d = gen_rotational_sphere_data(space_of(p), p.H, -2.0, 2.0, 4001);
    check(fmt("sphere data (%d, %g, %g)", p.kappa, p.tau, p.H), d, compute_Q(d));
  }
  for (const auto& [kappa, H] : {std::pair{-1, 1.0}, std::pair{0, 1.0}, std::pair{1, 1.0}}) {
    const DataPatch d = extract_data(gen_rotational_sphere_immersed(kappa, H, 201, 0.00125));
    check(fmt("immersed sphere (%d, %g)", kappa, H), d, compute_Q(d));
  }
  for (const int kappa : {-1, 1}) {
    const DataPatch d = extract_data(gen_slice(kappa, 0.5, 201));
    check(fmt("slice %d", kappa), d, compute_Q(d));
  }
  const SyntheticDlnq syn = make_synthetic_dlnq(1e-3);
  check("synthetic", syn.data, syn.ar);

  const DataPatch sphere = gen_rotational_sphere_data(make_space(-1, 0.0), 1.0, -2.0, 2.0, 4001);
  const DataPatch bad = plant_antiholomorphic_defect(sphere, kDefect);
  const double detected = holomorphicity_residual(compute_Q(bad), bad);
  if (!(detected >= kDetect)) fail(o, fmt("defect residual %.3e", detected));
  o.detail = fmt("%d patches, max |Q_zbar| %.2e (<= %.0e); defect %.1f detected at %.3f (>= %.2f)",
                 patches, worst, kHolTol, kDefect, detected, kDetect) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 5. Laplacian of ln q on the synthetic patch.
Outcome criterion5() {
  constexpr double kTol = 1e-4;
  Outcome o;
  const SyntheticDlnq syn = make_synthetic_dlnq(1e-3);
  const double r = check_dln_q(syn.ar, syn.data);
  const Range K = field_range(gauss_curvature(syn.data), true);
  if (!(r <= kTol)) fail(o, fmt("residual %.3e", r));
  o.detail = fmt("sup |Delta ln q - 4K| = %.2e (<= %.0e) at h = 1e-3; K in [%.6f, %.6f] vs -1", r,
                 kTol, K.min, K.max) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 6. Minimum of f and the q lower bounds.
Outcome criterion6() {
  constexpr int kSamples = 50;
  constexpr int kPoints = 100000;
  constexpr double kTol = 1e-10;
  Outcome o;
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> tau(-0.45, 0.45), H(0.0, 2.5);
  int neg = 0, pos = 0;
  double worst = 0.0, c_min = std::numeric_limits<double>::infinity();
  while (neg < kSamples) {
    const SpaceParams space = make_space(-1, tau(rng));
    const double h = H(rng);
    if (!hypothesis_thm41(space, h).strict) continue;
    ++neg;
    const double a4 = h * h + space.tau() * space.tau();
    const double b = space.b();
    const double c = c_constant(a4, b);
    double m = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kPoints; ++k) m = std::min(m, f_of(-1.0 + 2.0 * k / (kPoints - 1), a4, b));
    worst = std::max(worst, std::abs(m - c));
    c_min = std::min(c_min, c);
    if (!(std::abs(m - c) <= kTol)) fail(o, fmt("tau %.4f H %.4f: min %.14f c %.14f", space.tau(), h, m, c));
    if (!(c > 0.0)) fail(o, fmt("c = %.3e", c));
  }
  double qmin = std::numeric_limits<double>::infinity();
  while (pos < kSamples) {
    const SpaceParams space = make_space(1, tau(rng));
    const double h = H(rng);
    if (!hypothesis_thm41(space, h).relaxed) continue;
    ++pos;
    const double q = q_lower_bound(space, h);
    qmin = std::min(qmin, q);
    if (!(q > 0.0)) fail(o, fmt("b > 0 sample q_lower = %.3e", q));
  }
  o.detail = fmt("%d b<0 samples: max |min f - c| %.1e (<= %.0e), min c %.3f; %d b>0 samples: min q_lower %.3e",
                 neg, worst, kTol, c_min, pos, qmin) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 7. Exact rational checks.
Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 997);
  int triples = 0;
  while (triples < 100) {
    const Rational a6(std::abs(num(rng)) + 1, den(rng));
    const Rational b(num(rng), den(rng));
    const Rational c(num(rng), den(rng));
    if (b == 0) continue;
    ++triples;
    const LeadingCoefficient lc = leading_coefficient_check(a6, b, c);
    if (lc.x3 != b * b || !lc.equals_b2) fail(o, "x^3 coefficient differs from b^2");
  }
  // The slice point (H, tau) = (0, 0) has nu^2 = 1 and is excluded.
  std::uniform_int_distribution<int> small(0, 80);
  int inside = 0, outside = 0;
  for (int k = 0; k < 400; ++k) {
    const Rational tau(small(rng), 67);
    const Rational H(small(rng), 71);
    if (H == 0 && tau == 0) continue;
    const bool expected = 4 * H * H - 1 < 0;
    try {
      const SFamilyParamsExact e = s_family_params_exact(-1, tau, H);
      ++inside;
      if (e.residual != 0) fail(o, "eq5_2 residual is not exactly 0");
      if (!(e.nu2 > 0 && e.nu2 < 1)) fail(o, "nu^2 outside (0, 1)");
      if (!expected) fail(o, "accepted a point with 4H^2 + kappa >= 0");
    } catch (const Error& e) {
      ++outside;
      if (e.kind() != ErrorKind::NoSFamily || expected) fail(o, "rejected a point with 4H^2 + kappa < 0");
    }
  }
  bool boundary_rejected = false;
  try {
    s_family_params_exact(-1, Rational(1, 3), Rational(1, 2));
  } catch (const Error& e) {
    boundary_rejected = e.kind() == ErrorKind::NoSFamily;
  }
  if (!boundary_rejected) fail(o, "boundary H^2 = 1/4 accepted");
  o.detail = fmt("%d triples with x^3 coefficient == b^2; eq5_2 exact on %d accepted points, %d rejected, "
                 "boundary rejected",
                 triples, inside, outside) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 8. Classifier ground truth and gauge stability.
Outcome criterion8() {
  Outcome o;
  int total = 0, agree = 0, gauge_total = 0, gauge_agree = 0;
  auto check = [&](const std::string& name, const DataPatch& d, Label truth) {
    const Label got = classify_patch(d, compute_Q(d)).label;
    const DataPatch scaled = rescale_gauge(d, 2.0);
    const Label got2 = classify_patch(scaled, compute_Q(scaled)).label;
    ++total;
    ++gauge_total;
    if (got == truth) {
      ++agree;
    } else {
      fail(o, fmt("%s -> %s", name.c_str(), std::string(to_string(got)).c_str()));
    }
    if (got2 == got) {
      ++gauge_agree;
    } else {
      fail(o, fmt("%s changes to %s under w -> 2w", name.c_str(), std::string(to_string(got2)).c_str()));
    }
  };
  for (const Params& p : kSpheres) {
    check(fmt("sphere data (%d, %g, %g)", p.kappa, p.tau, p.H),
          gen_rotational_sphere_data(space_of(p), p.H, -2.0, 2.0, 2001), Label::RotationalSphere);
  }
  for (const auto& [kappa, H] : {std::pair{-1, 1.0}, std::pair{1, 1.0}}) {
    check(fmt("immersed sphere (%d, %g)", kappa, H),
          extract_data(gen_rotational_sphere_immersed(kappa, H, 401, 0.005)), Label::RotationalSphere);
  }
  for (const Params& p : kCylinders) {
    const CylinderPatches cyl = gen_cylinder(space_of(p), p.H, 1.0, 0.1, 201);
    check(fmt("cylinder (%d, %g, %g)", p.kappa, p.tau, p.H), cyl.data, Label::VerticalCylinder);
    check(fmt("extracted cylinder (%d, %g, %g)", p.kappa, p.tau, p.H), extract_data(cyl.immersed),
          Label::VerticalCylinder);
  }
  for (const int kappa : {-1, 1}) {
    check(fmt("slice %d", kappa), extract_data(gen_slice(kappa, 0.5, 41)), Label::Slice);
  }
  for (const Params& p : kSFamily) {
    ++total;
    const Label got = classify_params(s_family_params(space_of(p), p.H)).label;
    if (got == Label::SFamily) {
      ++agree;
    } else {
      fail(o, fmt("S-family (%d, %g, %g) -> %s", p.kappa, p.tau, p.H, std::string(to_string(got)).c_str()));
    }
  }
  o.detail = fmt("%d/%d verdicts match the generator label; %d/%d unchanged under w -> 2w", agree, total,
                 gauge_agree, gauge_total) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 9. Dichotomy examples and the Jacobi field on the sphere.
Outcome criterion9() {
  Outcome o;
  auto flat = [](int n, double step, const std::function<double(double)>& v, double g, double h) {
    const Grid grid = make_grid(n, n, step, 0.0, 0.0);
    ScalarField fv(grid), fg(grid, g), fh(grid, h), lambda(grid, 1.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) fv(i, j) = v(grid.u(i));
    }
    return dichotomy_check(fv, fg, fh, lambda);
  };
  const Conclusion c0 = flat(21, 0.05, [](double) { return 0.0; }, 1.0, 1.0).conclusion;
  const Conclusion c2 = flat(21, 0.05, [](double) { return 2.0; }, 0.0, 0.0).conclusion;
  const double pi = std::numbers::pi;
  const Conclusion ccos = flat(401, pi / 400.0, [](double u) { return std::cos(u); }, 1.0, 1.0).conclusion;
  if (c0 != Conclusion::VanishesIdentically) fail(o, "v = 0 not VanishesIdentically");
  if (c2 != Conclusion::NeverVanishes) fail(o, "v = 2 not NeverVanishes");
  if (ccos != Conclusion::NotApplicable) fail(o, "cos(u) not NotApplicable");

  const DataPatch d = gen_rotational_sphere_data(make_space(-1, 0.0), 1.0, -2.0, 2.0, 4001);
  const DataPatch upper = sub_patch(d, 2500, d.grid.n_u, 0, d.grid.n_v);  // s in [0.5, 2]
  const double h = gradient_ratio_bound(upper);
  const Conclusion sub = jacobi_consistency(upper, h).conclusion;
  const Conclusion full = jacobi_consistency(d, h).conclusion;
  if (sub != Conclusion::NeverVanishes) fail(o, "subpatch not NeverVanishes");
  if (full != Conclusion::NotApplicable) fail(o, "full patch not NotApplicable");
  o.detail = fmt("triples: %s, %s, %s; Jacobi nu with h = %.4f: s in [0.5, 2] %s, s in [-2, 2] %s",
                 std::string(to_string(c0)).c_str(), std::string(to_string(c2)).c_str(),
                 std::string(to_string(ccos)).c_str(), h, std::string(to_string(sub)).c_str(),
                 std::string(to_string(full)).c_str()) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 10. Immersed and data-level spheres agree on lambda(nu).
Outcome criterion10() {
  constexpr double kTol = 1e-4;
  Outcome o;
  const SpaceParams space = make_space(-1, 0.0);
  const DataPatch d = extract_data(gen_rotational_sphere_immersed(-1, 1.0, 401, 0.004));
  // s = artanh(nu) is harmonic, so s = a u + c on the immersed patch; the
  // gauge w = s + i t rescales lambda by 1 / a^2.
  const int j = d.grid.n_v / 2;
  double err = 0.0, a_lo = INFINITY, a_hi = 0.0;
  for (int i = 1; i + 1 < d.grid.n_u; ++i) {
    const double a = (std::atanh(d.nu(i + 1, j)) - std::atanh(d.nu(i - 1, j))) / (2.0 * d.grid.h_u);
    a_lo = std::min(a_lo, std::abs(a));
    a_hi = std::max(a_hi, std::abs(a));
    const double ref = sphere_data_at(space, 1.0, std::atanh(d.nu(i, j))).lambda;
    err = std::max(err, std::abs(d.lambda(i, j) / (a * a) - ref));
  }
  if (!(err <= kTol)) fail(o, fmt("lambda mismatch %.2e", err));
  o.detail = fmt("nu in [%.3f, %.3f], gauge factor a in [%.6f, %.6f], max |lambda - lambda_data| %.2e (<= %.0e)",
                 field_range(d.nu).min, field_range(d.nu).max, a_lo, a_hi, err, kTol) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"structure equations on sphere data", criterion1},
      {"curvature anchor K = 15/16", criterion2},
      {"cylinder suite", criterion3},
      {"holomorphicity of Q", criterion4},
      {"Laplacian of ln q", criterion5},
      {"thm41 bounds", criterion6},
      {"exact rational algebra", criterion7},
      {"classifier ground truth", criterion8},
      {"dichotomy", criterion9},
      {"cross-generator spheres", criterion10},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s  %s: %s\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
