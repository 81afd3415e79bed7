#include "cmclab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmclab/ar.hpp"
#include "cmclab/compatibility.hpp"
#include "cmclab/error.hpp"

namespace cmclab {

double f_of(double nu, double a4, double b) {
  const double x2 = nu * nu;
  const double w = 1.0 - x2;
  return (a4 + b * x2) * (4.0 * a4 + b * w) + a4 * b * w + 0.25 * b * b * w * w;
}

double c_constant(double a4, double b) {
  if (!(b < 0.0) || !(a4 + b > 0.0)) {
    throw Error(ErrorKind::HypothesisViolated,
                "c needs b < 0 and H^2 + tau^2 - |kappa - 4 tau^2| > 0");
  }
  const double f0 = 0.25 * (4.0 * a4 + b) * (4.0 * a4 + b);
  const double f1 = 4.0 * a4 * (a4 + b);
  return std::min(f0, f1);
}

double critical_point_ratio(double a4, double b) {
  return (4.0 * a4 + b) / (3.0 * std::abs(b));
}

Thm41Hypothesis hypothesis_thm41(const SpaceParams& space, double H) {
  const double a4 = space.a4(H);
  const double ab = std::abs(space.b());
  return Thm41Hypothesis{a4 - ab > 0.0, 4.0 * a4 - ab > 0.0};
}

double q_lower_bound(const SpaceParams& space, double H) {
  const double a4 = space.a4(H);
  const double b = space.b();
  if (b < 0.0) return c_constant(a4, b);
  if (b > 0.0) {
    if (!(4.0 * a4 - b > 0.0)) {
      throw Error(ErrorKind::HypothesisViolated, "4(H^2 + tau^2) - |kappa - 4 tau^2| <= 0");
    }
    return 0.25 * (4.0 * a4 - b) * (4.0 * a4 - b);
  }
  throw Error(ErrorKind::Degenerate, "kappa - 4 tau^2 = 0");
}

double q_upper_bound(const SpaceParams& space, double H) {
  const double a4 = space.a4(H);
  const double b = space.b();
  return 2.0 * (4.0 * a4 * (a4 + std::abs(b)) + 0.25 * b * b);
}

BoundConstants bound_constants(const SpaceParams& space, double H) {
  if (space.degenerate()) throw Error(ErrorKind::Degenerate, "kappa - 4 tau^2 = 0");
  BoundConstants out;
  out.a4 = space.a4(H);
  out.a6 = space.a6(H);
  out.b = space.b();
  out.hypothesis = hypothesis_thm41(space, H);
  if (out.b < 0.0 && out.hypothesis.strict) {
    out.has_c_lower = true;
    out.c_lower = c_constant(out.a4, out.b);
  }
  if ((out.b < 0.0 && out.hypothesis.strict) || (out.b > 0.0 && out.hypothesis.relaxed)) {
    out.has_q_lower = true;
    out.q_lower = q_lower_bound(space, H);
  }
  out.q_upper = q_upper_bound(space, H);
  const double tau = space.tau();
  out.h2_kappa_3tau2 = H * H + space.kappa() - 3.0 * tau * tau;
  return out;
}

double gauss_from_eq66(double a6, double b, double nu) {
  if (a6 == 0.0) throw Error(ErrorKind::DegenerateA, "a = 4(H^2 + tau^2) = 0");
  const double w = 2.0 * a6 + b * (1.0 - nu * nu);
  const double rhs = a6 * a6 - b * b + (2.0 * a6 + b) * (2.0 * a6 + b) - w * w;
  return rhs / (4.0 * a6);
}

LeadingCoefficient leading_coefficient_check(const Rational& a6, const Rational& b,
                                             const Rational& c) {
  if (b == 0) throw Error(ErrorKind::DegenerateB, "kappa - 4 tau^2 = 0");
  if (!(a6 > 0)) throw Error(ErrorKind::InvalidInput, "a = 4(H^2 + tau^2) must be positive");
  const RationalPoly x = RationalPoly::x();
  const RationalPoly one = RationalPoly::constant(1);
  const RationalPoly g = RationalPoly::constant(a6 + b) - b * x;
  const RationalPoly inner = g * g * Rational(1 / (4 * b)) + x * g -
                             RationalPoly::constant(c * c / b);
  const RationalPoly g4c = g + RationalPoly::constant(4 * c);
  LeadingCoefficient out;
  out.P = Rational(4 * a6) * inner - g4c * g4c * (one - x);
  out.x3 = out.P.coeff(3);
  out.equals_b2 = out.x3 == b * b && out.x3 != 0;
  return out;
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::RotationalSphere: return "RotationalSphere";
    case Label::VerticalCylinder: return "VerticalCylinder";
    case Label::Slice: return "Slice";
    case Label::SFamily: return "SFamily";
    case Label::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Label parse_label(std::string_view name) {
  for (Label l : {Label::RotationalSphere, Label::VerticalCylinder, Label::Slice,
                  Label::SFamily, Label::Inconclusive}) {
    if (to_string(l) == name) return l;
  }
  throw Error(ErrorKind::InvalidInput, "unknown verdict label '" + std::string(name) + "'");
}

namespace {

bool is_constant(const Range& r, const ClassifyOptions& o) {
  return r.spread() <= std::max(o.const_abs, o.const_rel * std::abs(r.mean));
}

std::string k_sign(double lo, double hi, double tol) {
  if (lo > tol) return "positive";
  if (hi < -tol) return "negative";
  if (lo >= -tol && hi <= tol) return "zero";
  if (lo >= -tol) return "nonnegative";
  if (hi <= tol) return "nonpositive";
  return "mixed";
}

Range finite_range(const ScalarField& f) {
  Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0.0};
  double sum = 0.0;
  long count = 0;
  for (double x : f.values()) {
    if (!std::isfinite(x)) continue;
    r.min = std::min(r.min, x);
    r.max = std::max(r.max, x);
    sum += x;
    ++count;
  }
  if (count == 0) return Range{};
  r.mean = sum / static_cast<double>(count);
  return r;
}

// Fills the derived predicates once the measured ranges are in place.
void finish(Hypotheses& h, const SpaceParams& space, const ClassifyOptions& o,
            const Range& nu, const Range& q, const Range& Ke) {
  h.kappa = space.kappa();
  h.tau = space.tau();
  h.g0 = 4.0 * h.H * h.H + h.kappa;
  h.nu_min = nu.min;
  h.nu_max = nu.max;
  h.nu_constant = is_constant(nu, o);
  h.nu_zero = h.nu_constant && std::max(std::abs(nu.min), std::abs(nu.max)) <= o.zero_tol;
  h.nu2_one = h.nu_constant && std::abs(1.0 - std::min(std::abs(nu.min), std::abs(nu.max))) <= o.zero_tol;
  h.q_min = q.min;
  h.q_max = q.max;
  h.q_constant = is_constant(q, o);
  h.q_zero = h.q_max <= o.zero_tol;
  h.K_sign = k_sign(h.K_min, h.K_max, o.K_tol);
  h.thm31 = h.K_min >= -o.K_tol;
  h.thm41_K = h.K_max <= o.K_tol;
  h.thm41 = hypothesis_thm41(space, h.H);
  h.Ke_mean = Ke.mean;
  h.Ke_constant = is_constant(Ke, o);
  h.Ke_minus_tau2 = h.Ke_constant && std::abs(Ke.mean + h.tau * h.tau) <= o.Ke_tol;
  const double nu2 = nu.mean * nu.mean;
  h.eq52_residual = 4.0 * h.H * h.H + 4.0 * h.tau * h.tau + space.b() * (1.0 - nu2);
}

ClassificationVerdict decide(Hypotheses h, const SpaceParams& space, const ClassifyOptions& o) {
  ClassificationVerdict v;
  if (h.residuals_checked && !h.residuals_ok) {
    v.notes.push_back("structure-equation residuals above gate; patch is not trusted");
    v.hypotheses = std::move(h);
    return v;
  }
  const bool H_zero = std::abs(h.H) <= o.H_zero_tol;
  const double nu_abs = 0.5 * (std::abs(h.nu_min) + std::abs(h.nu_max));
  if (h.nu_zero) {
    v.label = Label::VerticalCylinder;
    v.notes.push_back("constant angle nu = 0: vertical cylinder over a curve of geodesic curvature 2H");
    if (h.q_zero) v.notes.push_back("q = 0 as well: horocycle cylinder or vertical plane");
  } else if (h.nu2_one && H_zero && h.tau == 0.0 && !space.degenerate()) {
    v.label = Label::Slice;
    v.notes.push_back("constant angle nu^2 = 1 with H = 0 in a product space");
  } else if (h.q_zero && h.g0 > 0.0 && h.K_min > 0.0) {
    v.label = Label::RotationalSphere;
    v.notes.push_back("q = 0 and 4H^2 + kappa > 0 with K > 0 on the patch");
  } else if (h.nu_constant && nu_abs > o.zero_tol && nu_abs < 1.0 - o.zero_tol &&
             h.Ke_minus_tau2 && std::abs(h.eq52_residual) <= o.eq52_tol) {
    v.label = Label::SFamily;
    v.notes.push_back("constant angle 0 < nu^2 < 1 with K_e = -tau^2");
  } else {
    if (h.q_zero && h.g0 > 0.0) {
      v.notes.push_back("q = 0 and 4H^2 + kappa > 0 but K is not positive on the patch "
                        "(K = H^2 + kappa - 3 tau^2 where nu^2 = 1)");
    }
    v.notes.push_back("no rule matched");
  }
  v.notes.push_back("predicates hold on the patch only, not on a complete surface");
  v.hypotheses = std::move(h);
  return v;
}

}  // namespace

ClassificationVerdict classify_patch(const DataPatch& d, const ARField& f,
                                     const ClassifyOptions& options) {
  Hypotheses h;
  h.H = d.H;
  h.residuals_checked = true;
  const ResidualReport r21 = verify_lemma21(d);
  double worst = 0.0;
  for (const ResidualEntry& e : r21.entries) {
    if (!e.applicable) continue;
    worst = std::isnan(e.rel_sup) ? std::numeric_limits<double>::infinity()
                                  : std::max(worst, e.rel_sup);
  }
  h.residual_max_rel = worst;
  h.residuals_ok = worst <= options.residual_tol;

  const Range K = finite_range(gauss_curvature(d));
  h.K_min = K.min;
  h.K_max = K.max;
  finish(h, d.space, options, field_range(d.nu), field_range(f.q), field_range(extrinsic_curvature(d)));
  return decide(std::move(h), d.space, options);
}

ClassificationVerdict classify_params(const SFamilyParams& params, const ClassifyOptions& options) {
  Hypotheses h;
  h.H = params.H;
  h.K_min = h.K_max = params.K;
  const double nu = std::sqrt(params.nu2);
  const double tau = params.space.tau();
  const double e52 = 4.0 * params.H * params.H + 4.0 * tau * tau + params.space.b() * (1.0 - params.nu2);
  const double q = 0.25 * e52 * e52;
  finish(h, params.space, options, Range{nu, nu, nu}, Range{q, q, q},
         Range{params.Ke, params.Ke, params.Ke});
  return decide(std::move(h), params.space, options);
}

}  // namespace cmclab
