#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cmclab/canonical.hpp"
#include "cmclab/rational_poly.hpp"
#include "cmclab/space_kernel.hpp"
#include "cmclab/surface_patch.hpp"

namespace cmclab {

struct ARField;

// ---------------------------------------------------------------------------
// Bound functions
//
// Two different constants are called "a" in the literature; here they are
// always named: a4 = H^2 + tau^2 and a6 = 4 (H^2 + tau^2). b = kappa - 4 tau^2.

// f(x) = (a4 + b x^2)(4 a4 + b (1 - x^2)) + a4 b (1 - x^2) + (b^2 / 4)(1 - x^2)^2
double f_of(double nu, double a4, double b);

// min{f(0), f(+-1)} = min{(4 a4 + b)^2 / 4, 4 a4 (a4 + b)} for b < 0.
// Throws HypothesisViolated unless b < 0 and a4 + b > 0.
double c_constant(double a4, double b);

// (4 a4 + b) / (3 |b|): the square of the outer critical points of f. It
// exceeds 1 exactly when a4 + b > 0, which keeps them outside [-1, 1].
double critical_point_ratio(double a4, double b);

struct Thm41Hypothesis {
  bool strict = false;   // H^2 + tau^2 - |b| > 0
  bool relaxed = false;  // 4 (H^2 + tau^2) - |b| > 0
};

Thm41Hypothesis hypothesis_thm41(const SpaceParams& space, double H);

// Lower bound for q on a K <= 0 surface: c_constant for b < 0 (strict
// hypothesis), (4 a4 - b)^2 / 4 for b > 0 (relaxed hypothesis). Throws
// HypothesisViolated otherwise.
double q_lower_bound(const SpaceParams& space, double H);

// Upper bound for q on a K >= 0 surface:
// 2 [4 a4 (a4 + |b|) + b^2 / 4].
double q_upper_bound(const SpaceParams& space, double H);

struct BoundConstants {
  double a4 = 0.0;
  double a6 = 0.0;
  double b = 0.0;
  Thm41Hypothesis hypothesis;
  bool has_c_lower = false;
  double c_lower = 0.0;
  bool has_q_lower = false;
  double q_lower = 0.0;
  double q_upper = 0.0;
  // Sign of H^2 + kappa - 3 tau^2, used implicitly by the b < 0 argument.
  double h2_kappa_3tau2 = 0.0;
};

// Throws Degenerate when b == 0.
BoundConstants bound_constants(const SpaceParams& space, double H);

// K solved from 4 a6 K = a6^2 - b^2 + (2 a6 + b)^2 - (2 a6 + b (1 - nu^2))^2,
// valid on q == 0 surfaces. Throws DegenerateA when a6 == 0.
double gauss_from_eq66(double a6, double b, double nu);

struct LeadingCoefficient {
  RationalPoly P;
  Rational x3;
  bool equals_b2 = false;
};

// P(x) = 4 a6 [g^2 / (4b) + x g - c^2 / b] - (g + 4c)^2 (1 - x) with
// g = a6 + b - b x (that is, 4H^2 + kappa - b nu^2 written in x = nu^2).
// Its x^3 coefficient is b^2 in this normalization. Throws DegenerateB
// when b == 0 and InvalidInput when a6 <= 0.
LeadingCoefficient leading_coefficient_check(const Rational& a6, const Rational& b,
                                             const Rational& c);

// ---------------------------------------------------------------------------
// Classifier

enum class Label { RotationalSphere, VerticalCylinder, Slice, SFamily, Inconclusive };

std::string_view to_string(Label label);
// Throws InvalidInput for unknown names.
Label parse_label(std::string_view name);

struct ClassifyOptions {
  double residual_tol = 1e-3;  // gate on the largest relative residual of 2.2-2.7
  double const_abs = 1e-8;     // constant field: spread <= max(const_abs, const_rel |mean|)
  double const_rel = 1e-6;
  double zero_tol = 1e-8;      // nu == 0, nu^2 == 1, q == 0
  double H_zero_tol = 1e-6;
  double K_tol = 1e-4;         // sign pattern of the finite-difference K
  double Ke_tol = 1e-6;
  double eq52_tol = 1e-6;
};

// Predicate values the decision is based on.
struct Hypotheses {
  bool residuals_checked = false;
  bool residuals_ok = false;
  double residual_max_rel = 0.0;
  int kappa = 0;
  double tau = 0.0;
  double H = 0.0;
  double g0 = 0.0;  // 4H^2 + kappa
  double K_min = 0.0;
  double K_max = 0.0;
  std::string K_sign;  // positive, negative, zero, nonnegative, nonpositive, mixed
  double q_min = 0.0;
  double q_max = 0.0;
  bool q_constant = false;
  bool q_zero = false;
  double nu_min = 0.0;
  double nu_max = 0.0;
  bool nu_constant = false;
  bool nu_zero = false;
  bool nu2_one = false;
  double Ke_mean = 0.0;
  bool Ke_constant = false;
  bool Ke_minus_tau2 = false;
  double eq52_residual = 0.0;
  bool thm31 = false;  // K >= 0 within K_tol
  bool thm41_K = false;  // K <= 0 within K_tol
  Thm41Hypothesis thm41;
};

struct ClassificationVerdict {
  Label label = Label::Inconclusive;
  Hypotheses hypotheses;
  std::vector<std::string> notes;
};

// Applies, in order: nu == 0 -> VerticalCylinder; nu^2 == 1, H == 0,
// tau == 0 -> Slice; q == 0, 4H^2 + kappa > 0, K > 0 -> RotationalSphere;
// constant nu in (0, 1), K_e == -tau^2, 4H^2 + 4tau^2 + b(1 - nu^2) == 0
// -> SFamily; otherwise Inconclusive. The first rule fires only after the
// 2.2-2.7 residual gate passes.
ClassificationVerdict classify_patch(const DataPatch& d, const ARField& f,
                                     const ClassifyOptions& options = {});

// Same decision rules evaluated on the constant-angle parameters themselves.
ClassificationVerdict classify_params(const SFamilyParams& params,
                                      const ClassifyOptions& options = {});

}  // namespace cmclab
