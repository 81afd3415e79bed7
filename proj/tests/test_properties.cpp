#include <doctest.h>

#include <cmath>
#include <optional>
#include <random>

#include "cmclab/ar.hpp"
#include "cmclab/canonical.hpp"
#include "cmclab/classify.hpp"
#include "cmclab/compatibility.hpp"
#include "test_util.hpp"

using namespace cmclab;

namespace {

// (a + b x^2)(4a + b(1 - x^2)) + a b (1 - x^2) + (b^2/4)(1 - x^2)^2 multiplied
// out term by term.
double f_expanded(double x, double a, double b) {
  const double x2 = x * x, x4 = x2 * x2;
  const double t1 = 4 * a * a + a * b - a * b * x2 + 4 * a * b * x2 + b * b * x2 - b * b * x4;
  const double t2 = a * b - a * b * x2;
  const double t3 = 0.25 * b * b * (1 - 2 * x2 + x4);
  return t1 + t2 + t3;
}

struct RandomSpace {
  int kappa;
  double tau;
};

RandomSpace random_space(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(-1, 1);
  std::uniform_real_distribution<double> t(-0.6, 0.6);
  for (;;) {
    const RandomSpace s{k(rng), t(rng)};
    if (std::abs(s.kappa - 4 * s.tau * s.tau) > 0.05) return s;
  }
}

}  // namespace

TEST_CASE("f matches its multiplied-out form on 10^4 random inputs") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> x(-1.0, 1.0), a(0.0, 3.0), b(-3.0, 3.0);
  for (int k = 0; k < 10000; ++k) {
    const double xv = x(rng), av = a(rng), bv = b(rng);
    const double f = f_of(xv, av, bv);
    REQUIRE(std::abs(f - f_expanded(xv, av, bv)) <= 1e-12 * (1.0 + std::abs(f)));
  }
}

TEST_CASE("dense minimum of f equals c under the thm41 hypothesis") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> tau(-0.45, 0.45), H(0.0, 2.5);
  int samples = 0;
  while (samples < 20) {
    const SpaceParams space = make_space(-1, tau(rng));
    const double h = H(rng);
    if (!hypothesis_thm41(space, h).strict) continue;
    const double a4 = h * h + space.tau() * space.tau();
    const double b = space.b();
    const double c = c_constant(a4, b);
    double m = INFINITY;
    for (int k = 0; k <= 100000; ++k) m = std::min(m, f_of(-1.0 + 2e-5 * k, a4, b));
    CHECK(std::abs(m - c) <= 1e-10);
    CHECK(c > 0.0);
    CHECK(critical_point_ratio(a4, b) > 1.0);
    CHECK(q_lower_bound(space, h) == c);
    ++samples;
  }
}

TEST_CASE("q lower bound is positive under the relaxed hypothesis with b > 0") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> tau(-0.45, 0.45), H(0.0, 2.5);
  for (int k = 0; k < 200; ++k) {
    const SpaceParams space = make_space(1, tau(rng));
    const double h = H(rng);
    if (!hypothesis_thm41(space, h).relaxed) continue;
    CHECK(q_lower_bound(space, h) > 0.0);
  }
}

TEST_CASE("sphere data: q = 0, angle identity and residual bookkeeping") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> H(0.6, 1.6);
  for (int k = 0; k < 12; ++k) {
    const RandomSpace rs = random_space(rng);
    const SpaceParams space = make_space(rs.kappa, rs.tau);
    const double h = H(rng);
    CAPTURE(rs.kappa);
    CAPTURE(rs.tau);
    CAPTURE(h);
    std::optional<DataPatch> patch;
    try {
      patch = gen_rotational_sphere_data(space, h, 1.5, 301);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GVanishes);
      continue;
    }
    const DataPatch& d = *patch;
    const ARField f = compute_Q(d);
    for (double q : f.q.values()) CHECK(q >= 0.0);
    CHECK(field_range(f.q).max <= 1e-10);
    CHECK(angle_identity_residual(d) <= 1e-10);
    for (const ResidualEntry& e : verify_all(d, f).entries) {
      CHECK(e.sup >= e.mean);
      CHECK(e.mean >= 0.0);
    }
  }
}

TEST_CASE("cylinders: nu = 0 and constant q = (4H^2 + kappa)^2 / 4") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> H(0.0, 1.5);
  for (int k = 0; k < 20; ++k) {
    const RandomSpace rs = random_space(rng);
    const double h = H(rng);
    const CylinderPatches cyl = gen_cylinder(make_space(rs.kappa, rs.tau), h, 0.5, 0.1, 51);
    const Range q = field_range(compute_Q(cyl.data).q);
    const double q0 = std::pow(4 * h * h + rs.kappa, 2) / 4;
    CHECK(std::abs(q.min - q0) <= 1e-8);
    CHECK(std::abs(q.max - q0) <= 1e-8);
    CHECK(q.max <= q_upper_bound(cyl.data.space, h));
    for (double nu : cyl.data.nu.values()) CHECK(nu == 0.0);
  }
}

TEST_CASE("relative residuals and verdicts are gauge invariant") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  const DataPatch patches[] = {
      gen_rotational_sphere_data(make_space(0, 0.5), 1.0, 2.0, 401),
      gen_cylinder(make_space(1, 0.25), 0.7, 1.0, 0.1, 101).data,
      extract_data(gen_slice(-1, 0.4, 41)),
  };
  for (const DataPatch& d : patches) {
    const ResidualReport base = verify_all(d, compute_Q(d));
    const Label label = classify_patch(d, compute_Q(d)).label;
    for (int k = 0; k < 5; ++k) {
      const double c = scale(rng);
      const DataPatch s = rescale_gauge(d, c);
      const ResidualReport r = verify_all(s, compute_Q(s));
      for (std::size_t e = 0; e < r.entries.size(); ++e) {
        if (!r.entries[e].applicable) continue;
        CHECK(std::abs(r.entries[e].rel_sup - base.entries[e].rel_sup) <=
              1e-6 * base.entries[e].rel_sup + 1e-13);
      }
      CHECK(classify_patch(s, compute_Q(s)).label == label);
    }
  }
}

TEST_CASE("constant-angle parameters exist exactly when 4H^2 + kappa < 0") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(0, 60);
  for (int k = 0; k < 300; ++k) {
    const Rational tau(num(rng), 53);
    const Rational H(num(rng), 61);
    // (H, tau) = (0, 0) gives nu^2 = 1, the slice.
    const bool expected = 4 * H * H - 1 < 0 && !(H == 0 && tau == 0);
    if (expected) {
      const SFamilyParamsExact e = s_family_params_exact(-1, tau, H);
      CHECK(e.residual == 0);
      CHECK(e.nu2 > 0);
      CHECK(e.nu2 < 1);
    } else {
      CHECK(testing::kind_of([&] { s_family_params_exact(-1, tau, H); }) == ErrorKind::NoSFamily);
    }
  }
  CHECK(testing::kind_of([] { s_family_params(make_space(-1, 0.0), 0.5); }) == ErrorKind::NoSFamily);
}
