#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "bergproj/identities.hpp"
#include "bergproj/rng.hpp"
#include "bergproj/specfun.hpp"

using namespace bergproj;
using namespace bergproj::identities;
using std::complex;

namespace {
// resolution for randomized suites in unit tests; the acceptance suite runs
// the spec defaults
const Resolution kTestRes{128, 256, 3};
} // namespace

TEST_CASE("hyp_beta_integral: degenerate and closed-form cases") {
  // a = b = 0 reduces both sides to the beta function B(c, delta)
  const PairCheck beta = hyp_beta_integral_check(0.0, 0.0, 1.7, 2.3, 1e-11);
  const double b_exact =
      specfun::gamma_ratio({1.7, 2.3}, {4.0});
  CHECK(beta.lhs == doctest::Approx(b_exact).epsilon(1e-11));
  CHECK(beta.rhs == doctest::Approx(b_exact).epsilon(1e-13));

  const PairCheck q = hyp_beta_integral_check(0.5, 0.5, 1.0, 1.0, 1e-11);
  CHECK(q.rhs == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-13));
  CHECK(q.abs_diff <= 1e-9);

  CHECK_THROWS_AS(hyp_beta_integral_check(2.0, 2.0, 1.0, 1.0, 1e-10),
                  std::domain_error);
}

TEST_CASE("hyp_beta_integral: randomized admissible tuples") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const double c = rng.uniform(0.3, 3.0);
    const double delta = rng.uniform(0.3, 3.0);
    double a = rng.uniform(-1.5, 1.5);
    double b = rng.uniform(-1.5, 1.5);
    if (delta + c - a - b <= 0.2) {
      a = 0.1;
      b = 0.1;
    }
    const PairCheck r = hyp_beta_integral_check(a, b, c, delta, 1e-11);
    CHECK(r.abs_diff <= 1e-9);
  }
}

TEST_CASE("hyp_beta_integral: large-delta Gamma asymptotics smoke") {
  // rhs approaches Gamma(c) delta^{-(a+b)}-type decay; the check itself must
  // stay accurate and the value monotone for a + b > 0
  const double a = 0.6, b = 0.8, c = 1.4;
  double prev = 1e300;
  for (double delta : {5.0, 10.0, 20.0, 40.0}) {
    const PairCheck r = hyp_beta_integral_check(a, b, c, delta, 1e-11);
    CHECK(r.abs_diff <= 1e-8);
    CHECK(r.rhs < prev);
    prev = r.rhs;
  }
}

TEST_CASE("kernel_expansion: trivial points") {
  const SeriesQuadCheck zero =
      kernel_expansion_check({0, 0}, {0, 0}, 0.7, 1.3, 0.9, 0.5, 8, 1e-10, kTestRes);
  CHECK(zero.series_value.real() == doctest::Approx(1.0 / 1.5).epsilon(1e-12));
  CHECK(zero.abs_diff <= 1e-10);

  // w = 0, a = b = c = 1, t = 0: mean value of an analytic kernel is 1
  const SeriesQuadCheck mv =
      kernel_expansion_check({0.4, 0.2}, {0, 0}, 1, 1, 1, 0, 8, 1e-10, kTestRes);
  CHECK(mv.series_value.real() == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(std::abs(mv.series_value.imag()) <= 1e-12);
  CHECK(mv.abs_diff <= 1e-9);
}

TEST_CASE("kernel_expansion: reference point and random tuples") {
  const SeriesQuadCheck r = kernel_expansion_check(
      {0.3, 0.0}, {0.0, 0.5}, 1, 1, 1, 0, 64, 1e-10, kTestRes);
  CHECK(r.abs_diff <= 1e-8);

  SplitMix64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const double rz = rng.uniform(0.0, 0.6), az = rng.uniform(0.0, 6.28);
    const double rw = rng.uniform(0.0, 0.6), aw = rng.uniform(0.0, 6.28);
    const complex<double> z{rz * std::cos(az), rz * std::sin(az)};
    const complex<double> w{rw * std::cos(aw), rw * std::sin(aw)};
    const double a = rng.uniform(0.3, 2.0);
    const double b = rng.uniform(0.3, 2.0);
    const double c = rng.uniform(0.3, 2.0);
    const double t = rng.uniform(-0.5, 1.5);
    const SeriesQuadCheck k =
        kernel_expansion_check(z, w, a, b, c, t, 96, 1e-10, kTestRes);
    CHECK(k.abs_diff <= 1e-7);
  }
}

TEST_CASE("kernel_moment: closed form vs quadrature") {
  const ClosedFormCheck at0 = kernel_moment_check({0, 0}, 1.2, 0.7, kTestRes);
  CHECK(at0.closed_form == doctest::Approx(1.0 / 1.7).epsilon(1e-12));
  CHECK(at0.abs_diff <= 1e-10);

  // a = 1, t = 0: 2F1(1,1;2;x) = -log(1-x)/x
  const ClosedFormCheck log_case = kernel_moment_check({0.5, 0}, 1.0, 0.0, kTestRes);
  CHECK(log_case.closed_form ==
        doctest::Approx(-std::log(0.75) / 0.25).epsilon(1e-12));
  CHECK(log_case.abs_diff <= 1e-9);

  SplitMix64 rng(91);
  for (int trial = 0; trial < 10; ++trial) {
    const double r = rng.uniform(0.0, 0.8), ang = rng.uniform(0.0, 6.28);
    const complex<double> z{r * std::cos(ang), r * std::sin(ang)};
    const ClosedFormCheck k = kernel_moment_check(
        z, rng.uniform(0.3, 2.0), rng.uniform(-0.7, 2.0), kTestRes);
    CHECK(k.abs_diff <= 1e-8);
  }
}

TEST_CASE("kernel_expansion tail budget") {
  // |z conj(w)| near 1 with a small K cannot resolve the geometric tail
  CHECK_THROWS_AS(kernel_expansion_check({0.95, 0.0}, {0.95, 0.0}, 1.0, 1.0,
                                         1.0, 0.0, 8, 1e-10, Resolution{32, 64, 1}),
                  specfun::budget_error);
}

TEST_CASE("kernel_expansion degenerates to kernel_moment") {
  // b = 0 and c = a at z = w collapses the kernel to |1 - z conj(xi)|^{-2a}
  const complex<double> z{0.35, 0.4};
  const double a = 1.1, t = 0.4;
  const SeriesQuadCheck e =
      kernel_expansion_check(z, z, a, 0.0, a, t, 128, 1e-11, kTestRes);
  const ClosedFormCheck m = kernel_moment_check(z, a, t, kTestRes);
  CHECK(std::abs(e.series_value.real() - m.closed_form) <= 1e-10);
  CHECK(std::abs(e.series_value.imag()) <= 1e-10);
  CHECK(std::abs(e.quadrature_value - m.quadrature_value) <= 1e-10);
}

TEST_CASE("checks converge as the rule resolution doubles") {
  const complex<double> z{0.5, 0.2};
  double prev = 1e300;
  for (int n_r : {16, 32, 64}) {
    const Resolution res{n_r, 128, 2};
    const ClosedFormCheck k = kernel_moment_check(z, 1.4, 0.3, res);
    CHECK(k.abs_diff < std::max(prev, 1e-12));
    prev = k.abs_diff;
  }
  CHECK(prev <= 1e-10);
}

TEST_CASE("forelli_rudin growth classification") {
  CHECK(forelli_rudin_classify(0.0, -1.0) == GrowthClass::bounded);
  CHECK(forelli_rudin_classify(0.0, 0.0) == GrowthClass::logarithmic);
  CHECK(forelli_rudin_classify(0.0, 1.0) == GrowthClass::power);
  CHECK(forelli_rudin_classify(0.5, -0.7) == GrowthClass::bounded);
  CHECK(forelli_rudin_classify(1.0, 2.0) == GrowthClass::power);
  // radii that stop short of the boundary cannot classify
  CHECK_THROWS_AS(forelli_rudin_classify(0.0, 0.0, {0.3, 0.5, 0.7}),
                  inconclusive_error);
}

TEST_CASE("weighted_sup_check") {
  const SupCheck s = weighted_sup_check(2.0, 0.0);
  CHECK(s.closed_form == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(s.monotone);
  CHECK(s.abs_diff <= 1e-4);

  const SupCheck s2 = weighted_sup_check(1.8, 0.6);
  CHECK(s2.monotone);
  CHECK(s2.abs_diff <= 1e-4 * std::abs(s2.closed_form));

  CHECK_THROWS_AS(weighted_sup_check(1.0, 0.5), std::domain_error);
}

TEST_CASE("nested_kernel_check") {
  const ClosedFormCheck triv = nested_kernel_check(1.0, 1.0, 0.0);
  CHECK(triv.closed_form == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(triv.abs_diff <= 1e-10);

  const ClosedFormCheck unit = nested_kernel_check(1.0, 1.0, 1.0);
  CHECK(unit.closed_form == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(unit.abs_diff <= 1e-9);

  SplitMix64 rng(5150);
  for (int trial = 0; trial < 25; ++trial) {
    const double a = rng.uniform(0.3, 2.0);
    const double b = rng.uniform(0.3, 2.0);
    double c = rng.uniform(-1.0, 1.5);
    if (1.0 + a + b - 2.0 * c <= 0.2) c = 0.2;
    const ClosedFormCheck k = nested_kernel_check(a, b, c);
    CHECK(k.abs_diff <= 1e-7 * std::max(1.0, std::abs(k.closed_form)));
  }

  CHECK_THROWS_AS(nested_kernel_check(1.0, 1.0, 2.0), std::domain_error);
}
