#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bergproj/bounds.hpp"
#include "bergproj/rng.hpp"
#include "bergproj/specfun.hpp"

using namespace bergproj;
using namespace bergproj::bounds;
using std::complex;

TEST_CASE("closed-form bound evaluators") {
  CHECK(conjectured_norm(SpaceParams(2.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(conjectured_norm(SpaceParams(2.0, 1.7)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(conjectured_norm(SpaceParams(4.0, 0.0)) ==
        doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-13));

  CHECK(upper_bound_norm(SpaceParams(2.0, 0.0)) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-13));
  CHECK(upper_bound_norm(SpaceParams(2.0, 1.0)) ==
        doctest::Approx(8.0 / std::numbers::pi).epsilon(1e-13));

  CHECK(dostanic_value(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dostanic_value(4.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // the formula-level disproof of the csc(pi/p) value
  CHECK(conjectured_norm(SpaceParams(4.0, 0.0)) > dostanic_value(4.0));
}

TEST_CASE("bound ordering and dual symmetry on a parameter grid") {
  for (int i = 0; i < 20; ++i) {
    const double p = 1.1 + 0.35 * i;
    for (int j = 0; j < 10; ++j) {
      const double alpha = -0.9 + 0.5 * j;
      const SpaceParams sp(p, alpha);
      const SpaceParams dual(sp.q, alpha);
      const double lower = conjectured_norm(sp);
      const double upper = upper_bound_norm(sp);
      CHECK(lower <= upper * (1.0 + 1e-12));
      CHECK(lower == doctest::Approx(conjectured_norm(dual)).epsilon(1e-12));
      CHECK(upper == doctest::Approx(upper_bound_norm(dual)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Riesz-projection limit as alpha -> -1") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    double prev_gap = 1e300;
    for (double delta : {1e-1, 1e-2, 1e-3}) {
      const double gap =
          std::abs(conjectured_norm(SpaceParams(p, -1.0 + delta)) - dostanic_value(p));
      CHECK(gap <= prev_gap + 1e-15); // ties allowed: identically 0 at p = 2
      prev_gap = gap;
    }
    CHECK(prev_gap < 5e-3);
  }
}

TEST_CASE("Schur-test constant matches the closed form") {
  const SchurCheck c20 = schur_constant_numeric(SpaceParams(2.0, 0.0));
  CHECK(c20.closed_form == doctest::Approx(std::numbers::pi).epsilon(1e-13));
  CHECK(c20.abs_diff <= 1e-5);

  const SchurCheck c35 = schur_constant_numeric(SpaceParams(3.0, 0.5));
  CHECK(c35.abs_diff <= 1e-5);

  // C(p) = C(q)
  const SpaceParams sp(3.0, 0.5);
  CHECK(schur_constant_numeric(SpaceParams(sp.q, 0.5)).closed_form ==
        doctest::Approx(c35.closed_form).epsilon(1e-12));
}

TEST_CASE("bilinear form closed value") {
  const SpaceParams p20(2.0, 0.0);
  CHECK(bilinear_form_value(1.0, p20) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
  CHECK(std::abs(bilinear_form_value(1e-4, p20) - std::numbers::pi) < 1e-2);

  // nondecreasing toward the upper bound as eps decreases, never above it
  for (const SpaceParams& sp :
       {SpaceParams(2.0, 0.0), SpaceParams(3.0, 0.0), SpaceParams(2.0, 1.0)}) {
    const double upper = upper_bound_norm(sp);
    double prev = 0.0;
    for (double eps : {1.0, 0.1, 0.01, 1e-3, 1e-4}) {
      const double v = bilinear_form_value(eps, sp);
      CHECK(v <= upper * (1.0 + 1e-12));
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
    CHECK(prev == doctest::Approx(upper).epsilon(0.01));
  }
}

TEST_CASE("bilinear form quadrature") {
  const SpaceParams p20(2.0, 0.0), p30(3.0, 0.0);
  for (double eps : {1.0, 0.5, 0.1}) {
    const BilinearQuad b = bilinear_form_quadrature(eps, p20);
    CHECK(b.g_norm == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(b.h_norm == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK(bilinear_form_quadrature(1.0, p20).value ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-5));
  CHECK(bilinear_form_quadrature(0.1, p30).value ==
        doctest::Approx(bilinear_form_value(0.1, p30)).epsilon(1e-4));
  // the kernel factor grows like (1-x)^{-(1+alpha)} here; exercises the
  // overflow floor near the corner
  const SpaceParams p21(2.0, 1.0);
  CHECK(bilinear_form_quadrature(0.1, p21).value ==
        doctest::Approx(bilinear_form_value(0.1, p21)).epsilon(1e-4));
  // boundary mass beyond double-precision resolution
  CHECK_THROWS_AS(bilinear_form_quadrature(1e-3, p20), resolution_error);
}

TEST_CASE("Rayleigh quotient basics") {
  const SpaceParams p40(4.0, 0.0);
  CHECK(rayleigh_quotient_f_xi({0.0, 0.0}, p40) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // p = 2: the projection fixes f_xi, quotient 1 up to truncation
  for (double r : {0.3, 0.9}) {
    CHECK(rayleigh_quotient_f_xi({r, 0.0}, SpaceParams(2.0, 0.0)) <= 1.0 + 1e-6);
    CHECK(rayleigh_quotient_f_xi({r, 0.0}, SpaceParams(2.0, 1.0)) <= 1.0 + 1e-6);
  }

  // the sweep the lower bound rests on: nondecreasing in |xi|, bounded by
  // the maximal-projection norm, final value in [1.40, 1.5708]
  const double upper = upper_bound_norm(p40);
  double prev = 0.0;
  for (double r : {0.9, 0.99}) {
    const double quot = rayleigh_quotient_f_xi({r, 0.0}, p40);
    CHECK(quot >= prev);
    CHECK(quot <= upper + 1e-6);
    prev = quot;
  }
  CHECK(prev > 1.3);
  CHECK(prev < conjectured_norm(p40));
}

TEST_CASE("Rayleigh quotients near the boundary stay inside the bound sandwich") {
  // measured at |xi| = 0.999: quotient/conjectured = 0.949 (3,0), 0.951
  // (3,1), 0.897 (4,0), 0.905 (4,1); the gap closes only like
  // 1/log(1/(1-|xi|^2))^{1/p}
  for (double p : {3.0, 4.0}) {
    for (double alpha : {0.0, 1.0}) {
      const SpaceParams sp(p, alpha);
      const double quot = rayleigh_quotient_f_xi({0.999, 0.0}, sp);
      CHECK(quot <= upper_bound_norm(sp) + 1e-6);
      CHECK(quot < conjectured_norm(sp));
      CHECK(quot >= 0.85 * conjectured_norm(sp));
    }
  }
}

TEST_CASE("decomposition coefficients at p=4, alpha=0") {
  const SpaceParams sp(4.0, 0.0);
  const DecompositionCoeffs d = decomposition_coeffs({0.0, 0.0}, sp, 8);
  // Gamma(2)Gamma(1)/(Gamma(2.5)Gamma(0.5)) - 1
  CHECK(d.epsilon_k[0] == doctest::Approx(-0.5755868).epsilon(1e-6));
  CHECK(d.g_limit[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(d.a_k[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(d.tail == TailCase::taylor);
  CHECK(d.m == 1);
  CHECK(d.m < 2.0 * sp.beta / sp.q);
}

TEST_CASE("correction coefficients decay at the predicted rate") {
  const SpaceParams sp(4.0, 0.0);
  const DecompositionCoeffs d = decomposition_coeffs({0.5, 0.0}, sp, 1001);
  const double expected = 2.0 * sp.beta - 2.0 * sp.beta / sp.q - 2.0;
  const double slope = std::log(std::abs(d.epsilon_k[1000] / d.epsilon_k[100])) /
                       std::log(1001.0 / 101.0);
  CHECK(std::abs(slope - expected) < 0.1);
  // fitted constant stays bounded
  double c_max = 0.0;
  for (int k = 100; k <= 1000; ++k)
    c_max = std::max(c_max, std::abs(d.epsilon_k[k]) /
                                std::pow(k + 1.0, expected));
  CHECK(c_max < 10.0);
}

TEST_CASE("cut-off surface beta = q/2 is rejected") {
  // p = 3, alpha = -0.5: beta = 0.75 = q/2
  CHECK_THROWS_AS(tail_case(SpaceParams(3.0, -0.5)), cutoff_error);
  CHECK_THROWS_AS(decomposition_coeffs({0.1, 0.0}, SpaceParams(3.0, -0.5), 4),
                  cutoff_error);
}

TEST_CASE("decomposition norms") {
  const SpaceParams sp(4.0, 0.0);

  // xi = 0: correction and remainder reduce to their constant terms
  const DecompositionNorms at0 = decomposition_norm_check({0.0, 0.0}, sp, 8);
  CHECK(at0.f_norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(at0.phi_norm / at0.f_norm ==
        doctest::Approx(conjectured_norm(sp)).epsilon(1e-10));
  CHECK(at0.psi_norm ==
        doctest::Approx(conjectured_norm(sp) * 0.5755868).epsilon(1e-6));
  CHECK(at0.upsilon_norm == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(at0.residual <= 1e-6);

  const DecompositionNorms d1 = decomposition_norm_check({0.9, 0.0}, sp);
  const DecompositionNorms d2 = decomposition_norm_check({0.99, 0.0}, sp);
  CHECK(d1.residual <= 1e-6);
  CHECK(d2.residual <= 1e-6);
  CHECK(d1.phi_norm / d1.f_norm ==
        doctest::Approx(conjectured_norm(sp)).epsilon(1e-8));
  CHECK(d2.phi_norm / d2.f_norm ==
        doctest::Approx(conjectured_norm(sp)).epsilon(1e-8));
  // bounded parts move little while f grows
  CHECK(std::max(d1.psi_norm, d2.psi_norm) <
        2.0 * std::min(d1.psi_norm, d2.psi_norm));
  CHECK(std::max(d1.upsilon_norm, d2.upsilon_norm) <
        2.0 * std::min(d1.upsilon_norm, d2.upsilon_norm));
  CHECK(d2.f_norm > d1.f_norm);
}

TEST_CASE("fractional tail bound (1/2 < beta < q/2)") {
  // p = 4, alpha = -0.5 has beta = 0.75 > q/2 = 2/3: inadmissible here
  CHECK_THROWS_AS(
      fractional_tail_bound_check(0, SpaceParams(4.0, -0.5), std::vector<double>{0.5}),
      std::domain_error);

  const SpaceParams sp(8.0, -0.9); // beta = 0.55, q/2 = 4/7
  std::vector<double> grid;
  for (double x = 0.0; x < 0.95; x += 0.1) grid.push_back(x);
  grid.push_back(0.99);
  grid.push_back(0.999);
  for (int k : {0, 1, 5})
    CHECK(fractional_tail_bound_check(k, sp, grid) <= 1e-10);

  // the bounded ratio is nondecreasing toward its sup
  const double b2q = 2.0 * sp.beta / sp.q;
  const double g_lim = degree_factor_limit(1, sp);
  double prev = -1e300;
  for (double x : grid) {
    const double ratio = std::abs(degree_factor(1, x, sp) - g_lim) /
                         std::pow(1.0 - x, b2q);
    CHECK(ratio >= prev - 1e-12);
    prev = ratio;
  }
}

TEST_CASE("Taylor tail bound (beta > q/2)") {
  const SpaceParams sp(4.0, 0.0); // m = 1
  CHECK(taylor_order(sp) == 1);
  CHECK_THROWS_AS(
      taylor_tail_bound_check(0, SpaceParams(8.0, -0.9), std::vector<double>{0.5}),
      std::domain_error);

  std::vector<double> grid;
  for (double x = 0.0; x < 0.95; x += 0.1) grid.push_back(x);
  grid.push_back(0.99);
  for (int k : {0, 1, 5, 50})
    CHECK(taylor_tail_bound_check(k, sp, grid) <= 1.0);

  // |g_k^{(j)}(1^-)| ~ (k+1)^{beta - 2 beta/q + j}
  const double expected = sp.beta - 2.0 * sp.beta / sp.q + 1.0;
  const double slope = std::log(taylor_derivative_limit(1000, 1, sp) /
                                taylor_derivative_limit(100, 1, sp)) /
                       std::log(1001.0 / 101.0);
  CHECK(std::abs(slope - expected) < 0.1);

  // sup of |g_k^{(m)}| on the grid sits at the largest grid point
  using specfun::hyp2f1_derivative;
  const double a = sp.beta - 2.0 * sp.beta / sp.q;
  for (int k : {0, 3}) {
    double best = -1.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = std::abs(
          hyp2f1_derivative({a, sp.beta + k, 2.0 * sp.beta + k, grid[i]}, 1, 1e-12)
              .value);
      if (v > best) {
        best = v;
        best_idx = i;
      }
    }
    CHECK(best_idx == grid.size() - 1);
  }
}

TEST_CASE("Hausdorff-Young inequality") {
  SplitMix64 rng(8080);

  // Parseval at p = 2
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<complex<double>> c(8);
    for (auto& v : c) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const HYCheck h = hausdorff_young_check(c, SpaceParams(2.0, 0.5),
                                            Resolution{64, 64, 2});
    CHECK(std::abs(h.margin) <= 1e-8);
  }

  // single monomial z at p = 2, alpha = 0: both sides are the moment 1/2
  std::vector<complex<double>> mono(2, complex<double>{0.0, 0.0});
  mono[1] = {1.0, 0.0};
  const HYCheck hm =
      hausdorff_young_check(mono, SpaceParams(2.0, 0.0), Resolution{64, 64, 2});
  CHECK(hm.lhs == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(hm.rhs == doctest::Approx(0.5).epsilon(1e-13));

  // strict inequality side for p > 2
  for (double alpha : {0.0, 1.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<complex<double>> c(10);
      for (auto& v : c) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      const HYCheck h = hausdorff_young_check(c, SpaceParams(4.0, alpha),
                                              Resolution{64, 64, 2});
      CHECK(h.margin >= -1e-8);
    }
  }

  CHECK_THROWS_AS(hausdorff_young_check(mono, SpaceParams(1.5, 0.0), Resolution{}),
                  std::domain_error);
}

TEST_CASE("norm monotonicity in p") {
  const std::vector<double> p_list{2.0, 2.5, 3.0, 4.0, 8.0};
  CHECK(norm_monotonicity_check(p_list, 0.0));
  CHECK(norm_monotonicity_check(std::vector<double>{2.0}, 0.7));
  // the p = 2 value 1 is the minimum along any such list
  for (double p : p_list)
    CHECK(conjectured_norm(SpaceParams(p, 0.3)) >=
          conjectured_norm(SpaceParams(2.0, 0.3)) - 1e-14);
  CHECK_THROWS_AS(norm_monotonicity_check(std::vector<double>{1.5, 2.0}, 0.0),
                  std::domain_error);
}

TEST_CASE("scalar inequality sampling") {
  // p = 2, a = 1, b = 2 is the algebraic identity case: no violations
  const HVResult h2 = hv_inequality_check(2.0, 1.0, 2.0, 100000, 17);
  CHECK(h2.violations == 0);
  CHECK(h2.max_feasible_b == doctest::Approx(2.0).epsilon(1e-3));

  const double a15 = std::pow(dostanic_value(1.5), 1.5);
  const HVResult s1 = hv_inequality_check(1.5, a15, 0.0, 100000, 1);
  const HVResult s2 = hv_inequality_check(1.5, a15, 0.0, 100000, 2);
  CHECK(s1.max_feasible_b > 0.0);
  CHECK(std::abs(s1.max_feasible_b - s2.max_feasible_b) <=
        0.1 * s1.max_feasible_b);

  CHECK_THROWS_AS(hv_inequality_check(2.5, 1.0, 0.0, 10, 1), std::domain_error);
  CHECK_THROWS_AS(hv_inequality_check(2.0, -1.0, 0.0, 10, 1), std::domain_error);
}

TEST_CASE("norm report assembly") {
  const std::vector<double> xis{0.5, 0.9};
  const std::vector<double> epses{1.0, 0.1};
  const NormReport r = make_norm_report(SpaceParams(2.0, 0.0), xis, epses);
  CHECK(r.lower_formula <= r.upper_formula);
  for (const auto& [x, quot] : r.rayleigh_estimates) {
    (void)x;
    CHECK(quot <= 1.0 + 1e-6); // p = 2
  }
  CHECK(r.rayleigh_estimates.size() == 2);
  CHECK(r.bilinear_estimates.size() == 2);
}
