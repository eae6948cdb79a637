#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bergproj/projection.hpp"
#include "bergproj/quadrature.hpp"

// Two-sided norm estimation for the weighted Bergman projection: closed-form
// bound evaluators, the Schur-test constant, the bilinear-form lower bound
// with its epsilon -> 0 limit, the Rayleigh-quotient lower bound with its
// principal/correction/remainder decomposition, coefficient tail bounds, a
// Hausdorff-Young inequality check, and the scalar inequality search used in
// the Riesz-projection upper-bound strategy.
namespace bergproj::bounds {

// The argument split in the tail estimates changes across beta = q/2
// (alpha = (2-p)/(p-1)); exactly on it, callers must perturb p.
class cutoff_error : public std::domain_error {
  using std::domain_error::domain_error;
};

class resolution_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gamma((2+a)/p) Gamma((2+a)/q) / Gamma((2+a)/2)^2 — the lower bound,
// conjecturally the exact norm.
double conjectured_norm(const SpaceParams& sp);

// (1+a) Gamma((1+a)/p) Gamma((1+a)/q) / Gamma((2+a)/2)^2 — the exact norm
// of the maximal projection, hence an upper bound.
double upper_bound_norm(const SpaceParams& sp);

// csc(pi/p), the Riesz-projection norm.
double dostanic_value(double p);

// Moment of dA_alpha: k! Gamma(2+alpha) / Gamma(k+2+alpha).  This is the
// (1+alpha)-normalized variant, so the squared 2-norm of z^k equals it
// exactly under the probability measure.
double coefficient_moment(int k, double alpha);

struct SchurCheck {
  double numeric_sup = 0.0;
  double closed_form = 0.0;
  double abs_diff = 0.0;
};
// Schur-test constant: sup over a boundary-refined radial grid of
// (1-|z|^2)^{(1+a)/p} (1+a) int (1-|w|^2)^{a-(1+a)/p} / |1-z conj(w)|^{2+a} dA(w),
// the integral taken in closed form.
SchurCheck schur_constant_numeric(const SpaceParams& sp);

// Closed-form value of the pairing <P# g_eps, h_eps> against the unit-norm
// test pair; converges to upper_bound_norm as eps -> 0+.
double bilinear_form_value(double eps, const SpaceParams& sp);

struct BilinearQuad {
  double value = 0.0;
  double g_norm = 0.0;
  double h_norm = 0.0;
};
// Numerical integration of the same pairing on boundary-refined rules with
// the test-pair weights absorbed; also verifies both norms are 1.
BilinearQuad bilinear_form_quadrature(double eps, const SpaceParams& sp,
                                      const Resolution& res = {});

// |P f_xi|_p / |f_xi|_p with the numerator evaluated from the coefficient
// series of the projection and the denominator in closed form.  K <= 0
// selects the default truncation for the tail target 1e-9.
double rayleigh_quotient_f_xi(std::complex<double> xi, const SpaceParams& sp,
                              int K = 0);

// Per-degree hypergeometric factor of the projected kernel coefficients,
// g_k(x) = 2F1(beta - 2 beta/q, beta + k; 2 beta + k; x), and its limit at
// x = 1^-.
double degree_factor(int k, double x, const SpaceParams& sp);
double degree_factor_limit(int k, const SpaceParams& sp);

enum class TailCase { fractional, taylor }; // beta < q/2 vs beta > q/2
TailCase tail_case(const SpaceParams& sp);  // cutoff_error at beta = q/2

struct DecompositionCoeffs {
  std::vector<double> epsilon_k; // correction-series coefficients
  std::vector<double> a_k;       // remainder-series coefficients at this xi
  std::vector<double> g_limit;   // g_k(1^-)
  std::vector<double> c1;        // fractional-case constants (else empty)
  int m = 0;                     // Taylor order (0 in the fractional case)
  TailCase tail = TailCase::fractional;
};
DecompositionCoeffs decomposition_coeffs(std::complex<double> xi,
                                         const SpaceParams& sp, int K);

struct DecompositionNorms {
  double phi_norm = 0.0;     // principal part, proportional to f_xi
  double psi_norm = 0.0;     // correction part
  double upsilon_norm = 0.0; // remainder part
  double f_norm = 0.0;
  double residual = 0.0; // | P f_xi - (Phi + Psi + Upsilon) |_p
};
DecompositionNorms decomposition_norm_check(std::complex<double> xi,
                                            const SpaceParams& sp, int K = 0);

// Fractional-power tail bound (region 1/2 < beta < q/2):
// max over the grid of |g_k(x) - g_k(1^-)| - C1(k) (1-x)^{2 beta/q}.
double fractional_tail_bound_check(int k, const SpaceParams& sp,
                                   std::span<const double> x_grid);
double fractional_tail_constant(int k, const SpaceParams& sp); // C1(k)

// Taylor-majorant tail bound (region beta > q/2): max over the grid of
// |g_k(x) - g_k(1^-)| / sum_{j<=m} |g_k^{(j)}(1^-)|/j! (1-x)^j; must be <= 1.
double taylor_tail_bound_check(int k, const SpaceParams& sp,
                               std::span<const double> x_grid);
double taylor_derivative_limit(int k, int j, const SpaceParams& sp);
int taylor_order(const SpaceParams& sp); // m = ceil(2 beta/q - beta)

struct HYCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0; // rhs - lhs, nonnegative up to quadrature error
};
// Coefficient-to-norm inequality |sum a_k z^k|_{p,alpha}^q <=
// sum moment_k^{q-1} |a_k|^q for p >= 2.
HYCheck hausdorff_young_check(std::span<const std::complex<double>> coeffs,
                              const SpaceParams& sp, const Resolution& res = {});

// conjectured_norm nondecreasing along p_list (all >= 2), and the Rayleigh
// estimate at |xi| = 0.99 nondecreasing within 1e-3 slack.
bool norm_monotonicity_check(std::span<const double> p_list, double alpha);

struct HVResult {
  long violations = 0;
  double max_feasible_b = 0.0;
};
// Sampled feasibility of max(|w|^p, |z|^p) <= a |w + conj(z)|^p
//   - b Re[(w z)^{p/2}] with log-uniform moduli and uniform phases;
// also reports the largest b consistent with every drawn sample.
HVResult hv_inequality_check(double p, double a, double b, long n_samples,
                             std::uint64_t seed);

struct NormReport {
  SpaceParams params;
  double lower_formula = 0.0;
  double upper_formula = 0.0;
  double dostanic = 0.0;
  std::vector<std::pair<double, double>> rayleigh_estimates; // (|xi|, quotient)
  std::vector<std::pair<double, double>> bilinear_estimates; // (eps, value)
  std::string diagnostics;
};
NormReport make_norm_report(const SpaceParams& sp,
                            std::span<const double> xi_schedule,
                            std::span<const double> eps_schedule);

} // namespace bergproj::bounds
