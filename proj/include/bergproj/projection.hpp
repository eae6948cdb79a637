#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bergproj/quadrature.hpp"

// The weighted Bergman projection, its maximal (modulus-kernel) variant, and
// the kernel-quotient test family f_xi together with the series expansion of
// its projection.
namespace bergproj {

struct SpaceParams {
  double p;     // integrability exponent, in (1, inf)
  double alpha; // weight exponent, > -1
  double q;     // conjugate exponent p/(p-1)
  double beta;  // (2+alpha)/2

  SpaceParams(double p_, double alpha_);
};

struct TestFunctionXi {
  std::complex<double> xi; // |xi| < 1
  SpaceParams params;

  TestFunctionXi(std::complex<double> xi_, const SpaceParams& params_);
};

// Kernel integral int f(w) (1 - z conj(w))^{-(2+alpha)} dA_alpha(w) at each
// evaluation point; alpha must match the field's rule.
std::vector<std::complex<double>> apply_bergman_projection(
    const SampledField& f, double alpha,
    std::span<const std::complex<double>> points);

// Same with the kernel modulus |1 - z conj(w)|^{-(2+alpha)}.
std::vector<std::complex<double>> apply_maximal_projection(
    const SampledField& f, double alpha,
    std::span<const std::complex<double>> points);

// f_xi(z) = (1 - xi conj(z))^{beta - 2 beta/p} (1 - z conj(xi))^{-beta},
// principal powers (both bases have positive real part on the disk).
std::vector<std::complex<double>> f_xi_values(
    const TestFunctionXi& t, std::span<const std::complex<double>> points);

struct SeriesCoeffs {
  std::vector<std::complex<double>> coeffs; // c_k, k < truncation
  int truncation = 0;
  double tail_bound = 0.0; // geometric estimate of the dropped tail
};

// Taylor coefficients of the projection of f_xi:
//   c_k = (beta)_k / k! * 2F1(2 beta/p - beta, beta+k; 2 beta+k; |xi|^2)
//         * conj(xi)^k.
// Throws when the geometric tail estimate exceeds tail_tol, i.e. K is too
// small for the requested tail tolerance.
SeriesCoeffs project_f_xi_series(const TestFunctionXi& t, int K,
                                 double tail_tol = 1e-3);

// Default truncation for a target tail size: ceil(log tol / log |xi|) + 50.
int default_truncation(double abs_xi, double tol);

// Horner evaluation of sum_k c_k z^k at arbitrary points.
std::vector<std::complex<double>> evaluate_series(
    const SeriesCoeffs& s, std::span<const std::complex<double>> points);

// L^p norm over the rule of the analytic function sum_k c_k z^k.  The
// angular direction is evaluated by FFT with a per-radius angular count of
// at least twice the surviving coefficient count, so boundary radii are
// resolved regardless of the rule's own angular count.
double series_lp_norm(std::span<const std::complex<double>> coeffs,
                      const QuadRule& rule, double p);
inline double series_lp_norm(const SeriesCoeffs& s, const QuadRule& rule,
                             double p) {
  return series_lp_norm(s.coeffs, rule, p);
}

} // namespace bergproj
