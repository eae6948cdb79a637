#pragma once

#include <complex>
#include <span>

#include "bergproj/quadrature.hpp"

// Straight-line serial implementations of the parallel kernels, kept as the
// reference the tests and the benchmark compare against.
namespace bergproj::ref {

std::complex<double> integrate(const SampledField& f);

double lp_norm(const SampledField& f, double p);

// Kernel integral int f(w) k(z, w) dA_alpha(w) at each evaluation point,
// with k = (1 - z conj(w))^{-(2+alpha)}, or its modulus when `modulus`.
std::vector<std::complex<double>> apply_kernel(const SampledField& f,
                                               double alpha,
                                               std::span<const std::complex<double>> points,
                                               bool modulus);

// L^p norm over the rule of the analytic series sum_k c_k z^k.
double series_lp_norm(std::span<const std::complex<double>> coeffs,
                      const QuadRule& rule, double p);

} // namespace bergproj::ref
