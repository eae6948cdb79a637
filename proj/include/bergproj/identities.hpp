#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "bergproj/quadrature.hpp"

// Closed-form-versus-quadrature verification of the hypergeometric and
// weighted-kernel identities the norm estimates build on.  Each check
// evaluates both sides independently and reports the discrepancy.
namespace bergproj::identities {

class inconclusive_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PairCheck {
  double lhs = 0.0; // quadrature side
  double rhs = 0.0; // closed form
  double abs_diff = 0.0;
};

struct SeriesQuadCheck {
  std::complex<double> series_value;
  std::complex<double> quadrature_value;
  double abs_diff = 0.0;
};

struct ClosedFormCheck {
  double closed_form = 0.0;
  double quadrature_value = 0.0;
  double abs_diff = 0.0;
};

struct SupCheck {
  double closed_form = 0.0;
  double numeric_sup = 0.0;
  double abs_diff = 0.0;
  bool monotone = false;
};

enum class GrowthClass { bounded, logarithmic, power };
const char* to_string(GrowthClass g);

// int_0^1 t^{c-1} (1-t)^{delta-1} 2F1(a,b;c;t) dt against
// Gamma(c)Gamma(delta)Gamma(delta+c-a-b) / (Gamma(delta+c-a)Gamma(delta+c-b)).
// Requires c > 0, delta > 0, delta+c-a-b > 0.
PairCheck hyp_beta_integral_check(double a, double b, double c, double delta,
                                  double tol);

// Weighted disk integral of the three-factor kernel
//   (1-|xi|^2)^t / ((1-z conj(xi))^a (1-w conj(xi))^b (1-xi conj(w))^c)
// against its expansion
//   1/(1+t) sum_j (a)_j (c)_j / ((2+t)_j j!) 2F1(b, c+j; 2+t+j; |w|^2) (z conj(w))^j.
SeriesQuadCheck kernel_expansion_check(std::complex<double> z,
                                       std::complex<double> w, double a,
                                       double b, double c, double t, int K,
                                       double tol, const Resolution& res = {});

// int_D (1-|xi|^2)^t / |1 - z conj(xi)|^{2a} dA(xi) against
// 2F1(a, a; 2+t; |z|^2) / (1+t).
ClosedFormCheck kernel_moment_check(std::complex<double> z, double a, double t,
                                    const Resolution& res = {});

// Growth classification of the kernel integral with exponent 2+t+c as
// |z| -> 1: bounded (c < 0), logarithmic (c = 0), or power (c > 0), decided
// by which candidate-asymptote ratio sequence stabilizes along `radii`.
GrowthClass forelli_rudin_classify(double t, double c,
                                   std::vector<double> radii = {0.9, 0.99,
                                                                0.999, 0.9999});

// sup_z (1-|z|^2)^{2a-t-2} int_D (1-|w|^2)^t / |1-z conj(w)|^{2a} dA(w)
// against Gamma(1+t)Gamma(2a-t-2)/Gamma(a)^2; requires a > 1 + t/2.
SupCheck weighted_sup_check(double a, double t);

// Nested integral int_D |z|^{2b} (1-|z|^2)^{a-1}
//   { int_D (1-|w|^2)^{b-1} / |1-z conj(w)|^{2c} dA(w) } dA(z)
// against Gamma(a)Gamma(b)Gamma(1+a+b-2c)/Gamma(1+a+b-c)^2; the inner
// integral is replaced by its closed form, the outer one integrated in the
// radial variable.  Requires a, b > 0 and 1+a+b-2c > 0.
ClosedFormCheck nested_kernel_check(double a, double b, double c);

} // namespace bergproj::identities
