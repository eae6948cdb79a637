#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

// Gamma-family functions and the Gauss hypergeometric function 2F1 with the
// transformations needed to evaluate it accurately on (-1, 1), arbitrarily
// close to the right endpoint.  All functions are pure and thread-safe.
namespace bergproj::specfun {

class domain_error : public std::domain_error {
  using std::domain_error::domain_error;
};

class divergence_error : public std::domain_error {
  using std::domain_error::domain_error;
};

// Thrown when a series fails its tail criterion within the term budget.
// Carries the partial sum accumulated so far.
class budget_error : public std::runtime_error {
 public:
  budget_error(const std::string& msg, double partial)
      : std::runtime_error(msg), partial_value(partial) {}
  double partial_value;
};

enum class Hyp2F1Strategy : std::uint8_t {
  direct_series,
  euler_transform,
  integral_rep,
  gauss_at_one,
};

const char* to_string(Hyp2F1Strategy s);

struct Hyp2F1Args {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;      // must not be zero or a negative integer
  double lambda = 0.0; // argument, |lambda| < 1
};

struct EvalResult {
  double value = 0.0;
  double est_abs_error = 0.0;
  long terms_used = 0;
  Hyp2F1Strategy strategy = Hyp2F1Strategy::direct_series;
};

// ln Gamma(x) for x > 0, accurate to ~1e-14 relative in Gamma on (0, 170].
double ln_gamma(double x);

// ln |Gamma(x)| together with the sign of Gamma(x).  Negative non-integer
// arguments go through the reflection formula; poles are domain errors.
struct SignedLnGamma {
  double log_abs;
  int sign; // +1 or -1
};
SignedLnGamma ln_gamma_signed(double x);

// Digamma function psi(x); negative non-integer x via reflection.
double digamma(double x);

// prod Gamma(numerator) / prod Gamma(denominator) with sign tracking.
// A pole in the denominator gives 0, a pole in the numerator infinity.
double gamma_ratio(std::initializer_list<double> numerator,
                   std::initializer_list<double> denominator);

// Rising factorial (a)_k as an exact product, preserving sign and the exact
// zeros that occur when a is a nonpositive integer.
double pochhammer(double a, long k);

// Gauss hypergeometric function 2F1(a, b; c; lambda) on lambda in (-1, 1).
EvalResult hyp2f1(const Hyp2F1Args& args, double tol);

// 2F1 at lambda = 1^- via the Gauss summation formula; requires c-a-b > 0.
double hyp2f1_at_one(double a, double b, double c);

// 2F1(a, b; c; 1-u) parameterized by u = 1-lambda, stable for u far below
// machine epsilon where 1-u would round to 1.
EvalResult hyp2f1_near_one(double a, double b, double c, double u, double tol);

// k-th derivative of 2F1 with respect to lambda:
// (a)_k (b)_k / (c)_k * 2F1(a+k, b+k; c+k; lambda).
EvalResult hyp2f1_derivative(const Hyp2F1Args& args, int k, double tol);

} // namespace bergproj::specfun
