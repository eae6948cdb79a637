#include "bergproj/gauss.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bergproj/specfun.hpp"

namespace bergproj {
namespace {

// Jacobi polynomial P_n^{(A,B)}(x) on [-1, 1] by the three-term recurrence.
double jacobi_poly(int n, double A, double B, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = 0.5 * (A - B) + 0.5 * (A + B + 2.0) * x;
  for (int i = 1; i < n; ++i) {
    const double v = 2.0 * i + A + B;
    const double a1 = 2.0 * (i + 1.0) * (i + A + B + 1.0) * v;
    const double a2 = (v + 1.0) * (A * A - B * B);
    const double a3 = v * (v + 1.0) * (v + 2.0);
    const double a4 = 2.0 * (i + A) * (i + B) * (v + 2.0);
    const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double jacobi_deriv(int n, double A, double B, double x) {
  if (n == 0) return 0.0;
  return 0.5 * (n + A + B + 1.0) * jacobi_poly(n - 1, A + 1.0, B + 1.0, x);
}

} // namespace

Rule1D gauss_jacobi01(int n, double exp0, double exp1) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi01: n must be positive");
  if (exp0 <= -1.0 || exp1 <= -1.0)
    throw std::invalid_argument("gauss_jacobi01: exponents must exceed -1");

  // Weight (1-x)^A (1+x)^B on [-1, 1] maps to x^B (1-x)^A on (0, 1).
  const double A = exp1;
  const double B = exp0;

  // Roots of P_n^{(A,B)} by Newton iteration with deflation against the
  // roots already found; Chebyshev-like points seed the iteration.
  std::vector<double> roots(n);
  constexpr double tol = 1e-15;
  for (int k = 0; k < n; ++k) {
    double r = -std::cos(std::numbers::pi * (2.0 * k + 1.0) / (2.0 * n));
    if (k > 0) r = 0.5 * (r + roots[k - 1]);
    for (int iter = 0; iter < 200; ++iter) {
      double s = 0.0;
      for (int j = 0; j < k; ++j) s += 1.0 / (r - roots[j]);
      const double f = jacobi_poly(n, A, B, r);
      const double df = jacobi_deriv(n, A, B, r);
      const double delta = f / (f * s - df);
      r += delta;
      if (std::abs(delta) < tol) break;
    }
    roots[k] = r;
  }

  // w_i = 2^{A+B+1} Gamma(n+A+1) Gamma(n+B+1) / (n! Gamma(n+A+B+1))
  //       / ((1 - x_i^2) P_n'(x_i)^2)
  using specfun::ln_gamma;
  const double log_c = (A + B + 1.0) * std::numbers::ln2 + ln_gamma(n + A + 1.0) +
                       ln_gamma(n + B + 1.0) - ln_gamma(n + 1.0) -
                       ln_gamma(n + A + B + 1.0);
  const double cw = std::exp(log_c);

  Rule1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int k = 0; k < n; ++k) {
    const double xi = roots[k];
    const double dp = jacobi_deriv(n, A, B, xi);
    const double w11 = cw / ((1.0 - xi * xi) * dp * dp);
    rule.x[k] = 0.5 * (1.0 + xi);
    // dx = 2 ds and (1-x)^A (1+x)^B = 2^{A+B} (1-s)^A s^B
    rule.w[k] = w11 / std::pow(2.0, A + B + 1.0);
  }
  return rule;
}

Rule1D gauss_legendre01(int n) { return gauss_jacobi01(n, 0.0, 0.0); }

namespace {

// One abscissa of the tanh-sinh map: t = (1+tanh((pi/2) sinh x))/2 with the
// complement u = 1-t and the Jacobian dt/dx computed cancellation-free.
struct TanhSinhPoint {
  double t, u, w;
};

TanhSinhPoint ts_point(double x) {
  const double T = 0.5 * std::numbers::pi * std::sinh(x);
  const double e = std::exp(-2.0 * std::abs(T));
  const double denom = 1.0 + e;
  TanhSinhPoint p;
  const double small = e / denom;
  const double large = 1.0 / denom;
  p.t = (T >= 0.0) ? large : small;
  p.u = (T >= 0.0) ? small : large;
  p.w = std::numbers::pi * std::cosh(x) * p.t * p.u;
  return p;
}

} // namespace

double tanh_sinh(const std::function<double(double, double)>& f, double tol,
                 int max_level) {
  constexpr double x_max = 5.6;
  constexpr double u_floor = 1e-300;

  auto term = [&](double x) -> double {
    const TanhSinhPoint p = ts_point(x);
    if (p.u < u_floor || p.t < u_floor) return 0.0;
    return p.w * f(p.t, p.u);
  };

  double h = 1.0;
  double sum = term(0.0);
  for (int k = 1; k * h <= x_max; ++k) sum += term(k * h) + term(-k * h);
  double integral = h * sum;

  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double odd = 0.0;
    for (int k = 1; k * h <= x_max; k += 2) odd += term(k * h) + term(-k * h);
    const double refined = 0.5 * integral + h * odd;
    const bool converged =
        std::abs(refined - integral) <= tol * std::max(std::abs(refined), 1.0) &&
        level >= 3;
    integral = refined;
    if (converged) break;
  }
  return integral;
}

} // namespace bergproj
