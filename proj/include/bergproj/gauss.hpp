#pragma once

#include <functional>
#include <vector>

namespace bergproj {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// n-point Gauss-Jacobi rule on (0, 1) for the weight x^exp0 * (1-x)^exp1,
// exp0, exp1 > -1.  Sum w_i f(x_i) approximates the weighted integral of f;
// exact for polynomials f of degree <= 2n-1.
Rule1D gauss_jacobi01(int n, double exp0, double exp1);

// Plain Gauss-Legendre on (0, 1).
Rule1D gauss_legendre01(int n);

// Adaptive tanh-sinh quadrature over (0, 1); converges geometrically for
// integrands with integrable algebraic or logarithmic endpoint
// singularities.  The integrand receives both t and 1-t so the endpoints
// can be evaluated without cancellation.
double tanh_sinh(const std::function<double(double t, double one_minus_t)>& f,
                 double tol, int max_level = 12);

} // namespace bergproj
