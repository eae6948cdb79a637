#pragma once

#include <complex>
#include <memory>
#include <vector>

// Weighted quadrature over the unit disk for the probability measures
// dA_alpha = (1+alpha)(1-|z|^2)^alpha dA, and L^p norms of sampled fields.
//
// Radial direction: s = r^2 with the Jacobi weight (1-s)^alpha absorbed into
// the node weights, plus optional geometric panels accumulating at s = 1.
// Angular direction: equispaced trapezoid rule, exact for trigonometric
// polynomials of degree below the angular count.
namespace bergproj {

struct Resolution {
  int n_r = 256;       // radial nodes per panel
  int n_theta = 512;   // equispaced angles (even)
  int refinement = 4;  // graded panels near s = 1
};

struct QuadRule {
  std::vector<double> radial_s; // s-nodes in (0,1), ascending
  std::vector<double> radial_w; // weights, sum to 1
  std::vector<double> radial_r; // sqrt(s), cached
  std::vector<double> cos_theta;
  std::vector<double> sin_theta;
  int angular_count = 0;
  double alpha = 0.0;
  int boundary_refinement = 0;

  int radial_count() const { return static_cast<int>(radial_s.size()); }
  std::size_t size() const {
    return radial_s.size() * static_cast<std::size_t>(angular_count);
  }
  std::complex<double> node(int i, int m) const {
    return {radial_r[i] * cos_theta[m], radial_r[i] * sin_theta[m]};
  }
};

using QuadRulePtr = std::shared_ptr<const QuadRule>;

QuadRulePtr build_rule(int n_r, int n_theta, double alpha, int refinement);
inline QuadRulePtr build_rule(const Resolution& res, double alpha) {
  return build_rule(res.n_r, res.n_theta, alpha, res.refinement);
}

struct SampledField {
  QuadRulePtr rule;
  std::vector<std::complex<double>> values; // [i * angular_count + m]
};

// Pointwise sampling of f(z) on the rule's polar grid.  f is invoked from
// multiple threads and must be safe to call concurrently.
template <typename F>
SampledField sample(const QuadRulePtr& rule, F&& f) {
  SampledField field;
  field.rule = rule;
  field.values.resize(rule->size());
  const int nr = rule->radial_count();
  const int nt = rule->angular_count;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nr; ++i) {
    for (int m = 0; m < nt; ++m)
      field.values[static_cast<std::size_t>(i) * nt + m] = f(rule->node(i, m));
  }
  return field;
}

// Integral of the field against dA_alpha of its rule.
std::complex<double> integrate(const SampledField& f);

// (integral of |f|^p dA_alpha)^{1/p}, p >= 1.
double lp_norm(const SampledField& f, double p);

// Radial-only integral sum_i w_i g(s_i), approximating the weighted
// radial integral (1+alpha) int_0^1 g(s) (1-s)^alpha ds.
template <typename G>
double integrate_radial(const QuadRule& rule, G&& g) {
  double total = 0.0;
  for (int i = 0; i < rule.radial_count(); ++i)
    total += rule.radial_w[i] * g(rule.radial_s[i]);
  return total;
}

} // namespace bergproj
