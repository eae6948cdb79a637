#include "bergproj/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bergproj/gauss.hpp"

namespace bergproj {

QuadRulePtr build_rule(int n_r, int n_theta, double alpha, int refinement) {
  if (n_r < 1) throw std::domain_error("build_rule: n_r must be positive");
  if (n_theta < 2 || n_theta % 2 != 0)
    throw std::domain_error("build_rule: n_theta must be even and positive");
  if (!(alpha > -1.0)) throw std::domain_error("build_rule: alpha must exceed -1");
  if (refinement < 0)
    throw std::domain_error("build_rule: refinement must be nonnegative");

  auto rule = std::make_shared<QuadRule>();
  rule->alpha = alpha;
  rule->angular_count = n_theta;
  rule->boundary_refinement = refinement;

  const double norm = 1.0 + alpha;
  if (refinement == 0) {
    const Rule1D gj = gauss_jacobi01(n_r, 0.0, alpha);
    rule->radial_s = gj.x;
    rule->radial_w.resize(gj.w.size());
    for (std::size_t i = 0; i < gj.w.size(); ++i)
      rule->radial_w[i] = norm * gj.w[i];
  } else {
    // Panels [0, 1/2], [1-2^-j, 1-2^-(j+1)] and a final Jacobi panel
    // [1-2^-R, 1] that absorbs the (1-s)^alpha factor analytically.
    const Rule1D leg = gauss_legendre01(n_r);
    auto add_interior = [&](double lo, double hi) {
      const double h = hi - lo;
      for (int i = 0; i < n_r; ++i) {
        const double s = lo + h * leg.x[i];
        rule->radial_s.push_back(s);
        rule->radial_w.push_back(norm * h * leg.w[i] * std::pow(1.0 - s, alpha));
      }
    };
    add_interior(0.0, 0.5);
    for (int j = 1; j < refinement; ++j)
      add_interior(1.0 - std::pow(2.0, -j), 1.0 - std::pow(2.0, -(j + 1.0)));
    const double h = std::pow(2.0, -refinement);
    const Rule1D gj = gauss_jacobi01(n_r, 0.0, alpha);
    const double panel_mass = norm * std::pow(h, 1.0 + alpha);
    for (int i = 0; i < n_r; ++i) {
      rule->radial_s.push_back(1.0 - h + h * gj.x[i]);
      rule->radial_w.push_back(panel_mass * gj.w[i]);
    }
  }

  rule->radial_r.resize(rule->radial_s.size());
  for (std::size_t i = 0; i < rule->radial_s.size(); ++i)
    rule->radial_r[i] = std::sqrt(rule->radial_s[i]);

  rule->cos_theta.resize(n_theta);
  rule->sin_theta.resize(n_theta);
  for (int m = 0; m < n_theta; ++m) {
    const double theta = 2.0 * std::numbers::pi * m / n_theta;
    rule->cos_theta[m] = std::cos(theta);
    rule->sin_theta[m] = std::sin(theta);
  }
  return rule;
}

std::complex<double> integrate(const SampledField& f) {
  const QuadRule& rule = *f.rule;
  const int nr = rule.radial_count();
  const int nt = rule.angular_count;
  if (f.values.size() != rule.size())
    throw std::domain_error("integrate: field does not match its rule");

  std::vector<std::complex<double>> row(nr);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nr; ++i) {
    std::complex<double> s{0.0, 0.0};
    const std::complex<double>* v = f.values.data() + static_cast<std::size_t>(i) * nt;
    for (int m = 0; m < nt; ++m) s += v[m];
    row[i] = rule.radial_w[i] * s;
  }
  // rows combined in index order so the result is thread-count independent
  std::complex<double> total{0.0, 0.0};
  for (int i = 0; i < nr; ++i) total += row[i];
  return total / static_cast<double>(nt);
}

double lp_norm(const SampledField& f, double p) {
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be at least 1");
  const QuadRule& rule = *f.rule;
  const int nr = rule.radial_count();
  const int nt = rule.angular_count;
  if (f.values.size() != rule.size())
    throw std::domain_error("lp_norm: field does not match its rule");

  std::vector<double> row(nr);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nr; ++i) {
    double s = 0.0;
    const std::complex<double>* v = f.values.data() + static_cast<std::size_t>(i) * nt;
    for (int m = 0; m < nt; ++m) s += std::pow(std::abs(v[m]), p);
    row[i] = rule.radial_w[i] * s;
  }
  double total = 0.0;
  for (int i = 0; i < nr; ++i) total += row[i];
  return std::pow(total / nt, 1.0 / p);
}

} // namespace bergproj
