#include "bergproj/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bergproj/gauss.hpp"
#include "bergproj/specfun.hpp"

namespace bergproj::identities {

using specfun::gamma_ratio;
using specfun::hyp2f1;
using specfun::hyp2f1_near_one;
using specfun::pochhammer;
using std::complex;

namespace {

// 2F1 evaluated from either side of the near-one switch, whichever keeps
// full accuracy for the given argument.
double f21(double a, double b, double c, double t, double u, double tol) {
  if (t < 0.995) return hyp2f1({a, b, c, t}, tol).value;
  return hyp2f1_near_one(a, b, c, u, tol).value;
}

} // namespace

const char* to_string(GrowthClass g) {
  switch (g) {
    case GrowthClass::bounded: return "bounded";
    case GrowthClass::logarithmic: return "logarithmic";
    case GrowthClass::power: return "power";
  }
  return "unknown";
}

PairCheck hyp_beta_integral_check(double a, double b, double c, double delta,
                                  double tol) {
  if (!(c > 0.0) || !(delta > 0.0) || !(delta + c - a - b > 0.0))
    throw std::domain_error(
        "hyp_beta_integral_check: requires c > 0, delta > 0, delta+c-a-b > 0");

  PairCheck out;
  out.rhs = gamma_ratio({c, delta, delta + c - a - b},
                        {delta + c - a, delta + c - b});
  out.lhs = tanh_sinh(
      [&](double t, double u) {
        return std::pow(t, c - 1.0) * std::pow(u, delta - 1.0) *
               f21(a, b, c, t, u, tol * 1e-2);
      },
      tol * 1e-2);
  out.abs_diff = std::abs(out.lhs - out.rhs);
  return out;
}

SeriesQuadCheck kernel_expansion_check(complex<double> z, complex<double> w,
                                       double a, double b, double c, double t,
                                       int K, double tol,
                                       const Resolution& res) {
  if (!(std::abs(z) < 1.0 && std::abs(w) < 1.0))
    throw std::domain_error("kernel_expansion_check: z, w must lie in the disk");
  if (!(t > -1.0))
    throw std::domain_error("kernel_expansion_check: t must exceed -1");
  if (K < 1) throw std::domain_error("kernel_expansion_check: K must be positive");

  SeriesQuadCheck out;

  // series side
  const complex<double> zw = z * std::conj(w);
  const double x = std::norm(w);
  const double r = std::abs(zw);
  {
    complex<double> sum{0.0, 0.0};
    complex<double> zw_pow{1.0, 0.0};
    double coeff = 1.0; // (a)_j (c)_j / ((2+t)_j j!)
    int streak = 0;
    for (int j = 0; j < K; ++j) {
      const double fj = hyp2f1({b, c + j, 2.0 + t + j, x}, tol * 1e-2).value;
      const complex<double> term = coeff * fj * zw_pow;
      sum += term;
      if (std::abs(term) < tol * std::max(std::abs(sum), 1e-300)) {
        if (++streak >= 3) break;
      } else {
        streak = 0;
      }
      zw_pow *= zw;
      coeff *= (a + j) * (c + j) / ((2.0 + t + j) * (j + 1.0));
    }
    if (streak < 3 && r > 0.0) {
      // geometric tail in |z conj(w)|
      const double tail = std::abs(coeff) * std::pow(r, K) / (1.0 - r);
      if (tail > tol * std::max(std::abs(sum), 1.0))
        throw specfun::budget_error(
            "kernel_expansion_check: series tail not resolved within K terms",
            std::abs(sum) / (1.0 + t));
    }
    out.series_value = sum / (1.0 + t);
  }

  // quadrature side: rule with alpha = t absorbs the radial weight; the
  // normalized measure contributes the extra factor 1/(1+t).
  {
    auto rule = build_rule(res, t);
    auto field = sample(rule, [&](complex<double> xi) {
      const complex<double> k1 = std::pow(1.0 - z * std::conj(xi), -a);
      const complex<double> k2 = std::pow(1.0 - w * std::conj(xi), -b);
      const complex<double> k3 = std::pow(1.0 - xi * std::conj(w), -c);
      return k1 * k2 * k3;
    });
    out.quadrature_value = integrate(field) / (1.0 + t);
  }
  out.abs_diff = std::abs(out.series_value - out.quadrature_value);
  return out;
}

ClosedFormCheck kernel_moment_check(complex<double> z, double a, double t,
                                    const Resolution& res) {
  if (!(std::abs(z) < 1.0))
    throw std::domain_error("kernel_moment_check: z must lie in the disk");
  if (!(t > -1.0)) throw std::domain_error("kernel_moment_check: t must exceed -1");

  ClosedFormCheck out;
  const double x = std::norm(z);
  out.closed_form = f21(a, a, 2.0 + t, x, 1.0 - x, 1e-13) / (1.0 + t);

  auto rule = build_rule(res, t);
  auto field = sample(rule, [&](complex<double> xi) {
    return complex<double>{std::pow(std::abs(1.0 - z * std::conj(xi)), -2.0 * a), 0.0};
  });
  out.quadrature_value = integrate(field).real() / (1.0 + t);
  out.abs_diff = std::abs(out.closed_form - out.quadrature_value);
  return out;
}

GrowthClass forelli_rudin_classify(double t, double c,
                                   std::vector<double> radii) {
  if (!(t > -1.0)) throw std::domain_error("forelli_rudin_classify: t must exceed -1");
  if (radii.size() < 3)
    throw std::domain_error("forelli_rudin_classify: need at least 3 radii");
  if (!std::is_sorted(radii.begin(), radii.end()))
    throw std::domain_error("forelli_rudin_classify: radii must be increasing");

  const double a = 0.5 * (2.0 + t + c);
  std::vector<double> integral(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const double x = r * r;
    integral[i] = f21(a, a, 2.0 + t, x, (1.0 - r) * (1.0 + r), 1e-12) / (1.0 + t);
  }

  // candidate asymptotes: 1, log 1/(1-|z|^2), (1-|z|^2)^{-c}; a candidate
  // stabilizes when its ratio moves by less than 5% over the last two radii
  auto final_change = [&](auto&& asymptote) {
    const std::size_t n = radii.size();
    const double cur = integral[n - 1] / asymptote(radii[n - 1]);
    const double prev = integral[n - 2] / asymptote(radii[n - 2]);
    return std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
  };
  const double change_bounded = final_change([](double) { return 1.0; });
  const double change_log = final_change(
      [](double r) { return std::log(1.0 / ((1.0 - r) * (1.0 + r))); });
  const double change_power = final_change(
      [&](double r) { return std::pow((1.0 - r) * (1.0 + r), -c); });

  const double best = std::min({change_bounded, change_log, change_power});
  if (best >= 0.05)
    throw inconclusive_error(
        "forelli_rudin_classify: no candidate stabilized; radii too coarse");
  if (best == change_bounded) return GrowthClass::bounded;
  if (best == change_log) return GrowthClass::logarithmic;
  return GrowthClass::power;
}

SupCheck weighted_sup_check(double a, double t) {
  if (!(t > -1.0 && a > 1.0 + 0.5 * t))
    throw std::domain_error("weighted_sup_check: requires t > -1 and a > 1 + t/2");

  SupCheck out;
  out.closed_form = gamma_ratio({1.0 + t, 2.0 * a - t - 2.0}, {a, a});

  // radial grid approaching |z|^2 = 1 - 1e-8 geometrically
  out.monotone = true;
  double prev = -std::numeric_limits<double>::infinity();
  double sup = -std::numeric_limits<double>::infinity();
  for (double j = 0.25; j <= 8.0 + 1e-9; j += 0.25) {
    const double u = std::pow(10.0, -j);
    const double x = 1.0 - u;
    const double bracket =
        std::pow(u, 2.0 * a - t - 2.0) * f21(a, a, 2.0 + t, x, u, 1e-13) / (1.0 + t);
    if (bracket < prev - 1e-12 * std::abs(prev)) out.monotone = false;
    prev = bracket;
    sup = std::max(sup, bracket);
  }
  out.numeric_sup = sup;
  out.abs_diff = std::abs(out.numeric_sup - out.closed_form);
  return out;
}

ClosedFormCheck nested_kernel_check(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && 1.0 + a + b - 2.0 * c > 0.0))
    throw std::domain_error(
        "nested_kernel_check: requires a > 0, b > 0, 1+a+b-2c > 0");

  ClosedFormCheck out;
  out.closed_form = gamma_ratio({a, b, 1.0 + a + b - 2.0 * c},
                                {1.0 + a + b - c, 1.0 + a + b - c});
  // inner integral in closed form, outer integral radial:
  // (1/b) int_0^1 s^b (1-s)^{a-1} 2F1(c, c; 1+b; s) ds
  out.quadrature_value = tanh_sinh(
      [&](double s, double u) {
        return std::pow(s, b) * std::pow(u, a - 1.0) *
               f21(c, c, 1.0 + b, s, u, 1e-13) / b;
      },
      1e-12);
  out.abs_diff = std::abs(out.closed_form - out.quadrature_value);
  return out;
}

} // namespace bergproj::identities
