#include "bergproj/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bergproj/gauss.hpp"
#include "bergproj/rng.hpp"
#include "bergproj/specfun.hpp"

namespace bergproj::bounds {

using specfun::hyp2f1;
using specfun::hyp2f1_near_one;
using specfun::ln_gamma;
using std::complex;

namespace {

// 2F1 from whichever side of the near-one switch keeps full accuracy
double f21(double a, double b, double c, double x, double u, double tol) {
  if (x < 0.995) return hyp2f1({a, b, c, x}, tol).value;
  return hyp2f1_near_one(a, b, c, u, tol).value;
}

// rule for boundary-concentrated sweeps: panels graded down to the scale of
// 1 - |xi|^2
QuadRulePtr sweep_rule(double abs_xi, double alpha) {
  const double gap = std::max(1e-9, (1.0 - abs_xi) * (1.0 + abs_xi));
  int refine = std::max(4, static_cast<int>(std::ceil(-std::log2(gap))) + 3);
  refine = std::min(refine, 40);
  return build_rule(64, 512, alpha, refine);
}

// binomial-series factors (gamma)_k / k!, accumulated by recurrence
std::vector<double> binomial_factors(double gamma, int K) {
  std::vector<double> out(K);
  double v = 1.0;
  for (int k = 0; k < K; ++k) {
    out[k] = v;
    v *= (gamma + k) / (k + 1.0);
  }
  return out;
}

// g_k(x) for k < K, evaluated in parallel
std::vector<double> degree_factors(const SpaceParams& sp, double x, int K) {
  std::vector<double> out(K);
  const double a = sp.beta - 2.0 * sp.beta / sp.q;
  bool failed = false;
#pragma omp parallel for schedule(dynamic, 16)
  for (int k = 0; k < K; ++k) {
    try {
      out[k] = hyp2f1({a, sp.beta + k, 2.0 * sp.beta + k, x}, 1e-13).value;
    } catch (...) {
#pragma omp atomic write
      failed = true;
      out[k] = 0.0;
    }
  }
  if (failed)
    throw specfun::budget_error(
        "degree_factors: coefficient evaluation exceeded its budget", 0.0);
  return out;
}

} // namespace

double conjectured_norm(const SpaceParams& sp) {
  const double two_beta = 2.0 + sp.alpha;
  return specfun::gamma_ratio({two_beta / sp.p, two_beta / sp.q},
                              {sp.beta, sp.beta});
}

double upper_bound_norm(const SpaceParams& sp) {
  const double w = 1.0 + sp.alpha;
  return w * specfun::gamma_ratio({w / sp.p, w / sp.q}, {sp.beta, sp.beta});
}

double dostanic_value(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("dostanic_value: p must lie in (1, inf)");
  return 1.0 / std::sin(std::numbers::pi / p);
}

double coefficient_moment(int k, double alpha) {
  if (k < 0) throw std::domain_error("coefficient_moment: k must be nonnegative");
  return std::exp(ln_gamma(k + 1.0) + ln_gamma(2.0 + alpha) -
                  ln_gamma(k + 2.0 + alpha));
}

SchurCheck schur_constant_numeric(const SpaceParams& sp) {
  const double alpha = sp.alpha;
  const double t = alpha - (1.0 + alpha) / sp.p;
  const double e = (1.0 + alpha) / sp.p; // decay exponent of the bracket gap
  SchurCheck out;
  out.closed_form = upper_bound_norm(sp);

  // the bracket approaches its sup like (1-x)^e; the grid runs u = 1-x down
  // to where that gap falls beyond the comparison tolerance
  double j_max = std::max(8.0, std::ceil(7.0 / e));
  j_max = std::min(j_max, 240.0);
  double sup = -std::numeric_limits<double>::infinity();
  for (double j = 0.5; j <= j_max + 1e-9; j += 0.25) {
    const double u = std::pow(10.0, -j);
    const double F = (u > 0.01)
                         ? hyp2f1({sp.beta, sp.beta, 2.0 + t, 1.0 - u}, 1e-13).value
                         : hyp2f1_near_one(sp.beta, sp.beta, 2.0 + t, u, 1e-13).value;
    const double bracket = (1.0 + alpha) * std::pow(u, e) * F / (1.0 + t);
    sup = std::max(sup, bracket);
  }
  out.numeric_sup = sup;
  out.abs_diff = std::abs(out.numeric_sup - out.closed_form);
  return out;
}

double bilinear_form_value(double eps, const SpaceParams& sp) {
  if (!(eps > 0.0)) throw std::domain_error("bilinear_form_value: eps must be positive");
  const double w = 1.0 + sp.alpha;
  const double a2 = 2.0 + sp.alpha;
  double log_val = 2.0 * std::log(w);
  log_val += ln_gamma(w / sp.p + eps * w / sp.q);
  log_val += ln_gamma(w / sp.q + eps * w / sp.p);
  log_val += ln_gamma(eps * w);
  log_val -= 2.0 * ln_gamma(sp.beta + eps * w);
  log_val += std::log(eps) / sp.p;
  log_val += (ln_gamma(a2 + eps * w * sp.q) - std::log(w) - ln_gamma(eps * w) -
              ln_gamma(a2 + eps * w * sp.q / sp.p)) /
             sp.q;
  return std::exp(log_val);
}

BilinearQuad bilinear_form_quadrature(double eps, const SpaceParams& sp,
                                      const Resolution& res) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::domain_error("bilinear_form_quadrature: eps must lie in (0, 1]");
  const double alpha = sp.alpha;
  const double w1 = 1.0 + alpha;
  // the combined radial exponent eps(1+alpha)-1 concentrates all mass at the
  // boundary as eps -> 0; below this floor double precision cannot hold it
  if (eps * w1 - 1.0 < -0.95)
    throw resolution_error(
        "bilinear_form_quadrature: near-boundary mass under-resolved at this "
        "eps");
  const double eg = (eps - 1.0) * w1 / sp.p; // weight exponent of g
  const double eh = (eps - 1.0) * w1 / sp.q; // weight exponent of h
  const double zpow = 2.0 + 2.0 * alpha + 2.0 * eg; // |z| power of h
  const double c_h = std::exp((ln_gamma(2.0 + alpha + eps * w1 * sp.q) -
                               std::log(w1) - ln_gamma(eps * w1) -
                               ln_gamma(2.0 + alpha + eps * w1 * sp.q / sp.p)) /
                              sp.q);

  // the p-th and q-th powers of the norms both carry the radial exponent
  // eps(1+alpha) - 1, absorbed into one shared rule
  const double alpha_rule = eps * w1 - 1.0;
  auto rule = build_rule(res.n_r, 16, alpha_rule, res.refinement);
  const double measure_scale = w1 / (1.0 + alpha_rule); // = 1/eps

  BilinearQuad out;
  // |g|_p^p = eps * scale * integral of 1 under the absorbed weight
  out.g_norm = std::pow(
      eps * measure_scale * integrate_radial(*rule, [](double) { return 1.0; }),
      1.0 / sp.p);
  // |h|_q^q = c_h^q * scale * integral of s^{q zpow / 2}
  const double q_half_pow = sp.q * zpow / 2.0;
  out.h_norm = std::pow(std::pow(c_h, sp.q) * measure_scale *
                            integrate_radial(*rule, [&](double s) {
                              return std::pow(s, q_half_pow);
                            }),
                        1.0 / sp.q);
  if (std::abs(out.g_norm - 1.0) > 1e-3 || std::abs(out.h_norm - 1.0) > 1e-3)
    throw resolution_error(
        "bilinear_form_quadrature: near-boundary mass under-resolved");

  // <P# g, h> = (1+alpha)^2 eps^{1/p} c_h *
  //   int int (1-sig)^{eg+alpha} (1-s)^{eh+alpha} s^{zpow/2}
  //           2F1(beta, beta; 1; s sig) dsig ds,
  // the angular integrals of the modulus kernel having been carried out
  // exactly (g, h and hence P# g are radial).  The kernel factor couples
  // the two boundary singularities at the corner s = sig = 1, so each
  // direction is integrated by the exponentially graded tanh-sinh rule;
  // 1 - s*sig = (1-s) + s(1-sig) keeps the kernel argument exact there.
  //
  // The kernel grows like (1-s sig)^{-(1+alpha)}, so abscissae beyond
  // u_floor would overflow before their (negligible) mass enters the sum.
  const double u_floor = std::pow(10.0, -std::min(120.0, 280.0 / w1));
  auto inner_at = [&](double s, double us) {
    return tanh_sinh(
        [&](double /*sig*/, double usig) {
          if (usig < u_floor) return 0.0;
          const double ux = us + s * usig;
          return std::pow(usig, eg + alpha) *
                 f21(sp.beta, sp.beta, 1.0, 1.0 - ux, ux, 1e-12);
        },
        1e-11);
  };
  const double pairing = tanh_sinh(
      [&](double s, double us) {
        if (us < u_floor) return 0.0;
        return std::pow(us, eh + alpha) * std::pow(s, zpow / 2.0) *
               inner_at(s, us);
      },
      1e-10);
  out.value = w1 * w1 * std::pow(eps, 1.0 / sp.p) * c_h * pairing;
  return out;
}

double degree_factor(int k, double x, const SpaceParams& sp) {
  return f21(sp.beta - 2.0 * sp.beta / sp.q, sp.beta + k, 2.0 * sp.beta + k, x,
             1.0 - x, 1e-13);
}

double degree_factor_limit(int k, const SpaceParams& sp) {
  const double b2q = 2.0 * sp.beta / sp.q;
  return std::exp(ln_gamma(b2q) + ln_gamma(2.0 * sp.beta + k) - ln_gamma(sp.beta) -
                  ln_gamma(sp.beta + b2q + k));
}

TailCase tail_case(const SpaceParams& sp) {
  const double gap = sp.beta - 0.5 * sp.q;
  if (std::abs(gap) < 1e-9)
    throw cutoff_error(
        "tail bounds: beta = q/2 (alpha = (2-p)/(p-1)); perturb p to cross "
        "the cut-off");
  return gap < 0.0 ? TailCase::fractional : TailCase::taylor;
}

int taylor_order(const SpaceParams& sp) {
  return static_cast<int>(
      std::ceil(2.0 * sp.beta / sp.q - sp.beta - 1e-12));
}

DecompositionCoeffs decomposition_coeffs(complex<double> xi,
                                         const SpaceParams& sp, int K) {
  if (!(std::abs(xi) < 1.0))
    throw std::domain_error("decomposition_coeffs: xi must lie in the disk");
  if (K < 1) throw std::domain_error("decomposition_coeffs: K must be positive");

  DecompositionCoeffs out;
  out.tail = tail_case(sp);
  const double beta = sp.beta;
  const double b2p = 2.0 * beta / sp.p;
  const double b2q = 2.0 * beta / sp.q;
  const double x = std::norm(xi);

  const std::vector<double> g_x = degree_factors(sp, x, K);
  const std::vector<double> binom_b2p = binomial_factors(b2p, K);
  const std::vector<double> binom_beta = binomial_factors(beta, K);

  out.epsilon_k.resize(K);
  out.a_k.resize(K);
  out.g_limit.resize(K);
  for (int k = 0; k < K; ++k) {
    const double ratio =
        std::exp(ln_gamma(k + 2.0 * beta) + ln_gamma(k + beta) -
                 ln_gamma(k + beta + b2q) - ln_gamma(k + b2p));
    out.epsilon_k[k] = binom_b2p[k] * (ratio - 1.0);
    out.g_limit[k] = degree_factor_limit(k, sp);
    out.a_k[k] = binom_beta[k] * (g_x[k] - out.g_limit[k]);
  }

  if (out.tail == TailCase::fractional) {
    out.c1.resize(K);
    for (int k = 0; k < K; ++k) out.c1[k] = fractional_tail_constant(k, sp);
    out.m = 0;
  } else {
    out.m = taylor_order(sp);
  }
  return out;
}

DecompositionNorms decomposition_norm_check(complex<double> xi,
                                            const SpaceParams& sp, int K) {
  const double r = std::abs(xi);
  if (K <= 0) K = default_truncation(r, 1e-9);
  const double x = r * r;
  const double beta = sp.beta;
  const double b2p = 2.0 * beta / sp.p;
  const double big_g = conjectured_norm(sp);

  const std::vector<double> g_x = degree_factors(sp, x, K);
  const std::vector<double> binom_b2p = binomial_factors(b2p, K);
  const std::vector<double> binom_beta = binomial_factors(beta, K);

  std::vector<complex<double>> phi(K), psi(K), ups(K), resid(K);
  const complex<double> xi_bar = std::conj(xi);
  complex<double> xpow{1.0, 0.0};
  for (int k = 0; k < K; ++k) {
    const double g_lim = degree_factor_limit(k, sp);
    const double ratio =
        std::exp(ln_gamma(k + 2.0 * beta) + ln_gamma(k + beta) -
                 ln_gamma(k + beta + 2.0 * beta / sp.q) - ln_gamma(k + b2p));
    const double eps_k = binom_b2p[k] * (ratio - 1.0);
    const double proj_k = binom_beta[k] * g_x[k];
    phi[k] = big_g * binom_b2p[k] * xpow;
    psi[k] = big_g * eps_k * xpow;
    ups[k] = binom_beta[k] * (g_x[k] - g_lim) * xpow;
    resid[k] = proj_k * xpow - phi[k] - psi[k] - ups[k];
    xpow *= xi_bar;
  }

  auto rule = sweep_rule(r, sp.alpha);
  DecompositionNorms out;
  out.phi_norm = series_lp_norm(phi, *rule, sp.p);
  out.psi_norm = series_lp_norm(psi, *rule, sp.p);
  out.upsilon_norm = series_lp_norm(ups, *rule, sp.p);
  out.residual = series_lp_norm(resid, *rule, sp.p);
  out.f_norm =
      std::pow(f21(beta, beta, 2.0 + sp.alpha, x, 1.0 - x, 1e-13), 1.0 / sp.p);
  return out;
}

double rayleigh_quotient_f_xi(complex<double> xi, const SpaceParams& sp, int K) {
  const double r = std::abs(xi);
  if (K <= 0) K = default_truncation(r, 1e-9);
  const TestFunctionXi t(xi, sp);
  const SeriesCoeffs s = project_f_xi_series(t, K);
  auto rule = sweep_rule(r, sp.alpha);
  const double numerator = series_lp_norm(s, *rule, sp.p);
  const double x = r * r;
  const double denominator =
      std::pow(f21(sp.beta, sp.beta, 2.0 + sp.alpha, x, 1.0 - x, 1e-13),
               1.0 / sp.p);
  return numerator / denominator;
}

double fractional_tail_constant(int k, const SpaceParams& sp) {
  const double b2q = 2.0 * sp.beta / sp.q;
  return (1.0 - 0.5 * sp.q) *
         std::exp(ln_gamma(1.0 - b2q) - ln_gamma(1.0 - b2q + sp.beta) +
                  ln_gamma(2.0 * sp.beta + k) - ln_gamma(sp.beta + k));
}

double fractional_tail_bound_check(int k, const SpaceParams& sp,
                                   std::span<const double> x_grid) {
  if (tail_case(sp) != TailCase::fractional)
    throw std::domain_error(
        "fractional_tail_bound_check: requires 1/2 < beta < q/2");
  const double g_lim = degree_factor_limit(k, sp);
  const double c1 = fractional_tail_constant(k, sp);
  const double b2q = 2.0 * sp.beta / sp.q;
  double max_violation = -std::numeric_limits<double>::infinity();
  for (double x : x_grid) {
    if (!(x >= 0.0 && x < 1.0))
      throw std::domain_error("fractional_tail_bound_check: grid must lie in [0,1)");
    const double lhs = std::abs(degree_factor(k, x, sp) - g_lim);
    const double rhs = c1 * std::pow(1.0 - x, b2q);
    max_violation = std::max(max_violation, lhs - rhs);
  }
  return max_violation;
}

double taylor_derivative_limit(int k, int j, const SpaceParams& sp) {
  const double beta = sp.beta;
  const double b2q = 2.0 * beta / sp.q;
  if (!(b2q - j > 0.0))
    throw std::domain_error("taylor_derivative_limit: requires j < 2 beta / q");
  return std::abs(specfun::pochhammer(beta - b2q, j)) *
         std::exp(ln_gamma(b2q - j) - ln_gamma(beta) + ln_gamma(beta + j + k) +
                  ln_gamma(2.0 * beta + k) - ln_gamma(beta + k) -
                  ln_gamma(beta + b2q + k));
}

double taylor_tail_bound_check(int k, const SpaceParams& sp,
                               std::span<const double> x_grid) {
  if (tail_case(sp) != TailCase::taylor)
    throw std::domain_error("taylor_tail_bound_check: requires beta > q/2");
  const int m = taylor_order(sp);
  const double g_lim = degree_factor_limit(k, sp);
  std::vector<double> dlim(m + 1, 0.0);
  for (int j = 1; j <= m; ++j)
    dlim[j] = taylor_derivative_limit(k, j, sp) /
              std::exp(ln_gamma(j + 1.0));

  double max_ratio = 0.0;
  for (double x : x_grid) {
    if (!(x >= 0.0 && x < 1.0))
      throw std::domain_error("taylor_tail_bound_check: grid must lie in [0,1)");
    const double lhs = std::abs(degree_factor(k, x, sp) - g_lim);
    double rhs = 0.0;
    for (int j = 1; j <= m; ++j) rhs += dlim[j] * std::pow(1.0 - x, j);
    if (rhs > 0.0) max_ratio = std::max(max_ratio, lhs / rhs);
  }
  return max_ratio;
}

HYCheck hausdorff_young_check(std::span<const complex<double>> coeffs,
                              const SpaceParams& sp, const Resolution& res) {
  if (!(sp.p >= 2.0))
    throw std::domain_error("hausdorff_young_check: requires p >= 2");
  HYCheck out;
  auto rule = build_rule(res, sp.alpha);
  out.lhs = std::pow(series_lp_norm(coeffs, *rule, sp.p), sp.q);
  double rhs = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    rhs += std::pow(coefficient_moment(static_cast<int>(k), sp.alpha),
                    sp.q - 1.0) *
           std::pow(std::abs(coeffs[k]), sp.q);
  out.rhs = rhs;
  out.margin = out.rhs - out.lhs;
  return out;
}

bool norm_monotonicity_check(std::span<const double> p_list, double alpha) {
  if (p_list.empty())
    throw std::domain_error("norm_monotonicity_check: empty p list");
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    if (!(p_list[i] >= 2.0))
      throw std::domain_error("norm_monotonicity_check: p values must be >= 2");
    if (i > 0 && p_list[i] < p_list[i - 1])
      throw std::domain_error("norm_monotonicity_check: p list must ascend");
  }
  double prev_formula = 0.0;
  double prev_rayleigh = 0.0;
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    const SpaceParams sp(p_list[i], alpha);
    const double formula = conjectured_norm(sp);
    const double quotient = rayleigh_quotient_f_xi({0.99, 0.0}, sp);
    if (i > 0) {
      if (formula < prev_formula - 1e-12) return false;
      if (quotient < prev_rayleigh - 1e-3) return false;
    }
    prev_formula = formula;
    prev_rayleigh = quotient;
  }
  return true;
}

HVResult hv_inequality_check(double p, double a, double b, long n_samples,
                             std::uint64_t seed) {
  if (!(p > 1.0 && p <= 2.0))
    throw std::domain_error("hv_inequality_check: p must lie in (1, 2]");
  if (!(a > 0.0)) throw std::domain_error("hv_inequality_check: a must be positive");
  if (n_samples < 1)
    throw std::domain_error("hv_inequality_check: need at least one sample");

  long violations = 0;
  double max_feasible = std::numeric_limits<double>::infinity();
#pragma omp parallel
  {
    long local_viol = 0;
    double local_feasible = std::numeric_limits<double>::infinity();
#pragma omp for schedule(static)
    for (long i = 0; i < n_samples; ++i) {
      // counter-based stream: sample i is independent of thread scheduling
      SplitMix64 rng(seed ^ (0xA24BAED4963EE407ull * static_cast<std::uint64_t>(i + 1)));
      const double mw = std::pow(10.0, rng.uniform(-3.0, 3.0));
      const double mz = std::pow(10.0, rng.uniform(-3.0, 3.0));
      const double phw = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double phz = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const complex<double> w = std::polar(mw, phw);
      const complex<double> z = std::polar(mz, phz);

      const double lhs = std::pow(std::max(mw, mz), p);
      const double cross = std::pow(std::abs(w + std::conj(z)), p);
      const double re_term = std::real(std::pow(w * z, 0.5 * p));
      const double rhs = a * cross - b * re_term;
      const double scale = lhs + std::abs(a * cross) + std::abs(b * re_term);
      if (lhs > rhs + 1e-12 * scale) ++local_viol;
      if (re_term > 1e-300 * scale)
        local_feasible = std::min(local_feasible, (a * cross - lhs) / re_term);
    }
#pragma omp critical
    {
      violations += local_viol;
      max_feasible = std::min(max_feasible, local_feasible);
    }
  }
  return {violations, max_feasible};
}

NormReport make_norm_report(const SpaceParams& sp,
                            std::span<const double> xi_schedule,
                            std::span<const double> eps_schedule) {
  NormReport report{sp, conjectured_norm(sp), upper_bound_norm(sp),
                    dostanic_value(sp.p), {}, {}, ""};
  for (double r : xi_schedule)
    report.rayleigh_estimates.emplace_back(
        r, rayleigh_quotient_f_xi({r, 0.0}, sp));
  for (double eps : eps_schedule)
    report.bilinear_estimates.emplace_back(eps, bilinear_form_value(eps, sp));
  report.diagnostics = "rayleigh tail target 1e-9; sweep rule n_r=64 n_theta=512";
  return report;
}

} // namespace bergproj::bounds
