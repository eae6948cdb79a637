#include "bergproj/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "bergproj/fft.hpp"
#include "bergproj/specfun.hpp"

namespace bergproj {

using std::complex;

SpaceParams::SpaceParams(double p_, double alpha_) : p(p_), alpha(alpha_) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("SpaceParams: p must lie in (1, inf)");
  if (!(alpha > -1.0))
    throw std::domain_error("SpaceParams: alpha must exceed -1");
  q = p / (p - 1.0);
  beta = 0.5 * (2.0 + alpha);
}

TestFunctionXi::TestFunctionXi(complex<double> xi_, const SpaceParams& params_)
    : xi(xi_), params(params_) {
  if (!(std::abs(xi) < 1.0))
    throw std::domain_error("TestFunctionXi: xi must lie in the open disk");
}

namespace {

std::vector<complex<double>> apply_kernel_parallel(
    const SampledField& f, double alpha,
    std::span<const complex<double>> points, bool modulus) {
  const QuadRule& rule = *f.rule;
  if (std::abs(rule.alpha - alpha) > 1e-12)
    throw std::domain_error("apply projection: alpha does not match the rule");
  if (f.values.size() != rule.size())
    throw std::domain_error("apply projection: field does not match its rule");
  for (const complex<double>& z : points)
    if (!(std::abs(z) < 1.0))
      throw std::domain_error("apply projection: points must lie in the disk");

  const int nr = rule.radial_count();
  const int nt = rule.angular_count;
  const double expo = 2.0 + alpha;
  std::vector<complex<double>> out(points.size());
  const long npts = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < npts; ++k) {
    const complex<double> z = points[static_cast<std::size_t>(k)];
    complex<double> total{0.0, 0.0};
    for (int i = 0; i < nr; ++i) {
      complex<double> row{0.0, 0.0};
      const complex<double>* v = f.values.data() + static_cast<std::size_t>(i) * nt;
      for (int m = 0; m < nt; ++m) {
        const complex<double> base =
            1.0 - z * complex<double>{rule.radial_r[i] * rule.cos_theta[m],
                                      -rule.radial_r[i] * rule.sin_theta[m]};
        if (modulus)
          row += v[m] * std::pow(std::abs(base), -expo);
        else
          row += v[m] * std::pow(base, -expo);
      }
      total += rule.radial_w[i] * row;
    }
    out[static_cast<std::size_t>(k)] = total / static_cast<double>(nt);
  }
  return out;
}

} // namespace

std::vector<complex<double>> apply_bergman_projection(
    const SampledField& f, double alpha,
    std::span<const complex<double>> points) {
  return apply_kernel_parallel(f, alpha, points, false);
}

std::vector<complex<double>> apply_maximal_projection(
    const SampledField& f, double alpha,
    std::span<const complex<double>> points) {
  return apply_kernel_parallel(f, alpha, points, true);
}

std::vector<complex<double>> f_xi_values(
    const TestFunctionXi& t, std::span<const complex<double>> points) {
  const double beta = t.params.beta;
  const double outer = beta - 2.0 * beta / t.params.p;
  std::vector<complex<double>> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const complex<double> z = points[i];
    if (!(std::abs(z) < 1.0))
      throw std::domain_error("f_xi_values: points must lie in the disk");
    out[i] = std::pow(1.0 - t.xi * std::conj(z), outer) *
             std::pow(1.0 - z * std::conj(t.xi), -beta);
  }
  return out;
}

int default_truncation(double abs_xi, double tol) {
  if (abs_xi <= 0.0) return 8;
  const int k = static_cast<int>(std::ceil(std::log(tol) / std::log(abs_xi)));
  return std::max(8, k) + 50;
}

SeriesCoeffs project_f_xi_series(const TestFunctionXi& t, int K,
                                 double tail_tol) {
  if (K < 1) throw std::domain_error("project_f_xi_series: K must be positive");
  const double beta = t.params.beta;
  const double a = 2.0 * beta / t.params.p - beta;
  const double x = std::norm(t.xi);

  SeriesCoeffs s;
  s.truncation = K;
  s.coeffs.resize(K);

  std::vector<double> factors(K); // 2F1(a, beta+k; 2 beta+k; x)
  bool failed = false;
#pragma omp parallel for schedule(dynamic, 16)
  for (int k = 0; k < K; ++k) {
    try {
      factors[k] = specfun::hyp2f1({a, beta + k, 2.0 * beta + k, x}, 1e-13).value;
    } catch (...) {
#pragma omp atomic write
      failed = true;
      factors[k] = 0.0;
    }
  }
  if (failed)
    throw specfun::budget_error(
        "project_f_xi_series: coefficient evaluation exceeded its budget", 0.0);

  const complex<double> xi_bar = std::conj(t.xi);
  complex<double> geom{1.0, 0.0}; // (beta)_k / k! * conj(xi)^k
  for (int k = 0; k < K; ++k) {
    s.coeffs[k] = geom * factors[k];
    geom *= xi_bar * ((beta + k) / (k + 1.0));
  }

  const double r = std::abs(t.xi);
  if (r > 0.0) {
    const double rho = std::min(r * (1.0 + beta / K), 0.999999);
    s.tail_bound = std::abs(geom) * std::abs(factors[K - 1]) * rho / (1.0 - rho);
  }
  if (s.tail_bound > tail_tol * std::max(1.0, std::abs(s.coeffs[0])))
    throw specfun::budget_error(
        "project_f_xi_series: K too small for the requested tail tolerance",
        s.tail_bound);
  return s;
}

std::vector<complex<double>> evaluate_series(
    const SeriesCoeffs& s, std::span<const complex<double>> points) {
  std::vector<complex<double>> out(points.size());
  const long npts = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < npts; ++i) {
    const complex<double> z = points[static_cast<std::size_t>(i)];
    complex<double> acc{0.0, 0.0};
    for (std::size_t k = s.coeffs.size(); k-- > 0;) acc = acc * z + s.coeffs[k];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

double series_lp_norm(std::span<const complex<double>> coeffs,
                      const QuadRule& rule, double p) {
  if (!(p >= 1.0)) throw std::domain_error("series_lp_norm: p must be at least 1");
  const int nr = rule.radial_count();
  const long K = static_cast<long>(coeffs.size());

  double coeff_scale = 0.0;
  for (const complex<double>& c : coeffs)
    coeff_scale = std::max(coeff_scale, std::abs(c));
  if (coeff_scale == 0.0 || K == 0) return 0.0;
  const double cut = 1e-17 * coeff_scale;

  std::vector<double> row(nr, 0.0);
#pragma omp parallel
  {
    std::vector<complex<double>> buf;
#pragma omp for schedule(dynamic)
    for (int i = 0; i < nr; ++i) {
      const double r = rule.radial_r[i];
      // surviving coefficient count at this radius
      long keep = 0;
      double rk = 1.0;
      for (long k = 0; k < K; ++k) {
        if (std::abs(coeffs[static_cast<std::size_t>(k)]) * rk > cut) keep = k + 1;
        rk *= r;
      }
      if (keep == 0) {
        row[i] = 0.0;
        continue;
      }
      const std::size_t n_ang = detail::next_pow2(std::max<std::size_t>(
          {64, static_cast<std::size_t>(rule.angular_count),
           2 * static_cast<std::size_t>(keep) + 16}));
      buf.assign(n_ang, complex<double>{0.0, 0.0});
      rk = 1.0;
      for (long k = 0; k < keep; ++k) {
        buf[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k)] * rk;
        rk *= r;
      }
      detail::fft_pow2(buf, +1);
      double sum = 0.0;
      for (const complex<double>& v : buf) sum += std::pow(std::abs(v), p);
      row[i] = rule.radial_w[i] * sum / static_cast<double>(n_ang);
    }
  }
  double total = 0.0;
  for (int i = 0; i < nr; ++i) total += row[i];
  return std::pow(total, 1.0 / p);
}

} // namespace bergproj
