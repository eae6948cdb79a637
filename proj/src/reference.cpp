#include "bergproj/reference.hpp"

#include <cmath>

namespace bergproj::ref {

std::complex<double> integrate(const SampledField& f) {
  const QuadRule& rule = *f.rule;
  std::complex<double> total{0.0, 0.0};
  for (int i = 0; i < rule.radial_count(); ++i) {
    std::complex<double> row{0.0, 0.0};
    for (int m = 0; m < rule.angular_count; ++m)
      row += f.values[static_cast<std::size_t>(i) * rule.angular_count + m];
    total += rule.radial_w[i] * row;
  }
  return total / static_cast<double>(rule.angular_count);
}

double lp_norm(const SampledField& f, double p) {
  const QuadRule& rule = *f.rule;
  double total = 0.0;
  for (int i = 0; i < rule.radial_count(); ++i) {
    double row = 0.0;
    for (int m = 0; m < rule.angular_count; ++m)
      row += std::pow(
          std::abs(f.values[static_cast<std::size_t>(i) * rule.angular_count + m]), p);
    total += rule.radial_w[i] * row;
  }
  return std::pow(total / rule.angular_count, 1.0 / p);
}

std::vector<std::complex<double>> apply_kernel(
    const SampledField& f, double alpha,
    std::span<const std::complex<double>> points, bool modulus) {
  const QuadRule& rule = *f.rule;
  std::vector<std::complex<double>> out(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const std::complex<double> z = points[k];
    std::complex<double> total{0.0, 0.0};
    for (int i = 0; i < rule.radial_count(); ++i) {
      std::complex<double> row{0.0, 0.0};
      for (int m = 0; m < rule.angular_count; ++m) {
        const std::complex<double> w = rule.node(i, m);
        const std::complex<double> base = 1.0 - z * std::conj(w);
        std::complex<double> kernel;
        if (modulus)
          kernel = std::pow(std::abs(base), -(2.0 + alpha));
        else
          kernel = std::pow(base, -(2.0 + alpha));
        row += f.values[static_cast<std::size_t>(i) * rule.angular_count + m] * kernel;
      }
      total += rule.radial_w[i] * row;
    }
    out[k] = total / static_cast<double>(rule.angular_count);
  }
  return out;
}

double series_lp_norm(std::span<const std::complex<double>> coeffs,
                      const QuadRule& rule, double p) {
  double total = 0.0;
  for (int i = 0; i < rule.radial_count(); ++i) {
    const double r = rule.radial_r[i];
    double row = 0.0;
    for (int m = 0; m < rule.angular_count; ++m) {
      const std::complex<double> z{r * rule.cos_theta[m], r * rule.sin_theta[m]};
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
      row += std::pow(std::abs(acc), p);
    }
    total += rule.radial_w[i] * row;
  }
  return std::pow(total / rule.angular_count, 1.0 / p);
}

} // namespace bergproj::ref
