// Timing comparison between the OpenMP kernels and the serial reference
// implementations: disk integration, kernel application, series norms.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bergproj/projection.hpp"
#include "bergproj/quadrature.hpp"
#include "bergproj/reference.hpp"
#include "bergproj/rng.hpp"

using namespace bergproj;
using std::complex;

namespace {

template <typename F>
double time_of(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, double rel_diff) {
  std::printf("%-22s serial %8.4fs   parallel %8.4fs   speedup %5.2fx   |diff| %.2e\n",
              name, serial, parallel, serial / parallel, rel_diff);
}

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serially\n");
#endif

  auto rule = build_rule(128, 512, 0.5, 4);
  auto field = sample(rule, [](complex<double> z) {
    return std::exp(z) + std::conj(z) * 0.3;
  });

  {
    complex<double> a, b;
    const double ts = time_of([&] { a = ref::integrate(field); });
    const double tp = time_of([&] { b = integrate(field); });
    report("integrate", ts, tp, std::abs(a - b) / std::abs(a));
  }
  {
    double a = 0.0, b = 0.0;
    const double ts = time_of([&] { a = ref::lp_norm(field, 3.0); });
    const double tp = time_of([&] { b = lp_norm(field, 3.0); });
    report("lp_norm p=3", ts, tp, std::abs(a - b) / a);
  }
  {
    std::vector<complex<double>> pts;
    for (int i = 0; i < 64; ++i)
      pts.push_back({0.8 * std::cos(0.1 * i), 0.8 * std::sin(0.1 * i)});
    std::vector<complex<double>> a, b;
    const double ts =
        time_of([&] { a = ref::apply_kernel(field, 0.5, pts, false); }, 1);
    const double tp =
        time_of([&] { b = apply_bergman_projection(field, 0.5, pts); }, 1);
    double diff = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      diff = std::max(diff, std::abs(a[i] - b[i]) / std::abs(a[i]));
    report("apply projection", ts, tp, diff);
  }
  {
    // coefficient count kept below half the angular count so the plain
    // trapezoid reference resolves the |.|^4 spectrum too
    SplitMix64 rng(42);
    std::vector<complex<double>> coeffs(200);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      coeffs[k] = complex<double>{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)} *
                  std::pow(0.99, static_cast<double>(k));
    double a = 0.0, b = 0.0;
    const double ts = time_of([&] { a = ref::series_lp_norm(coeffs, *rule, 4.0); }, 1);
    const double tp = time_of([&] { b = series_lp_norm(coeffs, *rule, 4.0); }, 1);
    report("series_lp_norm p=4", ts, tp, std::abs(a - b) / a);
  }
  return 0;
}
