#pragma once

#include <complex>
#include <vector>

namespace bergproj::detail {

// In-place radix-2 transform; size must be a power of two.
// sign = +1 evaluates sum_k a_k e^{+2 pi i k m / n} (no normalization).
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

} // namespace bergproj::detail
