// Compiled with -mavx2 only; never executed unless the CPU reports AVX2.
#include "solitons/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace solitons::kernels::detail {
namespace {

void stencil_avx2(const double* padded, std::size_t n, const double* coeffs, std::size_t width,
                  double scale, double* out) {
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < width; ++j) {
      const __m256d c = _mm256_set1_pd(coeffs[j]);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(c, _mm256_loadu_pd(padded + i + j)));
    }
    _mm256_storeu_pd(out + i, _mm256_mul_pd(acc, vscale));
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < width; ++j) acc = acc + coeffs[j] * padded[i + j];
    out[i] = acc * scale;
  }
}

void difference_stencil_avx2(const double* padded, std::size_t n, const double* coeffs, std::size_t width,
                             double scale, double* out) {
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d centre = _mm256_loadu_pd(padded + i + width / 2);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < width; ++j) {
      const __m256d c = _mm256_set1_pd(coeffs[j]);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(c, _mm256_sub_pd(_mm256_loadu_pd(padded + i + j), centre)));
    }
    _mm256_storeu_pd(out + i, _mm256_mul_pd(acc, vscale));
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    const double c = padded[i + width / 2];
    for (std::size_t j = 0; j < width; ++j) acc = acc + coeffs[j] * (padded[i + j] - c);
    out[i] = acc * scale;
  }
}

void accumulate_weighted_product_avx2(double* out, double weight, const double* a,
                                      const double* b, std::size_t n) {
  const __m256d w = _mm256_set1_pd(weight);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), _mm256_mul_pd(w, prod)));
  }
  for (; i < n; ++i) out[i] = out[i] + weight * (a[i] * b[i]);
}

void lane_sums_avx2(const double* f, std::size_t n, double* sums) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(f + i));
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  for (; i < n; ++i) s[i % 4] = s[i % 4] + f[i];
  for (int j = 0; j < 4; ++j) sums[j] = s[j];
}

double max_abs_avx2(const double* f, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  __m256d nan_seen = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_andnot_pd(sign, _mm256_loadu_pd(f + i));
    nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
    m = _mm256_max_pd(m, v);
  }
  if (_mm256_movemask_pd(nan_seen) != 0) return std::nan("");
  alignas(32) double s[4];
  _mm256_store_pd(s, m);
  double r = s[0];
  for (int j = 1; j < 4; ++j) r = s[j] > r ? s[j] : r;
  for (; i < n; ++i) {
    const double a = std::fabs(f[i]);
    if (std::isnan(a)) return a;
    if (a > r) r = a;
  }
  return r;
}

}  // namespace

const KernelTable avx2_table{
    stencil_avx2,
    difference_stencil_avx2,
    accumulate_weighted_product_avx2,
    lane_sums_avx2,
    max_abs_avx2,
};

}  // namespace solitons::kernels::detail

#endif
