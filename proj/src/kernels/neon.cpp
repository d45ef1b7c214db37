#include "solitons/kernels.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)

#include <arm_neon.h>

#include <cmath>

namespace solitons::kernels::detail {
namespace {

// Two float64x2 registers stand in for one four-lane accumulator so the
// lane assignment matches the scalar reference.

void stencil_neon(const double* padded, std::size_t n, const double* coeffs, std::size_t width,
                  double scale, double* out) {
  const float64x2_t vscale = vdupq_n_f64(scale);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t j = 0; j < width; ++j) {
      const float64x2_t c = vdupq_n_f64(coeffs[j]);
      acc = vaddq_f64(acc, vmulq_f64(c, vld1q_f64(padded + i + j)));
    }
    vst1q_f64(out + i, vmulq_f64(acc, vscale));
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < width; ++j) acc = acc + coeffs[j] * padded[i + j];
    out[i] = acc * scale;
  }
}

void difference_stencil_neon(const double* padded, std::size_t n, const double* coeffs, std::size_t width,
                             double scale, double* out) {
  const float64x2_t vscale = vdupq_n_f64(scale);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t centre = vld1q_f64(padded + i + width / 2);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t j = 0; j < width; ++j) {
      const float64x2_t c = vdupq_n_f64(coeffs[j]);
      acc = vaddq_f64(acc, vmulq_f64(c, vsubq_f64(vld1q_f64(padded + i + j), centre)));
    }
    vst1q_f64(out + i, vmulq_f64(acc, vscale));
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    const double c = padded[i + width / 2];
    for (std::size_t j = 0; j < width; ++j) acc = acc + coeffs[j] * (padded[i + j] - c);
    out[i] = acc * scale;
  }
}

void accumulate_weighted_product_neon(double* out, double weight, const double* a,
                                      const double* b, std::size_t n) {
  const float64x2_t w = vdupq_n_f64(weight);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t prod = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(out + i), vmulq_f64(w, prod)));
  }
  for (; i < n; ++i) out[i] = out[i] + weight * (a[i] * b[i]);
}

void lane_sums_neon(const double* f, std::size_t n, double* sums) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lo = vaddq_f64(lo, vld1q_f64(f + i));
    hi = vaddq_f64(hi, vld1q_f64(f + i + 2));
  }
  double s[4];
  vst1q_f64(s, lo);
  vst1q_f64(s + 2, hi);
  for (; i < n; ++i) s[i % 4] = s[i % 4] + f[i];
  for (int j = 0; j < 4; ++j) sums[j] = s[j];
}

double max_abs_neon(const double* f, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vabsq_f64(vld1q_f64(f + i));
    if (vgetq_lane_f64(v, 0) != vgetq_lane_f64(v, 0) || vgetq_lane_f64(v, 1) != vgetq_lane_f64(v, 1))
      return std::nan("");
    m = vmaxq_f64(m, v);
  }
  double r = vgetq_lane_f64(m, 0);
  const double r1 = vgetq_lane_f64(m, 1);
  if (r1 > r) r = r1;
  for (; i < n; ++i) {
    const double a = std::fabs(f[i]);
    if (std::isnan(a)) return a;
    if (a > r) r = a;
  }
  return r;
}

}  // namespace

const KernelTable neon_table{
    stencil_neon,
    difference_stencil_neon,
    accumulate_weighted_product_neon,
    lane_sums_neon,
    max_abs_neon,
};

}  // namespace solitons::kernels::detail

#endif
