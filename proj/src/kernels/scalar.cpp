#include "solitons/kernels.hpp"

#include <cmath>

namespace solitons::kernels::detail {
namespace {

void stencil_scalar(const double* padded, std::size_t n, const double* coeffs, std::size_t width,
                    double scale, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < width; ++j) acc = acc + coeffs[j] * padded[i + j];
    out[i] = acc * scale;
  }
}

void difference_stencil_scalar(const double* padded, std::size_t n, const double* coeffs, std::size_t width,
                               double scale, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const double c = padded[i + width / 2];
    for (std::size_t j = 0; j < width; ++j) acc = acc + coeffs[j] * (padded[i + j] - c);
    out[i] = acc * scale;
  }
}

void accumulate_weighted_product_scalar(double* out, double weight, const double* a,
                                        const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + weight * (a[i] * b[i]);
}

void lane_sums_scalar(const double* f, std::size_t n, double* sums) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) s[i % 4] = s[i % 4] + f[i];
  for (int j = 0; j < 4; ++j) sums[j] = s[j];
}

double max_abs_scalar(const double* f, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(f[i]);
    // NaN propagates so callers see non-finite residuals.
    if (a > m || std::isnan(a)) m = a;
    if (std::isnan(m)) return m;
  }
  return m;
}

}  // namespace

const KernelTable scalar_table{
    stencil_scalar,
    difference_stencil_scalar,
    accumulate_weighted_product_scalar,
    lane_sums_scalar,
    max_abs_scalar,
};

}  // namespace solitons::kernels::detail
