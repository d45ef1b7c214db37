#pragma once

// Data-parallel inner loops used by the grid calculus and the hierarchy
// sums. Every routine has a scalar reference implementation and optional
// AVX2 / NEON variants. The variants reproduce the scalar summation order
// exactly, so results are bitwise identical whichever backend runs.

#include <cstddef>
#include <span>
#include <string_view>

namespace solitons::kernels {

enum class Backend { scalar, avx2, neon };

struct KernelTable {
  // out[i] = scale * sum_{j<width} coeffs[j] * padded[i + j], j ascending.
  void (*stencil)(const double* padded, std::size_t n, const double* coeffs,
                  std::size_t width, double scale, double* out);
  // out[i] = scale * sum_{j<width} coeffs[j] * (padded[i + j] - padded[i + width/2]).
  // Derivative form: a constant input gives exactly 0.
  void (*difference_stencil)(const double* padded, std::size_t n, const double* coeffs,
                             std::size_t width, double scale, double* out);
  // out[i] += weight * (a[i] * b[i])
  void (*accumulate_weighted_product)(double* out, double weight, const double* a,
                                      const double* b, std::size_t n);
  // sums[j] = sum of f[i] over i % 4 == j, i ascending.
  void (*lane_sums)(const double* f, std::size_t n, double* sums);
  double (*max_abs)(const double* f, std::size_t n);
};

const char* name(Backend backend);
bool parse_backend(std::string_view text, Backend& out);

bool available(Backend backend);
const KernelTable& table(Backend backend);

// Best available backend unless overridden by SOLITONS_KERNELS or set_backend.
Backend active_backend();
void set_backend(Backend backend);

void stencil(std::span<const double> padded, std::span<const double> coeffs, double scale,
             std::span<double> out);
void difference_stencil(std::span<const double> padded, std::span<const double> coeffs, double scale,
                        std::span<double> out);
void accumulate_weighted_product(std::span<double> out, double weight, std::span<const double> a,
                                 std::span<const double> b);
void lane_sums(std::span<const double> f, double sums[4]);
double max_abs(std::span<const double> f);

namespace detail {
extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_table;
#endif
#if defined(__aarch64__) || defined(__ARM_NEON)
extern const KernelTable neon_table;
#endif
}  // namespace detail

}  // namespace solitons::kernels
