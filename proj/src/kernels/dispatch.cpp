#include <atomic>
#include <cassert>
#include <cstdlib>

#include "solitons/kernels.hpp"

namespace solitons::kernels {
namespace {

Backend detect_best() {
#if defined(__x86_64__) || defined(_M_X64)
  if (available(Backend::avx2)) return Backend::avx2;
#endif
#if defined(__aarch64__) || defined(__ARM_NEON)
  return Backend::neon;
#endif
  return Backend::scalar;
}

Backend initial_backend() {
  if (const char* env = std::getenv("SOLITONS_KERNELS")) {
    Backend requested;
    if (parse_backend(env, requested) && available(requested)) return requested;
  }
  return detect_best();
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

const char* name(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

bool parse_backend(std::string_view text, Backend& out) {
  if (text == "scalar") out = Backend::scalar;
  else if (text == "avx2") out = Backend::avx2;
  else if (text == "neon") out = Backend::neon;
  else return false;
  return true;
}

bool available(Backend backend) {
  switch (backend) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#if defined(__aarch64__) || defined(__ARM_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Backend backend) {
  switch (backend) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
      if (available(Backend::avx2)) return detail::avx2_table;
      break;
#endif
#if defined(__aarch64__) || defined(__ARM_NEON)
    case Backend::neon: return detail::neon_table;
#endif
    default: break;
  }
  return detail::scalar_table;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  current().store(available(backend) ? backend : Backend::scalar, std::memory_order_relaxed);
}

void stencil(std::span<const double> padded, std::span<const double> coeffs, double scale,
             std::span<double> out) {
  assert(padded.size() + 1 >= out.size() + coeffs.size());
  table(active_backend()).stencil(padded.data(), out.size(), coeffs.data(), coeffs.size(), scale,
                                  out.data());
}

void difference_stencil(std::span<const double> padded, std::span<const double> coeffs, double scale,
                        std::span<double> out) {
  assert(padded.size() + 1 >= out.size() + coeffs.size());
  table(active_backend()).difference_stencil(padded.data(), out.size(), coeffs.data(), coeffs.size(), scale,
                                             out.data());
}

void accumulate_weighted_product(std::span<double> out, double weight, std::span<const double> a,
                                 std::span<const double> b) {
  assert(a.size() == out.size() && b.size() == out.size());
  table(active_backend()).accumulate_weighted_product(out.data(), weight, a.data(), b.data(),
                                                      out.size());
}

void lane_sums(std::span<const double> f, double sums[4]) {
  table(active_backend()).lane_sums(f.data(), f.size(), sums);
}

double max_abs(std::span<const double> f) {
  return table(active_backend()).max_abs(f.data(), f.size());
}

}  // namespace solitons::kernels
