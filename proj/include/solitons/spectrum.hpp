#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace solitons {

// Bound-state data: decay rates gamma_k (energies -gamma_k^2) and the
// normalisation constants C_k of the basis functions C_k exp(-gamma_k x).
class Spectrum {
 public:
  Spectrum() = default;

  // Constants chosen so the potential is symmetric at t = 0.
  static Spectrum symmetric(std::vector<double> gammas);
  static Spectrum with_constants(std::vector<double> gammas, std::vector<double> norm_constants);

  std::size_t size() const { return gammas_.size(); }
  bool empty() const { return gammas_.empty(); }
  double gamma(std::size_t k) const { return gammas_[k]; }
  double norm_constant(std::size_t k) const { return norm_constants_[k]; }
  double energy(std::size_t k) const { return -gammas_[k] * gammas_[k]; }
  std::span<const double> gammas() const { return gammas_; }
  std::span<const double> norm_constants() const { return norm_constants_; }

  double gamma_min() const { return gammas_.front(); }
  double gamma_max() const { return gammas_.back(); }

 private:
  Spectrum(std::vector<double> gammas, std::vector<double> norm_constants)
      : gammas_(std::move(gammas)), norm_constants_(std::move(norm_constants)) {}

  std::vector<double> gammas_;
  std::vector<double> norm_constants_;
};

// Throws degenerate_spectrum for repeated rates, invalid_spectrum otherwise.
void validate_gammas(std::span<const double> gammas);

// C_k = sqrt(2 gamma_k prod_{l != k} (gamma_l + gamma_k) / |gamma_l - gamma_k|)
std::vector<double> symmetric_norm_constants(std::span<const double> gammas);

}  // namespace solitons
