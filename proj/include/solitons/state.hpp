#pragma once

// Reflectionless N-bound-state potentials built from the Cauchy-type matrix
// A_kl = delta_kl + lambda_k lambda_l / (gamma_k + gamma_l), together with
// their bound states, superpotential, zero-energy and scattering solutions.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "solitons/grid.hpp"
#include "solitons/spectrum.hpp"

namespace solitons {

struct SquareMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit SquareMatrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// A full snapshot at one time. Products lambda_k * psi_k are stored
// directly: lambda_k overflows far to the left while psi_k underflows, but
// their product stays O(1).
struct SolitonState {
  Spectrum spectrum;
  double time = 0.0;
  std::vector<double> alphas;
  Grid grid;

  std::vector<GridFunction> log_lambdas;   // theta_k = ln C_k - gamma_k x + alpha_k t
  std::vector<GridFunction> psis;          // normalised bound states
  std::vector<GridFunction> dpsis;         // d psi_k / dx from the differentiated system
  std::vector<GridFunction> lambda_psis;   // lambda_k psi_k
  std::vector<GridFunction> lambda_dpsis;  // lambda_k d psi_k / dx
  GridFunction W;                          // -sum lambda_l psi_l = d/dx ln det A
  GridFunction U;                          // -4 sum gamma_k psi_k^2
  GridFunction xi;                         // zero-energy solution
  GridFunction log_det_A;

  explicit SolitonState(const Grid& g) : grid(g), W(g), U(g), xi(g), log_det_A(g) {}

  std::size_t size() const { return spectrum.size(); }

  // Throws range error where lambda_k is not representable.
  GridFunction lambda(std::size_t k) const;
  SquareMatrix matrix_A(std::size_t i) const;
  // S^-1 A S^-1 with S = diag(max(lambda_k, 1)); entries stay bounded.
  SquareMatrix balanced_matrix_A(std::size_t i) const;
  // ln S_kk = max(theta_k, 0)
  std::vector<double> log_balance(std::size_t i) const;
};

// Grid half width 12/gamma_min + v_max |t| with spacing min(0.01, 0.05/gamma_max).
Grid default_grid(const Spectrum& spectrum, std::span<const double> alphas, double max_abs_time);

// lambda_k(x, t) = C_k exp(-gamma_k x + alpha_k t)
SolitonState build_state(const Spectrum& spectrum, std::span<const double> alphas, double t,
                         const Grid& grid);

enum class WaveSign { plus, minus };

// e^{+-ikx} (1 - sum_l lambda_l psi_l / (gamma_l -+ ik)), energy k^2.
ComplexGridFunction scattering_state(const SolitonState& state, double k, WaveSign sign);

// 1 - sum_l lambda_l psi_l / gamma_l
GridFunction zero_energy_xi(const SolitonState& state);

// B_lk(x) = integral_{-inf}^x psi_l psi_k dy, the pointwise inverse of A.
struct OverlapInverse {
  Grid grid;
  std::size_t n = 0;
  std::vector<double> values;  // [(i * n + l) * n + k]

  // max over grid of ||S^-1 (A B - I) S||_inf; equals ||A B - I|| wherever lambda <= 1.
  // Points where some psi_k^2 has underflowed are skipped.
  double inverse_residual = 0.0;
  // max over grid of ||A B - I||_inf at points where A is representable.
  double inverse_residual_unbalanced = 0.0;
  // max over grid and l != k of |B_lk - Wronskian_lk / (gamma_k^2 - gamma_l^2)|
  double wronskian_residual = 0.0;

  double operator()(std::size_t i, std::size_t l, std::size_t k) const { return values[(i * n + l) * n + k]; }
};

OverlapInverse overlap_inverse_B(const SolitonState& state);

}  // namespace solitons
