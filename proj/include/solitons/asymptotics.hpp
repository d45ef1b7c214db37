#pragma once

// Exact one- and two-soliton references, phase shifts and the large-|t|
// decomposition of a state into separated single solitons.

#include <cstddef>
#include <span>
#include <vector>

#include "solitons/state.hpp"

namespace solitons {

struct SolitonTrack {
  std::size_t k = 0;
  double speed = 0.0;  // alpha_k / gamma_k
  double delta = 0.0;  // phase shift
};

// delta_k = (sum_{l<k} ln(|g_l-g_k|/(g_l+g_k)) - sum_{l>k} ln(|g_k-g_l|/(g_k+g_l))) / 2
std::vector<double> phase_shifts(std::span<const double> gammas);

// Same pairwise terms, signed by which soliton overtakes which: the faster one
// of each pair moves ahead. Reduces to the form above when speeds fall with gamma.
std::vector<double> phase_shifts(std::span<const double> gammas, std::span<const double> speeds);

std::vector<SolitonTrack> soliton_tracks(const Spectrum& spectrum, std::span<const double> alphas);

// Predicted centre of soliton k: speed t + sgn(t) delta / gamma.
double predicted_center(const SolitonTrack& track, double gamma, double t);

struct ClosedFormSolution {
  GridFunction U;
  std::vector<GridFunction> psis;
  GridFunction xi;
};

// Sampled closed forms for one or two solitons with the symmetric norm
// constants, y_j = x - (alpha_j / gamma_j) t. Two solitons need g1 < g2.
ClosedFormSolution closed_form_reference(std::span<const double> gammas, std::span<const double> alphas, double t,
                                         const Grid& grid);

struct SolitonWindowError {
  std::size_t k = 0;
  double predicted_center = 0.0;
  double measured_center = 0.0;  // argmin of U in the window, parabola-refined
  double center_error = 0.0;
  double measured_shift = 0.0;   // sgn(t) gamma_k (measured_center - speed t)
  double potential_error = 0.0;  // max |U - u_k| in the window
  double psi_error = 0.0;        // max |psi_k -/+ profile|, sign fitted
  double xi_error = 0.0;         // max |xi^2 - tanh^2|
};

struct DecompositionReport {
  bool asymptotic = false;
  double required_abs_time = 0.0;  // |t| needed for centres 10/gamma_min apart
  std::vector<SolitonWindowError> solitons;

  double max_potential_error() const;
  double max_psi_error() const;
  double max_xi_error() const;
  double max_center_error() const;
};

// Windows are |x - centre| <= 6 / gamma_k. With strict set a
// non-asymptotic state raises not_asymptotic instead of being reported.
DecompositionReport asymptotic_decomposition_error(const SolitonState& state, bool strict = false);

}  // namespace solitons
