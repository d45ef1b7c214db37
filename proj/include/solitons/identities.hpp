#pragma once

// Pointwise identities satisfied by a constructed state, each reduced to a
// max-norm residual. Derivatives that enter as independent checks come from
// finite differences; the analytic psi' carried by the state is used only
// where an identity is written in terms of it.

#include <cstddef>

#include "solitons/state.hpp"

namespace solitons {

// Stencil accuracy used by residual oracles.
inline constexpr int kResidualAccuracy = 8;

// Points excluded at each edge: five widths of the order-`order` stencil.
std::size_t residual_margin(int order, int accuracy = kResidualAccuracy);

// max_k |sum_l A_kl psi_l - lambda_k| in the balanced basis.
double linear_system_residual(const SolitonState& state);

struct IdentityChain {
  double sum_gamma_psi_psi_minus_lambda = 0.0;  // sum gamma psi (psi - lambda) = -W^2/2
  double antisymmetric_sum = 0.0;              // sum (lambda psi' - psi lambda') = W^2
  double symmetric_sum = 0.0;                  // sum (lambda psi' + psi lambda') = U/2
  double lambda_dpsi_sum = 0.0;                // sum lambda psi' = U/4 + W^2/2
  double gamma_psi_lambda_sum = 0.0;           // sum gamma psi lambda = W^2/2 - U/4

  double max() const;
};

IdentityChain identity_chain(const SolitonState& state);

struct PotentialRepresentations {
  double from_superpotential = 0.0;  // |-2 W' - U|
  double from_lambda_psi = 0.0;      // |2 (sum psi lambda)' - U|
  double from_log_det = 0.0;         // |-2 (ln det A)'' - U|, interior only
};

PotentialRepresentations potential_representations(const SolitonState& state, int accuracy = kResidualAccuracy);

// max_k |-psi_k'' + U psi_k + gamma_k^2 psi_k| on the interior.
double eigen_equation_residual(const SolitonState& state, int accuracy = kResidualAccuracy);

// max_k |(d3 - 4U d - 2U') P_k - 4 gamma_k^2 P_k'| with P_k = psi_k^2, interior.
double density_ode_residual(const SolitonState& state, int accuracy = kResidualAccuracy);

// max |xi^2 + 2 sum psi_j^2 / gamma_j - 1|
double xi_identity_residual(const SolitonState& state);
// max |xi'' - U xi| on the interior.
double xi_equation_residual(const SolitonState& state, int accuracy = kResidualAccuracy);

// max_k |integral psi_k^2 - 1|
double normalization_error(const SolitonState& state);

// max |U(x) - U(-x)|; the grid must be symmetric.
double symmetry_error(const GridFunction& f);

struct Asymptotics {
  double w_right = 0.0;   // |W(x_max)|
  double w_left = 0.0;    // |W(x_min) + 2 sum gamma|
  double xi_right = 0.0;  // |xi(x_max) - 1|
  double xi_left = 0.0;   // |xi(x_min) - (-1)^N|
};

Asymptotics edge_asymptotics(const SolitonState& state);

// Interior max of |-psi'' + U psi - k^2 psi| for a complex solution.
double schrodinger_residual(const ComplexGridFunction& psi, const GridFunction& potential, double energy,
                            int accuracy = kResidualAccuracy);

}  // namespace solitons
