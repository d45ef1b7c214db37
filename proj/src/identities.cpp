#include "solitons/identities.hpp"

#include <algorithm>
#include <cmath>

#include "solitons/error.hpp"

namespace solitons {

std::size_t residual_margin(int order, int accuracy) {
  return 5 * (2 * stencil_half_width(order, accuracy) + 1);
}

double linear_system_residual(const SolitonState& state) {
  const std::size_t n = state.size();
  double worst = 0.0;
  std::vector<double> chi(n), e(n);
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    const SquareMatrix m = state.balanced_matrix_A(i);
    for (std::size_t k = 0; k < n; ++k) {
      const double th = state.log_lambdas[k][i];
      e[k] = std::exp(std::min(th, 0.0));
      chi[k] = th > 0.0 ? state.lambda_psis[k][i] : state.psis[k][i];
    }
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t l = 0; l < n; ++l) acc += m(k, l) * chi[l];
      worst = std::max(worst, std::fabs(acc - e[k]));
    }
  }
  return worst;
}

double IdentityChain::max() const {
  return std::max({sum_gamma_psi_psi_minus_lambda, antisymmetric_sum, symmetric_sum, lambda_dpsi_sum,
                   gamma_psi_lambda_sum});
}

IdentityChain identity_chain(const SolitonState& state) {
  IdentityChain out;
  const auto& sp = state.spectrum;
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    double g_pp = 0.0, g_lp = 0.0, l_dp = 0.0;
    for (std::size_t k = 0; k < state.size(); ++k) {
      const double psi = state.psis[k][i];
      g_pp += sp.gamma(k) * psi * psi;
      g_lp += sp.gamma(k) * state.lambda_psis[k][i];
      l_dp += state.lambda_dpsis[k][i];
    }
    const double w2 = state.W[i] * state.W[i];
    const double u = state.U[i];
    // lambda' = -gamma lambda
    out.sum_gamma_psi_psi_minus_lambda = std::max(out.sum_gamma_psi_psi_minus_lambda, std::fabs(g_pp - g_lp + 0.5 * w2));
    out.antisymmetric_sum = std::max(out.antisymmetric_sum, std::fabs(l_dp + g_lp - w2));
    out.symmetric_sum = std::max(out.symmetric_sum, std::fabs(l_dp - g_lp - 0.5 * u));
    out.lambda_dpsi_sum = std::max(out.lambda_dpsi_sum, std::fabs(l_dp - 0.25 * u - 0.5 * w2));
    out.gamma_psi_lambda_sum = std::max(out.gamma_psi_lambda_sum, std::fabs(g_lp - (0.5 * w2 - 0.25 * u)));
  }
  return out;
}

PotentialRepresentations potential_representations(const SolitonState& state, int accuracy) {
  PotentialRepresentations out;
  const GridFunction dw = grid_derivative(state.W, 1, accuracy);
  GridFunction lp(state.grid);
  for (const auto& f : state.lambda_psis) lp += f;
  const GridFunction dlp = grid_derivative(lp, 1, accuracy);
  const GridFunction d2log = grid_derivative(state.log_det_A, 2, accuracy);
  const std::size_t margin = residual_margin(2, accuracy);
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    out.from_superpotential = std::max(out.from_superpotential, std::fabs(-2.0 * dw[i] - state.U[i]));
    out.from_lambda_psi = std::max(out.from_lambda_psi, std::fabs(2.0 * dlp[i] - state.U[i]));
    if (i >= margin && i + margin < state.grid.size()) {
      out.from_log_det = std::max(out.from_log_det, std::fabs(-2.0 * d2log[i] - state.U[i]));
    }
  }
  return out;
}

double eigen_equation_residual(const SolitonState& state, int accuracy) {
  const std::size_t margin = residual_margin(2, accuracy);
  double worst = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const double g2 = state.spectrum.gamma(k) * state.spectrum.gamma(k);
    const GridFunction d2 = grid_derivative(state.psis[k], 2, accuracy, Asymptotes::decaying());
    GridFunction r = -1.0 * d2 + state.U * state.psis[k] + g2 * state.psis[k];
    worst = std::max(worst, max_abs(r, margin));
  }
  return worst;
}

double density_ode_residual(const SolitonState& state, int accuracy) {
  const std::size_t margin = residual_margin(3, accuracy);
  const GridFunction du = grid_derivative(state.U, 1, accuracy, Asymptotes::decaying());
  double worst = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k) {
    const double g2 = state.spectrum.gamma(k) * state.spectrum.gamma(k);
    const GridFunction p = state.psis[k] * state.psis[k];
    const GridFunction dp = grid_derivative(p, 1, accuracy, Asymptotes::decaying());
    const GridFunction d3p = grid_derivative(p, 3, accuracy, Asymptotes::decaying());
    GridFunction r = d3p - 4.0 * (state.U * dp) - 2.0 * (du * p) - (4.0 * g2) * dp;
    worst = std::max(worst, max_abs(r, margin));
  }
  return worst;
}

double xi_identity_residual(const SolitonState& state) {
  double worst = 0.0;
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < state.size(); ++k) s += state.psis[k][i] * state.psis[k][i] / state.spectrum.gamma(k);
    worst = std::max(worst, std::fabs(state.xi[i] * state.xi[i] + 2.0 * s - 1.0));
  }
  return worst;
}

double xi_equation_residual(const SolitonState& state, int accuracy) {
  const GridFunction d2 = grid_derivative(state.xi, 2, accuracy);
  return max_abs(d2 - state.U * state.xi, residual_margin(2, accuracy));
}

double normalization_error(const SolitonState& state) {
  double worst = 0.0;
  for (const auto& psi : state.psis) worst = std::max(worst, std::fabs(grid_integral(psi * psi) - 1.0));
  return worst;
}

double symmetry_error(const GridFunction& f) {
  const Grid& g = f.grid();
  if (std::fabs(g.x_min() + g.x_max()) > 1e-12 * g.x_max()) {
    throw Error(ErrorCode::invalid_grid, "symmetry check needs a grid symmetric about 0");
  }
  double worst = 0.0;
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::fabs(f[i] - f[n - 1 - i]));
  return worst;
}

Asymptotics edge_asymptotics(const SolitonState& state) {
  double gamma_sum = 0.0;
  for (double g : state.spectrum.gammas()) gamma_sum += g;
  const double parity = state.size() % 2 == 0 ? 1.0 : -1.0;
  return Asymptotics{
      std::fabs(state.W.back()),
      std::fabs(state.W.front() + 2.0 * gamma_sum),
      std::fabs(state.xi.back() - 1.0),
      std::fabs(state.xi.front() - parity),
  };
}

double schrodinger_residual(const ComplexGridFunction& psi, const GridFunction& potential, double energy,
                            int accuracy) {
  const GridFunction re = psi.real();
  const GridFunction im = psi.imag();
  const GridFunction d2re = grid_derivative(re, 2, accuracy);
  const GridFunction d2im = grid_derivative(im, 2, accuracy);
  const std::size_t margin = residual_margin(2, accuracy);
  double worst = 0.0;
  for (std::size_t i = margin; i + margin < re.size(); ++i) {
    const double rr = -d2re[i] + (potential[i] - energy) * re[i];
    const double ri = -d2im[i] + (potential[i] - energy) * im[i];
    worst = std::max(worst, std::hypot(rr, ri));
  }
  return worst;
}

}  // namespace solitons
