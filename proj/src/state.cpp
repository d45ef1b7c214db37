#include "solitons/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "solitons/error.hpp"
#include "solitons/kernels.hpp"

namespace solitons {

namespace {

// In-place Cholesky of a small SPD matrix; false if a pivot is not positive.
bool cholesky(SquareMatrix& m) {
  const std::size_t n = m.n;
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t p = 0; p < j; ++p) d -= m(j, p) * m(j, p);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    const double ljj = std::sqrt(d);
    m(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= m(i, p) * m(j, p);
      m(i, j) = s / ljj;
    }
  }
  return true;
}

void cholesky_solve(const SquareMatrix& l, std::span<double> b) {
  const std::size_t n = l.n;
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t p = 0; p < i; ++p) s -= l(i, p) * b[p];
    b[i] = s / l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t p = i + 1; p < n; ++p) s -= l(p, i) * b[p];
    b[i] = s / l(i, i);
  }
}

std::string at_x(double x) {
  std::ostringstream s;
  s << " at x=" << x;
  return s.str();
}

}  // namespace

GridFunction SolitonState::lambda(std::size_t k) const {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::exp(log_lambdas[k][i]);
    if (!std::isfinite(v[i])) throw Error(ErrorCode::range, "lambda overflows" + at_x(grid.x(i)));
  }
  return GridFunction(grid, std::move(v));
}

std::vector<double> SolitonState::log_balance(std::size_t i) const {
  std::vector<double> s(size());
  for (std::size_t k = 0; k < size(); ++k) s[k] = std::max(log_lambdas[k][i], 0.0);
  return s;
}

SquareMatrix SolitonState::balanced_matrix_A(std::size_t i) const {
  const std::size_t n = size();
  SquareMatrix m(n);
  std::vector<double> e(n);
  for (std::size_t k = 0; k < n; ++k) e[k] = std::exp(std::min(log_lambdas[k][i], 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      m(k, l) = e[k] * e[l] / (spectrum.gamma(k) + spectrum.gamma(l));
    }
    m(k, k) += std::exp(-2.0 * std::max(log_lambdas[k][i], 0.0));
  }
  return m;
}

SquareMatrix SolitonState::matrix_A(std::size_t i) const {
  const std::size_t n = size();
  SquareMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      const double v = std::exp(log_lambdas[k][i] + log_lambdas[l][i]) / (spectrum.gamma(k) + spectrum.gamma(l));
      if (!std::isfinite(v)) throw Error(ErrorCode::range, "matrix A overflows" + at_x(grid.x(i)));
      m(k, l) = v + (k == l ? 1.0 : 0.0);
    }
  }
  return m;
}

Grid default_grid(const Spectrum& spectrum, std::span<const double> alphas, double max_abs_time) {
  if (spectrum.empty()) return Grid::covering(12.0, 0.01);
  double v_max = 0.0;
  for (std::size_t k = 0; k < spectrum.size() && k < alphas.size(); ++k) {
    v_max = std::max(v_max, std::fabs(alphas[k]) / spectrum.gamma(k));
  }
  const double half_width = 12.0 / spectrum.gamma_min() + v_max * std::fabs(max_abs_time);
  const double h = std::min(0.01, 0.05 / spectrum.gamma_max());
  return Grid::covering(half_width, h);
}

SolitonState build_state(const Spectrum& spectrum, std::span<const double> alphas, double t,
                         const Grid& grid) {
  const std::size_t n = spectrum.size();
  if (alphas.size() != n) throw Error(ErrorCode::spec, "one evolution rate per bound state is required");
  if (!std::isfinite(t)) throw Error(ErrorCode::spec, "time must be finite");

  SolitonState state(grid);
  state.spectrum = spectrum;
  state.time = t;
  state.alphas.assign(alphas.begin(), alphas.end());

  const std::size_t np = grid.size();
  std::vector<std::vector<double>> theta(n, std::vector<double>(np)), psi(n, std::vector<double>(np)),
      dpsi(n, std::vector<double>(np)), lpsi(n, std::vector<double>(np)), ldpsi(n, std::vector<double>(np));

  std::vector<double> log_c(n);
  for (std::size_t k = 0; k < n; ++k) log_c[k] = std::log(spectrum.norm_constant(k));

  SquareMatrix m(n);
  std::vector<double> e(n), inv_s(n), chi(n), phi(n);
  for (std::size_t i = 0; i < np; ++i) {
    const double x = grid.x(i);
    double log_scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double th = log_c[k] - spectrum.gamma(k) * x + alphas[k] * t;
      if (!std::isfinite(th)) throw Error(ErrorCode::range, "basis exponent not finite" + at_x(x));
      theta[k][i] = th;
      e[k] = std::exp(std::min(th, 0.0));
      inv_s[k] = std::exp(-std::max(th, 0.0));
      log_scale += std::max(th, 0.0);
    }
    // Balanced system (S^-2 + E M E) chi = e with chi = S psi.
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) m(k, l) = e[k] * e[l] / (spectrum.gamma(k) + spectrum.gamma(l));
      m(k, k) += inv_s[k] * inv_s[k];
    }
    if (!cholesky(m)) throw Error(ErrorCode::construction, "matrix A is singular" + at_x(x));

    std::copy(e.begin(), e.end(), chi.begin());
    cholesky_solve(m, chi);
    double w = 0.0, xi = 1.0, log_det = 2.0 * log_scale;
    for (std::size_t k = 0; k < n; ++k) {
      const double lp = e[k] * chi[k];
      lpsi[k][i] = lp;
      psi[k][i] = chi[k] * inv_s[k];
      w -= lp;
      xi -= lp / spectrum.gamma(k);
      log_det += 2.0 * std::log(m(k, k));
    }
    // d/dx: A psi' = lambda (-gamma - W)
    for (std::size_t k = 0; k < n; ++k) phi[k] = e[k] * (-spectrum.gamma(k) - w);
    cholesky_solve(m, phi);
    for (std::size_t k = 0; k < n; ++k) {
      dpsi[k][i] = phi[k] * inv_s[k];
      ldpsi[k][i] = e[k] * phi[k];
    }
    if (!std::isfinite(w) || !std::isfinite(xi) || !std::isfinite(log_det)) {
      throw Error(ErrorCode::range, "construction lost finiteness" + at_x(x));
    }
    state.W[i] = w;
    state.xi[i] = xi;
    state.log_det_A[i] = log_det;
  }

  for (std::size_t k = 0; k < n; ++k) {
    state.log_lambdas.emplace_back(grid, std::move(theta[k]));
    state.psis.emplace_back(grid, std::move(psi[k]));
    state.dpsis.emplace_back(grid, std::move(dpsi[k]));
    state.lambda_psis.emplace_back(grid, std::move(lpsi[k]));
    state.lambda_dpsis.emplace_back(grid, std::move(ldpsi[k]));
  }
  for (std::size_t k = 0; k < n; ++k) {
    kernels::accumulate_weighted_product(state.U.values(), -4.0 * spectrum.gamma(k), state.psis[k].values(),
                                         state.psis[k].values());
  }
  return state;
}

ComplexGridFunction scattering_state(const SolitonState& state, double k, WaveSign sign) {
  const double s = sign == WaveSign::plus ? 1.0 : -1.0;
  const std::complex<double> ik(0.0, s * k);
  ComplexGridFunction out{state.grid, std::vector<std::complex<double>>(state.grid.size())};
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    std::complex<double> factor = 1.0;
    for (std::size_t l = 0; l < state.size(); ++l) {
      factor -= state.lambda_psis[l][i] / (state.spectrum.gamma(l) - ik);
    }
    out.values[i] = std::exp(ik * state.grid.x(i)) * factor;
  }
  return out;
}

GridFunction zero_energy_xi(const SolitonState& state) {
  GridFunction xi(state.grid);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    double v = 1.0;
    for (std::size_t l = 0; l < state.size(); ++l) v -= state.lambda_psis[l][i] / state.spectrum.gamma(l);
    xi[i] = v;
  }
  return xi;
}

OverlapInverse overlap_inverse_B(const SolitonState& state) {
  const std::size_t n = state.size();
  const std::size_t np = state.grid.size();
  OverlapInverse out{state.grid, n, std::vector<double>(np * n * n, 0.0)};

  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t k = l; k < n; ++k) {
      const GridFunction product = state.psis[l] * state.psis[k];
      // psi_l psi_k ~ exp((gamma_l + gamma_k) x) beyond the left edge.
      const double tail = product[0] / (state.spectrum.gamma(l) + state.spectrum.gamma(k));
      const GridFunction b = cumulative_integral(product, IntegrateFrom::left, tail);
      for (std::size_t i = 0; i < np; ++i) {
        if (!std::isfinite(b[i])) throw Error(ErrorCode::numeric, "overlap quadrature is not finite");
        out.values[(i * n + l) * n + k] = b[i];
        out.values[(i * n + k) * n + l] = b[i];
      }
    }
  }

  for (std::size_t i = 0; i < np; ++i) {
    const auto ls = state.log_balance(i);
    const SquareMatrix ab = state.balanced_matrix_A(i);
    bool representable = true;
    for (double v : ls) representable = representable && 2.0 * v < 700.0;
    // Far left, psi_k^2 underflows and B carries no information.
    bool resolved = true;
    for (std::size_t k = 0; k < n; ++k) resolved = resolved && out(i, k, k) > 1e-280;
    for (std::size_t r = 0; resolved && r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        // balanced: sum_k Ab_rk (s_k B_kc s_c) - delta_rc
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double b = out(i, k, c);
          if (b != 0.0) acc += ab(r, k) * std::copysign(std::exp(ls[k] + ls[c] + std::log(std::fabs(b))), b);
        }
        out.inverse_residual = std::max(out.inverse_residual, std::fabs(acc - (r == c ? 1.0 : 0.0)));
      }
    }
    if (representable) {
      const SquareMatrix a = state.matrix_A(i);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          double acc = 0.0;
          for (std::size_t k = 0; k < n; ++k) acc += a(r, k) * out(i, k, c);
          out.inverse_residual_unbalanced =
              std::max(out.inverse_residual_unbalanced, std::fabs(acc - (r == c ? 1.0 : 0.0)));
        }
      }
    }
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t k = 0; k < n; ++k) {
        if (l == k) continue;
        const double gl = state.spectrum.gamma(l), gk = state.spectrum.gamma(k);
        const double wr = state.psis[l][i] * state.dpsis[k][i] - state.dpsis[l][i] * state.psis[k][i];
        out.wronskian_residual = std::max(out.wronskian_residual, std::fabs(out(i, l, k) - wr / (gk * gk - gl * gl)));
      }
    }
  }
  return out;
}

}  // namespace solitons
