#include "solitons/hierarchy.hpp"

#include <cmath>
#include <sstream>

#include "solitons/error.hpp"
#include "solitons/identities.hpp"
#include "solitons/kernels.hpp"

namespace solitons {

const char* to_string(HierarchyFamily family) {
  switch (family) {
    case HierarchyFamily::lax: return "lax";
    case HierarchyFamily::dual: return "dual";
    case HierarchyFamily::weighted: return "weighted";
  }
  return "?";
}

const char* to_string(HierarchyMethod method) {
  switch (method) {
    case HierarchyMethod::spectral: return "spectral";
    case HierarchyMethod::recursive: return "recursive";
    case HierarchyMethod::closed_form: return "closed_form";
  }
  return "?";
}

namespace {

void check_index(int j, const char* what) {
  if (j < 0 || j > kMaxHierarchyIndex) {
    std::ostringstream msg;
    msg << what << " index " << j << " outside 0.." << kMaxHierarchyIndex;
    throw Error(ErrorCode::spec, msg.str());
  }
}

// sum_k weights[k] psi_k^2
GridFunction density_sum(const SolitonState& state, std::span<const double> weights) {
  GridFunction out(state.grid);
  for (std::size_t k = 0; k < state.size(); ++k) {
    kernels::accumulate_weighted_product(out.values(), weights[k], state.psis[k].values(), state.psis[k].values());
  }
  return out;
}

// sum_k 2 weights[k] psi_k psi_k'
GridFunction density_sum_derivative(const SolitonState& state, std::span<const double> weights) {
  GridFunction out(state.grid);
  for (std::size_t k = 0; k < state.size(); ++k) {
    kernels::accumulate_weighted_product(out.values(), 2.0 * weights[k], state.psis[k].values(),
                                         state.dpsis[k].values());
  }
  return out;
}

std::vector<double> lax_weights(const SolitonState& state, int j) {
  std::vector<double> w(state.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = -2.0 * std::pow(2.0 * state.spectrum.gamma(k), 2 * j + 1);
  return w;
}

std::vector<double> dual_weights(const SolitonState& state, int m) {
  std::vector<double> w(state.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = -2.0 / std::pow(2.0 * state.spectrum.gamma(k), 2 * m - 1);
  return w;
}

GridFunction closed_form_lax(const GridFunction& u, int j) {
  const auto decay = Asymptotes::decaying();
  switch (j) {
    case 0: return u;
    case 1: {
      const GridFunction d2 = grid_derivative(u, 2, kResidualAccuracy, decay);
      return d2 - 3.0 * (u * u);
    }
    case 2: {
      const GridFunction d1 = grid_derivative(u, 1, kResidualAccuracy, decay);
      const GridFunction d2 = grid_derivative(u, 2, kResidualAccuracy, decay);
      const GridFunction d4 = grid_derivative(u, 4, kResidualAccuracy, decay);
      return d4 - 10.0 * (u * d2) - 5.0 * (d1 * d1) + 10.0 * (u * u * u);
    }
    default: throw Error(ErrorCode::spec, "closed-form Lax functions exist only for j <= 2");
  }
}

}  // namespace

HierarchyFunction lax_L(const SolitonState& state, int j, HierarchyMethod method) {
  check_index(j, "Lax");
  switch (method) {
    case HierarchyMethod::spectral:
      return {HierarchyFamily::lax, j, density_sum(state, lax_weights(state, j)), method};
    case HierarchyMethod::closed_form:
      return {HierarchyFamily::lax, j, closed_form_lax(state.U, j), method};
    case HierarchyMethod::recursive: {
      // Carry g = L' alongside L so each step differentiates the integrand
      // twice rather than the integrated function three times.
      const auto decay = Asymptotes::decaying();
      const GridFunction& u = state.U;
      const GridFunction du = grid_derivative(u, 1, kResidualAccuracy, decay);
      GridFunction l = u;
      GridFunction g = du;
      for (int i = 1; i <= j; ++i) {
        g = grid_derivative(g, 2, kResidualAccuracy, decay) - 4.0 * (u * g) - 2.0 * (du * l);
        l = -cumulative_integral(g, IntegrateFrom::right, 0.0);
        for (double v : l.values()) {
          if (!std::isfinite(v)) throw Error(ErrorCode::numeric, "recursive Lax integration diverged");
        }
      }
      return {HierarchyFamily::lax, j, std::move(l), method};
    }
  }
  throw Error(ErrorCode::spec, "unknown hierarchy method");
}

HierarchyFunction dual_L(const SolitonState& state, int m) {
  check_index(m, "dual");
  return {HierarchyFamily::dual, m, density_sum(state, dual_weights(state, m)), HierarchyMethod::spectral};
}

HierarchyFunction weighted_Q(const SolitonState& state, std::span<const double> betas, int j) {
  check_index(j, "weighted");
  if (betas.size() != state.size()) throw Error(ErrorCode::spec, "one weight per bound state is required");
  std::vector<double> w(state.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = -4.0 * betas[k] * std::pow(2.0 * state.spectrum.gamma(k), 2 * j);
  return {HierarchyFamily::weighted, j, density_sum(state, w), HierarchyMethod::spectral};
}

GridFunction lax_L_derivative(const SolitonState& state, int j) {
  check_index(j, "Lax");
  return density_sum_derivative(state, lax_weights(state, j));
}

GridFunction dual_L_derivative(const SolitonState& state, int m) {
  check_index(m, "dual");
  return density_sum_derivative(state, dual_weights(state, m));
}

GridFunction recursion_operator(const GridFunction& potential, const GridFunction& f, int accuracy) {
  const auto decay = Asymptotes::decaying();
  const GridFunction du = grid_derivative(potential, 1, accuracy, decay);
  const GridFunction df = grid_derivative(f, 1, accuracy);
  const GridFunction d3f = grid_derivative(f, 3, accuracy);
  return d3f - 4.0 * (potential * df) - 2.0 * (du * f);
}

double recursion_residual(const GridFunction& potential, const GridFunction& f, const GridFunction& g,
                          RecursionDirection, int accuracy) {
  const GridFunction lhs = recursion_operator(potential, f, accuracy);
  const GridFunction dg = grid_derivative(g, 1, accuracy);
  return max_abs(lhs - dg, residual_margin(3, accuracy));
}

SumruleReport sumrule(const SolitonState& state, int j) {
  check_index(j, "sumrule");
  SumruleReport r;
  r.index = j;
  r.integral = grid_integral(lax_L(state, j).values);
  for (double g : state.spectrum.gammas()) r.analytic += -2.0 * std::pow(2.0 * g, 2 * j + 1);
  r.rel_error = r.analytic == 0.0 ? std::fabs(r.integral) : std::fabs(r.integral - r.analytic) / std::fabs(r.analytic);

  if (j <= 2) {
    const GridFunction& u = state.U;
    double power_sum = 0.0;
    for (double g : state.spectrum.gammas()) power_sum += std::pow(g, 2 * j + 1);
    double lhs = 0.0, rhs = 0.0;
    if (j == 0) {
      lhs = grid_integral(u);
      rhs = -4.0 * power_sum;
    } else if (j == 1) {
      lhs = 3.0 * grid_integral(u * u);
      rhs = 16.0 * power_sum;
    } else {
      const GridFunction du = grid_derivative(u, 1, kResidualAccuracy, Asymptotes::decaying());
      lhs = grid_integral(5.0 * (du * du) + 10.0 * (u * u * u));
      rhs = -64.0 * power_sum;
    }
    r.closed_form_integral = lhs;
    r.closed_form_analytic = rhs;
    r.closed_form_rel_error = rhs == 0.0 ? std::fabs(lhs) : std::fabs(lhs - rhs) / std::fabs(rhs);
  }
  return r;
}

}  // namespace solitons
