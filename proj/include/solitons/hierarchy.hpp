#pragma once

// Lax functions L_j, dual functions Lbar_m and the weighted family Q_j,
// all expressed through bound-state densities, plus the recursion and
// sumrule checks that tie them to the potential.

#include <optional>
#include <span>

#include "solitons/identities.hpp"
#include "solitons/state.hpp"

namespace solitons {

enum class HierarchyFamily { lax, dual, weighted };
enum class HierarchyMethod { spectral, recursive, closed_form };

const char* to_string(HierarchyFamily family);
const char* to_string(HierarchyMethod method);

// Derivative noise grows like h^-order; indices above this are refused.
inline constexpr int kMaxHierarchyIndex = 8;

struct HierarchyFunction {
  HierarchyFamily family;
  int index;
  GridFunction values;
  HierarchyMethod method;
};

// spectral:    L_j = -2 sum (2 gamma_k)^{2j+1} psi_k^2
// recursive:   L_j' = (d3 - 4U d - 2U') L_{j-1}, L_j(x_max) = 0
// closed_form: j <= 2 in terms of U and its derivatives
HierarchyFunction lax_L(const SolitonState& state, int j, HierarchyMethod method = HierarchyMethod::spectral);

// Lbar_m = -2 sum psi_k^2 / (2 gamma_k)^{2m-1}
HierarchyFunction dual_L(const SolitonState& state, int m);

// Q_j = -4 sum beta_k (2 gamma_k)^{2j} psi_k^2
HierarchyFunction weighted_Q(const SolitonState& state, std::span<const double> betas, int j);

// Exact x-derivatives of the spectral representations, from the state's psi'.
GridFunction lax_L_derivative(const SolitonState& state, int j);
GridFunction dual_L_derivative(const SolitonState& state, int m);

// (d3 - 4U d - 2U') F by finite differences.
GridFunction recursion_operator(const GridFunction& potential, const GridFunction& f,
                                int accuracy = kResidualAccuracy);

enum class RecursionDirection { lax, dual };

// lax: F = L_{j-1}, G = L_j.  dual: F = Lbar_m, G = Lbar_{m-1}.
// Either way the residual is max |(d3 - 4U d - 2U') F - G'| on the interior.
double recursion_residual(const GridFunction& potential, const GridFunction& f, const GridFunction& g,
                          RecursionDirection direction, int accuracy = kResidualAccuracy);

struct SumruleReport {
  HierarchyFamily family = HierarchyFamily::lax;
  int index = 0;
  double integral = 0.0;
  double analytic = 0.0;  // -2 sum (2 gamma_k)^{2j+1}
  double rel_error = 0.0;

  // j <= 2: integral of the explicit polynomial in U and its derivatives
  // (U; 3 U^2; 5 U'^2 + 10 U^3) against its power sum of gammas.
  std::optional<double> closed_form_integral;
  std::optional<double> closed_form_analytic;
  std::optional<double> closed_form_rel_error;
};

SumruleReport sumrule(const SolitonState& state, int j);

}  // namespace solitons
