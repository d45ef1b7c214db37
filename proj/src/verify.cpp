#include "solitons/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "json.hpp"
#include "solitons/asymptotics.hpp"
#include "solitons/error.hpp"
#include "solitons/hierarchy.hpp"
#include "solitons/identities.hpp"
#include "solitons/io.hpp"
#include "solitons/oracle.hpp"
#include "solitons/state.hpp"

namespace solitons {

bool VerificationReport::passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  char line[256];
  for (const Check& c : checks) {
    std::snprintf(line, sizeof line, "%-4s %-48s %12.4e %s %10.3e\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                  c.measured, c.lower_bound ? ">" : "<", c.tolerance);
    out << line;
  }
  out << (passed() ? "verification passed" : "verification FAILED") << " (" << checks.size() - failures() << "/"
      << checks.size() << " checks)\n";
  return out.str();
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const Check& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"measured", c.measured},
                           {"tolerance", c.tolerance},
                           {"comparison", c.lower_bound ? ">" : "<"},
                           {"passed", c.passed}});
  }
  return j.dump(1) + "\n";
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t = {
      {"linear_system", 1e-8},
      {"overlap_inverse", 1e-8},
      {"wronskian", 1e-8},
      {"identity_chain", 1e-7},
      {"potential_representation", 1e-6},
      {"eigen_equation", 1e-5},
      {"density_ode", 1e-4},
      {"xi_identity", 1e-9},
      {"xi_equation", 1e-5},
      {"normalization", 1e-6},
      {"symmetry", 1e-8},
      {"edge_asymptotes", 1e-6},
      {"sumrule", 1e-6},
      {"sumrule_closed_form", 1e-5},
      {"method_closed_form", 1e-5},
      {"method_recursive", 1e-4},
      {"lax_recursion", 1e-4},
      {"dual_recursion", 1e-4},
      {"weighted_recursion", 1e-4},
      {"recursion_negative_control", 1e-2},
      {"eigenvalues", 1e-4},
      {"bound_count", 0.5},
      {"reflection", 1e-6},
      {"flux", 1e-6},
      {"scattering_state", 1e-6},
      {"potential_evolution", 1e-4},
      {"lax_evolution", 1e-4},
      {"dual_evolution", 1e-5},
      {"kdv", 1e-4},
      {"generator", 1e-4},
      {"superpotential_evolution", 1e-4},
      {"xi_evolution", 1e-4},
      {"closed_form", 1e-9},
      {"asymptotic_potential", 1e-3},
      {"asymptotic_psi", 1e-3},
      {"asymptotic_xi", 1e-3},
      {"asymptotic_shift", 1e-2},
      {"asymptotic_center", 2.0},
  };
  return t;
}

namespace {

class Checker {
 public:
  explicit Checker(const VerifyOptions& o) : options_(o) {
    for (const auto& [name, tol] : o.tolerances) {
      if (!default_tolerances().count(name)) throw Error(ErrorCode::config, "unknown tolerance '" + name + "'");
    }
  }

  void upper(const std::string& base, const std::string& suffix, double measured) { add(base, suffix, measured, false); }
  void lower(const std::string& base, const std::string& suffix, double measured) { add(base, suffix, measured, true); }

  VerificationReport report;

 private:
  void add(const std::string& base, const std::string& suffix, double measured, bool lower_bound) {
    double tol = default_tolerances().at(base);
    if (auto it = options_.tolerances.find(base); it != options_.tolerances.end()) tol = it->second;
    if (!lower_bound) tol *= options_.tolerance_scale;
    const bool ok = std::isfinite(measured) && (lower_bound ? measured > tol : measured < tol);
    report.checks.push_back({suffix.empty() ? base : base + "[" + suffix + "]", measured, tol, ok, lower_bound});
  }

  const VerifyOptions& options_;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

double scaled_diff(const GridFunction& a, const GridFunction& b, std::size_t margin) {
  return max_abs(a - b, margin) / std::max(1.0, max_abs(b, margin));
}

bool symmetric_constants(const Spectrum& sp) {
  const std::vector<double> c = symmetric_norm_constants(sp.gammas());
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (std::fabs(c[k] - sp.norm_constant(k)) > 1e-14 * c[k]) return false;
  }
  return true;
}

void static_checks(Checker& ck, const SolitonState& s, int max_index) {
  const std::string tag = "t=" + fmt(s.time);
  ck.upper("linear_system", tag, linear_system_residual(s));
  if (s.size() > 0) {
    const OverlapInverse b = overlap_inverse_B(s);
    ck.upper("overlap_inverse", tag, b.inverse_residual);
    ck.upper("wronskian", tag, b.wronskian_residual);
  }
  ck.upper("identity_chain", tag, identity_chain(s).max());
  const PotentialRepresentations pr = potential_representations(s);
  ck.upper("potential_representation", tag,
           std::max({pr.from_superpotential, pr.from_lambda_psi, pr.from_log_det}));
  ck.upper("eigen_equation", tag, eigen_equation_residual(s));
  ck.upper("density_ode", tag, density_ode_residual(s));
  ck.upper("xi_identity", tag, xi_identity_residual(s));
  ck.upper("xi_equation", tag, xi_equation_residual(s));
  ck.upper("normalization", tag, normalization_error(s));
  const Asymptotics a = edge_asymptotics(s);
  ck.upper("edge_asymptotes", tag, std::max({a.w_left, a.w_right, a.xi_left, a.xi_right}));

  for (int j = 0; j <= max_index; ++j) {
    const SumruleReport r = sumrule(s, j);
    const std::string jt = "j=" + std::to_string(j) + "," + tag;
    ck.upper("sumrule", jt, r.rel_error);
    if (r.closed_form_rel_error) ck.upper("sumrule_closed_form", jt, *r.closed_form_rel_error);
  }
}

void hierarchy_checks(Checker& ck, const SolitonState& s, int max_index) {
  const std::size_t m3 = residual_margin(3);
  for (int j = 1; j <= std::min(max_index, 2); ++j) {
    const GridFunction spectral = lax_L(s, j).values;
    const std::string jt = "j=" + std::to_string(j);
    ck.upper("method_closed_form", jt, scaled_diff(lax_L(s, j, HierarchyMethod::closed_form).values, spectral, m3));
    ck.upper("method_recursive", jt, scaled_diff(lax_L(s, j, HierarchyMethod::recursive).values, spectral, m3));
  }
  for (int j = 1; j <= max_index; ++j) {
    const GridFunction g = lax_L(s, j).values;
    const double r = recursion_residual(s.U, lax_L(s, j - 1).values, g, RecursionDirection::lax);
    ck.upper("lax_recursion", "j=" + std::to_string(j), r / std::max(1.0, max_abs(g, 0)));
  }
  for (int m = 1; m <= 3; ++m) {
    const GridFunction g = dual_L(s, m - 1).values;
    const double r = recursion_residual(s.U, dual_L(s, m).values, g, RecursionDirection::dual);
    ck.upper("dual_recursion", "m=" + std::to_string(m), r / std::max(1.0, max_abs(g, 0)));
  }
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> betas(s.size());
  for (double& b : betas) b = dist(rng);
  for (int j = 0; j < std::max(max_index, 1); ++j) {
    const GridFunction g = weighted_Q(s, betas, j + 1).values;
    const double r = recursion_residual(s.U, weighted_Q(s, betas, j).values, g, RecursionDirection::lax);
    ck.upper("weighted_recursion", "j=" + std::to_string(j), r / std::max(1.0, max_abs(g, 0)));
  }
  const GridFunction f = GridFunction::sample(s.grid, [](double x) { return std::sin(x); });
  ck.lower("recursion_negative_control", "sin",
           recursion_residual(s.U, f, GridFunction(s.grid), RecursionDirection::lax));
}

void oracle_spectrum_check(Checker& ck, const SolitonState& s) {
  const std::string tag = "t=" + fmt(s.time);
  const std::size_t n = s.size();
  const EnergySpectrum e = schrodinger_spectrum(s.U, n, {.richardson = true});
  ck.upper("bound_count", tag, std::fabs(static_cast<double>(e.bound_count) - static_cast<double>(n)));
  double worst = 0.0;
  for (std::size_t k = 0; k < n && k < e.energies.size(); ++k) {
    const double g = s.spectrum.gamma(n - 1 - k);
    worst = std::max(worst, std::fabs(e.energies[k] + g * g) / (g * g));
  }
  if (n > 0) ck.upper("eigenvalues", tag, worst);
}

void scattering_checks(Checker& ck, const Spectrum& sp) {
  if (sp.empty()) return;
  const double h = std::min(0.01, 0.05 / sp.gamma_max());
  const Grid wide = Grid::covering(20.0 / sp.gamma_min(), h);
  const SolitonState s = build_state(sp, std::vector<double>(sp.size(), 0.0), 0.0, wide);
  for (double k : {0.5, 1.0, 2.0}) {
    const ScatteringReport r = reflection_coefficient(s.U, k);
    ck.upper("reflection", "k=" + fmt(k), std::abs(r.R));
    ck.upper("flux", "k=" + fmt(k), r.flux_error());
  }
  ck.upper("scattering_state", "k=1", schrodinger_residual(scattering_state(s, 1.0, WaveSign::plus), s.U, 1.0));
}

void evolution_checks(Checker& ck, const Spectrum& sp, const EvolutionSpec& spec, double t, const Grid& grid) {
  EvolutionSpec local = spec;
  local.times = stencil_times(t, default_time_step(alphas_for(spec, sp)), 3);
  const EvolutionFrames frames = evolve(sp, local, grid);
  const std::string tag = "t=" + fmt(t);
  const PotentialEvolutionResidual r = potential_evolution_residual(frames);
  ck.upper("potential_evolution", tag, r.general);
  if (r.hierarchy) ck.upper(spec.kind == EvolutionKind::lax ? "lax_evolution" : "dual_evolution", tag, *r.hierarchy);
  if (r.kdv) ck.upper("kdv", tag, *r.kdv);
  ck.upper("superpotential_evolution", tag, superpotential_evolution_residual(frames));
  if (spec.kind != EvolutionKind::custom && !sp.empty()) ck.upper("generator", tag, generator_residual(frames));
  if (spec.kind == EvolutionKind::dual && spec.m == 1) ck.upper("xi_evolution", tag, xi_evolution_residual(frames));
}

void closed_form_check(Checker& ck, const SolitonState& s) {
  const ClosedFormSolution c = closed_form_reference(s.spectrum.gammas(), s.alphas, s.time, s.grid);
  double worst = std::max(max_abs(c.U - s.U, 0), max_abs(c.xi - s.xi, 0));
  for (std::size_t k = 0; k < s.size(); ++k) worst = std::max(worst, max_abs(c.psis[k] - s.psis[k], 0));
  ck.upper("closed_form", "t=" + fmt(s.time), worst);
}

void asymptotic_checks(Checker& ck, const SolitonState& s) {
  const DecompositionReport r = asymptotic_decomposition_error(s);
  if (!r.asymptotic) return;
  const std::string tag = "t=" + fmt(s.time);
  ck.upper("asymptotic_potential", tag, r.max_potential_error());
  ck.upper("asymptotic_psi", tag, r.max_psi_error());
  ck.upper("asymptotic_xi", tag, r.max_xi_error());
  const std::vector<SolitonTrack> tracks = soliton_tracks(s.spectrum, s.alphas);
  double shift = 0.0;
  for (const auto& w : r.solitons) shift = std::max(shift, std::fabs(w.measured_shift - tracks[w.k].delta));
  ck.upper("asymptotic_shift", tag, shift);
  ck.upper("asymptotic_center", tag + ",units=h", r.max_center_error() / s.grid.spacing());
}

}  // namespace

VerificationReport verify_scenario(const Spectrum& sp, const EvolutionSpec& spec_in, const VerifyOptions& options) {
  Checker ck(options);
  EvolutionSpec spec = spec_in;
  if (spec.times.empty()) spec.times = {0.0};
  const std::vector<double> alphas = alphas_for(spec, sp);
  const double dt = default_time_step(alphas);
  double tmax = 0.0;
  for (double t : spec.times) tmax = std::max(tmax, std::fabs(t));
  const Grid grid = options.grid ? *options.grid : default_grid(sp, alphas, tmax + 4.0 * dt);
  const bool symmetric = symmetric_constants(sp);

  const SolitonState s0 = build_state(sp, alphas, 0.0, grid);
  static_checks(ck, s0, options.max_index);
  if (symmetric && grid.x_min() == -grid.x_max()) ck.upper("symmetry", "t=0", symmetry_error(s0.U));
  if (!sp.empty()) hierarchy_checks(ck, s0, options.max_index);
  scattering_checks(ck, sp);

  for (double t : spec.times) {
    const SolitonState s = t == 0.0 ? s0 : build_state(sp, alphas, t, grid);
    if (t != 0.0) {
      ck.upper("normalization", "t=" + fmt(t), normalization_error(s));
      for (int j = 0; j <= options.max_index; ++j) {
        ck.upper("sumrule", "j=" + std::to_string(j) + ",t=" + fmt(t), sumrule(s, j).rel_error);
      }
    }
    oracle_spectrum_check(ck, s);
    evolution_checks(ck, sp, spec, t, grid);
    if (symmetric && (sp.size() == 1 || sp.size() == 2)) closed_form_check(ck, s);
    if (!sp.empty() && t != 0.0) asymptotic_checks(ck, s);
  }
  return std::move(ck.report);
}

}  // namespace solitons
