#include "solitons/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "solitons/error.hpp"

namespace solitons {

std::vector<double> phase_shifts(std::span<const double> gammas) {
  const std::size_t n = gammas.size();
  std::vector<double> delta(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t l = 0; l < k; ++l) s += std::log(std::fabs(gammas[l] - gammas[k]) / (gammas[l] + gammas[k]));
    for (std::size_t l = k + 1; l < n; ++l) s -= std::log(std::fabs(gammas[k] - gammas[l]) / (gammas[k] + gammas[l]));
    delta[k] = 0.5 * s;
  }
  return delta;
}

std::vector<double> phase_shifts(std::span<const double> gammas, std::span<const double> speeds) {
  const std::size_t n = gammas.size();
  if (speeds.size() != n) throw Error(ErrorCode::spec, "one speed per bound state is required");
  std::vector<double> delta(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k || speeds[k] == speeds[l]) continue;
      const double pair = std::log((gammas[k] + gammas[l]) / std::fabs(gammas[k] - gammas[l]));
      s += speeds[k] > speeds[l] ? pair : -pair;
    }
    delta[k] = 0.5 * s;
  }
  return delta;
}

std::vector<SolitonTrack> soliton_tracks(const Spectrum& spectrum, std::span<const double> alphas) {
  if (alphas.size() != spectrum.size()) throw Error(ErrorCode::spec, "one rate per bound state is required");
  std::vector<double> speeds(spectrum.size());
  for (std::size_t k = 0; k < speeds.size(); ++k) speeds[k] = alphas[k] / spectrum.gamma(k);
  const std::vector<double> delta = phase_shifts(spectrum.gammas(), speeds);
  std::vector<SolitonTrack> tracks(spectrum.size());
  for (std::size_t k = 0; k < tracks.size(); ++k) tracks[k] = {k, speeds[k], delta[k]};
  return tracks;
}

double predicted_center(const SolitonTrack& track, double gamma, double t) {
  const double sign = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
  return track.speed * t + sign * track.delta / gamma;
}

namespace {

// cosh(a) = e^|a| ch(a), sinh(a) = e^|a| sh(a)
struct Scaled {
  double ch, sh, decay2;  // decay2 = e^{-2|a|}
};

Scaled scaled(double a) {
  const double e = std::exp(-2.0 * std::fabs(a));
  const double sh = -0.5 * std::expm1(-2.0 * std::fabs(a));
  return {0.5 * (1.0 + e), a < 0.0 ? -sh : sh, e};
}

}  // namespace

ClosedFormSolution closed_form_reference(std::span<const double> gammas, std::span<const double> alphas, double t,
                                         const Grid& grid) {
  const std::size_t n = gammas.size();
  if (n != 1 && n != 2) throw Error(ErrorCode::spec, "closed forms exist for one or two solitons only");
  if (alphas.size() != n) throw Error(ErrorCode::spec, "one rate per bound state is required");
  for (double g : gammas) {
    if (!(g > 0.0) || !std::isfinite(g)) throw Error(ErrorCode::invalid_spectrum, "gamma values must be positive");
  }
  if (n == 2 && !(gammas[1] > gammas[0])) {
    throw Error(ErrorCode::ordering, "two-soliton closed form needs gamma_1 < gamma_2");
  }

  const std::size_t np = grid.size();
  std::vector<double> u(np), xi(np);
  std::vector<std::vector<double>> psi(n, std::vector<double>(np));

  if (n == 1) {
    const double g = gammas[0];
    const double v = alphas[0] / g;
    for (std::size_t i = 0; i < np; ++i) {
      const double a = g * (grid.x(i) - v * t);
      const double sech = 1.0 / std::cosh(a);
      u[i] = -2.0 * g * g * sech * sech;
      psi[0][i] = std::sqrt(g / 2.0) * sech;
      xi[i] = std::tanh(a);
    }
  } else {
    const double g1 = gammas[0], g2 = gammas[1];
    const double v1 = alphas[0] / g1, v2 = alphas[1] / g2;
    const double diff = g2 * g2 - g1 * g1;
    const double c1 = std::sqrt(g1 / 2.0) * std::sqrt(diff);
    const double c2 = std::sqrt(g2 / 2.0) * std::sqrt(diff);
    for (std::size_t i = 0; i < np; ++i) {
      const double a1 = g1 * (grid.x(i) - v1 * t);
      const double a2 = g2 * (grid.x(i) - v2 * t);
      const Scaled s1 = scaled(a1), s2 = scaled(a2);
      // Everything below is divided through by e^{|a1| + |a2|}.
      const double d = g2 * s1.ch * s2.ch - g1 * s1.sh * s2.sh;
      u[i] = -2.0 * diff / (d * d) * (g2 * g2 * s1.ch * s1.ch * s2.decay2 + g1 * g1 * s2.sh * s2.sh * s1.decay2);
      psi[0][i] = c1 * s2.sh * std::sqrt(s1.decay2) / d;
      psi[1][i] = c2 * s1.ch * std::sqrt(s2.decay2) / d;
      xi[i] = (g2 * s1.sh * s2.sh - g1 * s1.ch * s2.ch) / d;
    }
  }

  ClosedFormSolution out{GridFunction(grid, std::move(u)), {}, GridFunction(grid, std::move(xi))};
  for (auto& p : psi) out.psis.emplace_back(grid, std::move(p));
  return out;
}

double DecompositionReport::max_potential_error() const {
  double m = 0.0;
  for (const auto& s : solitons) m = std::max(m, s.potential_error);
  return m;
}

double DecompositionReport::max_psi_error() const {
  double m = 0.0;
  for (const auto& s : solitons) m = std::max(m, s.psi_error);
  return m;
}

double DecompositionReport::max_xi_error() const {
  double m = 0.0;
  for (const auto& s : solitons) m = std::max(m, s.xi_error);
  return m;
}

double DecompositionReport::max_center_error() const {
  double m = 0.0;
  for (const auto& s : solitons) m = std::max(m, s.center_error);
  return m;
}

DecompositionReport asymptotic_decomposition_error(const SolitonState& state, bool strict) {
  const Spectrum& sp = state.spectrum;
  const std::size_t n = sp.size();
  const double t = state.time;
  const std::vector<SolitonTrack> tracks = soliton_tracks(sp, state.alphas);
  DecompositionReport report;
  if (n == 0) {
    report.asymptotic = true;
    return report;
  }

  const double gap = 10.0 / sp.gamma_min();
  double min_dv = std::numeric_limits<double>::infinity();
  double max_shift = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    max_shift = std::max(max_shift, std::fabs(tracks[k].delta) / sp.gamma(k));
    for (std::size_t l = k + 1; l < n; ++l) min_dv = std::min(min_dv, std::fabs(tracks[k].speed - tracks[l].speed));
  }
  report.required_abs_time = n == 1 ? 0.0 : (min_dv > 0.0 ? (gap + 2.0 * max_shift) / min_dv
                                                         : std::numeric_limits<double>::infinity());

  std::vector<double> centers(n);
  for (std::size_t k = 0; k < n; ++k) centers[k] = predicted_center(tracks[k], sp.gamma(k), t);
  report.asymptotic = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      if (std::fabs(centers[k] - centers[l]) < gap) report.asymptotic = false;
    }
  }
  if (strict && !report.asymptotic) {
    std::ostringstream msg;
    msg << "solitons overlap at t=" << t << "; need |t| >= " << report.required_abs_time;
    throw Error(ErrorCode::not_asymptotic, msg.str());
  }

  const Grid& grid = state.grid;
  const double sign = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double g = sp.gamma(k);
    const double c = centers[k];
    const double half = 6.0 / g;
    SolitonWindowError e;
    e.k = k;
    e.predicted_center = c;

    std::size_t lo = grid.nearest_index(c - half), hi = grid.nearest_index(c + half);
    if (hi <= lo + 2) throw Error(ErrorCode::range, "soliton window lies outside the grid");

    std::size_t imin = lo;
    double dot = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
      if (state.U[i] < state.U[imin]) imin = i;
      const double sech = 1.0 / std::cosh(g * (grid.x(i) - c));
      dot += state.psis[k][i] * sech;
    }
    const double psi_sign = dot < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = lo; i <= hi; ++i) {
      const double a = g * (grid.x(i) - c);
      const double sech = 1.0 / std::cosh(a);
      const double th = std::tanh(a);
      e.potential_error = std::max(e.potential_error, std::fabs(state.U[i] + 2.0 * g * g * sech * sech));
      e.psi_error = std::max(e.psi_error, std::fabs(state.psis[k][i] - psi_sign * std::sqrt(g / 2.0) * sech));
      e.xi_error = std::max(e.xi_error, std::fabs(state.xi[i] * state.xi[i] - th * th));
    }

    double xc = grid.x(imin);
    if (imin > lo && imin < hi) {
      const double fm = state.U[imin - 1], f0 = state.U[imin], fp = state.U[imin + 1];
      const double curv = fm - 2.0 * f0 + fp;
      if (curv > 0.0) xc += 0.5 * grid.spacing() * (fm - fp) / curv;
    }
    e.measured_center = xc;
    e.center_error = std::fabs(xc - c);
    e.measured_shift = sign * g * (xc - tracks[k].speed * t);
    report.solitons.push_back(e);
  }
  return report;
}

}  // namespace solitons
