#include "solitons/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "solitons/error.hpp"
#include "solitons/hierarchy.hpp"
#include "solitons/identities.hpp"
#include "solitons/kernels.hpp"

namespace solitons {

const char* to_string(EvolutionKind kind) {
  switch (kind) {
    case EvolutionKind::lax: return "lax";
    case EvolutionKind::dual: return "dual";
    case EvolutionKind::custom: return "custom";
  }
  return "?";
}

EvolutionSpec EvolutionSpec::lax(int m, std::vector<double> times) {
  return {EvolutionKind::lax, m, {}, std::move(times)};
}

EvolutionSpec EvolutionSpec::dual(int m, std::vector<double> times) {
  return {EvolutionKind::dual, m, {}, std::move(times)};
}

EvolutionSpec EvolutionSpec::custom(std::vector<double> alphas, std::vector<double> times) {
  return {EvolutionKind::custom, 0, std::move(alphas), std::move(times)};
}

std::vector<double> alphas_for(const EvolutionSpec& spec, const Spectrum& spectrum) {
  if (spec.kind != EvolutionKind::custom && (spec.m < 0 || spec.m > kMaxHierarchyIndex)) {
    std::ostringstream msg;
    msg << "hierarchy index m=" << spec.m << " outside 0.." << kMaxHierarchyIndex;
    throw Error(ErrorCode::spec, msg.str());
  }
  std::vector<double> alphas(spectrum.size());
  switch (spec.kind) {
    case EvolutionKind::lax:
      for (std::size_t k = 0; k < alphas.size(); ++k) {
        alphas[k] = std::pow(4.0, spec.m) * std::pow(spectrum.gamma(k), 2 * spec.m + 1);
      }
      break;
    case EvolutionKind::dual:
      for (std::size_t k = 0; k < alphas.size(); ++k) {
        alphas[k] = std::pow(4.0, -spec.m) * std::pow(spectrum.gamma(k), 1 - 2 * spec.m);
      }
      break;
    case EvolutionKind::custom:
      if (spec.alphas.size() != spectrum.size()) {
        std::ostringstream msg;
        msg << "custom evolution needs " << spectrum.size() << " rates, got " << spec.alphas.size();
        throw Error(ErrorCode::spec, msg.str());
      }
      for (double a : spec.alphas) {
        if (!std::isfinite(a)) throw Error(ErrorCode::spec, "custom rates must be finite");
      }
      alphas = spec.alphas;
      break;
  }
  return alphas;
}

double default_time_step(std::span<const double> alphas) {
  double amax = 0.0;
  for (double a : alphas) amax = std::max(amax, std::fabs(a));
  return 1e-3 * std::min(1.0, amax > 0.0 ? 1.0 / amax : 1.0);
}

std::vector<double> stencil_times(double t0, double dt, int half_width) {
  std::vector<double> t;
  for (int s = -half_width; s <= half_width; ++s) t.push_back(t0 + s * dt);
  return t;
}

EvolutionFrames evolve(const Spectrum& spectrum, const EvolutionSpec& spec, const Grid& grid) {
  if (spec.times.empty()) throw Error(ErrorCode::spec, "evolution needs at least one time");
  const std::vector<double> alphas = alphas_for(spec, spectrum);
  EvolutionFrames frames{spec, {}};
  frames.states.reserve(spec.times.size());
  for (double t : spec.times) {
    try {
      frames.states.push_back(build_state(spectrum, alphas, t, grid));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << e.what() << " (t=" << t << ")";
      throw Error(e.code(), msg.str());
    }
  }
  return frames;
}

EvolutionFrames evolve(const Spectrum& spectrum, const EvolutionSpec& spec) {
  double tmax = 0.0;
  for (double t : spec.times) tmax = std::max(tmax, std::fabs(t));
  return evolve(spectrum, spec, default_grid(spectrum, alphas_for(spec, spectrum), tmax));
}

int time_stencil_half_width(const EvolutionFrames& frames) {
  const std::size_t n = frames.size();
  if (n < 3) throw Error(ErrorCode::spec, "time differencing needs at least 3 frames");
  const double dt = frames.spec.times[1] - frames.spec.times[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double step = frames.spec.times[i] - frames.spec.times[i - 1];
    if (!(dt > 0.0) || std::fabs(step - dt) > 1e-9 * std::fabs(dt)) {
      throw Error(ErrorCode::spec, "time differencing needs increasing, equally spaced times");
    }
  }
  return static_cast<int>(std::min<std::size_t>(3, (n - 1) / 2));
}

GridFunction time_derivative(const EvolutionFrames& frames, std::size_t i, const FrameField& field) {
  const int r = time_stencil_half_width(frames);
  if (i < static_cast<std::size_t>(r) || i + r >= frames.size()) {
    throw Error(ErrorCode::range, "frame has no centered time stencil");
  }
  const double dt = frames.spec.times[1] - frames.spec.times[0];
  std::vector<double> nodes;
  for (int s = -r; s <= r; ++s) nodes.push_back(s * dt);
  const std::vector<double> w = fd_weights(1, nodes, 0.0);

  // differences against the centre frame, so a static field gives exactly 0
  GridFunction out(frames.grid());
  const GridFunction& c = field(frames.states[i]);
  for (int s = -r; s <= r; ++s) {
    const double ws = w[static_cast<std::size_t>(s + r)];
    if (s == 0 || ws == 0.0) continue;
    const GridFunction& f = field(frames.states[i + s]);
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += ws * (f[p] - c[p]);
  }
  return out;
}

namespace {

const GridFunction& field_U(const SolitonState& s) { return s.U; }
const GridFunction& field_W(const SolitonState& s) { return s.W; }
const GridFunction& field_xi(const SolitonState& s) { return s.xi; }

template <class F>
double over_interior_frames(const EvolutionFrames& frames, F&& per_frame) {
  const int r = time_stencil_half_width(frames);
  double worst = 0.0;
  for (std::size_t i = r; i + r < frames.size(); ++i) worst = std::max(worst, per_frame(i));
  return worst;
}

GridFunction alpha_density(const SolitonState& state) {
  GridFunction out(state.grid);
  for (std::size_t k = 0; k < state.size(); ++k) {
    kernels::accumulate_weighted_product(out.values(), state.alphas[k], state.psis[k].values(),
                                         state.psis[k].values());
  }
  return out;
}

}  // namespace

double PotentialEvolutionResidual::max() const {
  double m = general;
  if (hierarchy) m = std::max(m, *hierarchy);
  if (kdv) m = std::max(m, *kdv);
  return m;
}

PotentialEvolutionResidual potential_evolution_residual(const EvolutionFrames& frames) {
  const auto decay = Asymptotes::decaying();
  const std::size_t margin = residual_margin(3);
  const EvolutionSpec& spec = frames.spec;
  PotentialEvolutionResidual r;
  if (spec.kind != EvolutionKind::custom) r.hierarchy = 0.0;
  if (spec.kind == EvolutionKind::lax && spec.m == 1) r.kdv = 0.0;

  over_interior_frames(frames, [&](std::size_t i) {
    const SolitonState& s = frames.states[i];
    const GridFunction ut = time_derivative(frames, i, field_U);
    const GridFunction flux = grid_derivative(alpha_density(s), 1, kResidualAccuracy, decay);
    r.general = std::max(r.general, max_abs(ut - 4.0 * flux, margin));
    if (r.hierarchy) {
      const GridFunction l = spec.kind == EvolutionKind::lax ? lax_L(s, spec.m).values : dual_L(s, spec.m).values;
      const GridFunction dl = grid_derivative(l, 1, kResidualAccuracy, decay);
      r.hierarchy = std::max(*r.hierarchy, max_abs(ut + dl, margin));
    }
    if (r.kdv) {
      const GridFunction ux = grid_derivative(s.U, 1, kResidualAccuracy, decay);
      const GridFunction uxxx = grid_derivative(s.U, 3, kResidualAccuracy, decay);
      r.kdv = std::max(*r.kdv, max_abs(ut + uxxx - 6.0 * (s.U * ux), margin));
    }
    return 0.0;
  });
  return r;
}

GridFunction eigenstate_generator_apply(const SolitonState& state, const EvolutionSpec& spec, std::size_t l) {
  if (spec.kind == EvolutionKind::custom) throw Error(ErrorCode::spec, "custom rates have no hierarchy generator");
  if (l >= state.size()) throw Error(ErrorCode::range, "eigenstate index out of range");
  if (spec.m < 0 || spec.m > kMaxHierarchyIndex) throw Error(ErrorCode::spec, "hierarchy index out of range");
  const GridFunction& psi = state.psis[l];
  const GridFunction& dpsi = state.dpsis[l];
  const double g2 = 4.0 * state.spectrum.gamma(l) * state.spectrum.gamma(l);
  const int m = spec.m;

  if (spec.kind == EvolutionKind::lax) {
    GridFunction out = -std::pow(g2, m) * dpsi;
    for (int j = 1; j <= m; ++j) {
      const GridFunction lf = lax_L(state, m - j).values;
      const GridFunction dl = lax_L_derivative(state, m - j);
      out += std::pow(g2, j - 1) * (2.0 * (lf * dpsi) - dl * psi);
    }
    return out;
  }
  // dual
  GridFunction out = -std::pow(g2, -m) * dpsi;
  for (int j = 1; j <= m; ++j) {
    const GridFunction lf = dual_L(state, m - j + 1).values;
    const GridFunction dl = dual_L_derivative(state, m - j + 1);
    out -= std::pow(g2, -j) * (2.0 * (lf * dpsi) - dl * psi);
  }
  return out;
}

double generator_residual(const EvolutionFrames& frames) {
  const std::size_t margin = residual_margin(1);
  const std::size_t n = frames.states.front().size();
  return over_interior_frames(frames, [&](std::size_t i) {
    double worst = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      const GridFunction gen = eigenstate_generator_apply(frames.states[i], frames.spec, l);
      const GridFunction fd =
          time_derivative(frames, i, [l](const SolitonState& s) -> const GridFunction& { return s.psis[l]; });
      worst = std::max(worst, max_abs(gen - fd, margin));
    }
    return worst;
  });
}

double superpotential_evolution_residual(const EvolutionFrames& frames) {
  const std::size_t margin = residual_margin(1);
  return over_interior_frames(frames, [&](std::size_t i) {
    const GridFunction wt = time_derivative(frames, i, field_W);
    return max_abs(-4.0 * alpha_density(frames.states[i]) - 2.0 * wt, margin);
  });
}

double xi_evolution_residual(const EvolutionFrames& frames) {
  if (frames.spec.kind != EvolutionKind::dual || frames.spec.m != 1) {
    throw Error(ErrorCode::spec, "the xi equation holds for the dual m=1 flow only");
  }
  const std::size_t margin = residual_margin(2);
  return over_interior_frames(frames, [&](std::size_t i) {
    const SolitonState& s = frames.states[i];
    const Asymptotes xi_ends{s.size() % 2 == 0 ? 1.0 : -1.0, 1.0};
    const GridFunction xt = time_derivative(frames, i, field_xi);
    const GridFunction xt2 = grid_derivative(xt, 2, kResidualAccuracy, Asymptotes::decaying());
    const GridFunction x1 = grid_derivative(s.xi, 1, kResidualAccuracy, xi_ends);
    const GridFunction x2 = grid_derivative(s.xi, 2, kResidualAccuracy, xi_ends);
    return max_abs(s.xi * xt2 - xt * x2 + s.xi * s.xi * s.xi * x1, margin);
  });
}

double normalization_drift(const EvolutionFrames& frames) {
  double worst = 0.0;
  for (const SolitonState& s : frames.states) worst = std::max(worst, normalization_error(s));
  return worst;
}

}  // namespace solitons
