#pragma once

// Time dependence through the rates alpha_k. Every frame is an exact
// construction at its own time; time derivatives come only from centered
// differences across frames and are used for residuals.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "solitons/state.hpp"

namespace solitons {

enum class EvolutionKind { lax, dual, custom };

const char* to_string(EvolutionKind kind);

struct EvolutionSpec {
  EvolutionKind kind = EvolutionKind::lax;
  int m = 1;
  std::vector<double> alphas;  // custom only
  std::vector<double> times;

  static EvolutionSpec lax(int m, std::vector<double> times = {});
  static EvolutionSpec dual(int m, std::vector<double> times = {});
  static EvolutionSpec custom(std::vector<double> alphas, std::vector<double> times = {});
};

// lax: 4^m gamma^{2m+1}; dual: 4^-m gamma^{1-2m}; custom: as given.
std::vector<double> alphas_for(const EvolutionSpec& spec, const Spectrum& spectrum);

// 1e-3 * min(1, 1 / max |alpha|)
double default_time_step(std::span<const double> alphas);

// 2 * half_width + 1 equally spaced times centred on t0.
std::vector<double> stencil_times(double t0, double dt, int half_width = 3);

struct EvolutionFrames {
  EvolutionSpec spec;
  std::vector<SolitonState> states;

  const Grid& grid() const { return states.front().grid; }
  std::size_t size() const { return states.size(); }
};

EvolutionFrames evolve(const Spectrum& spectrum, const EvolutionSpec& spec, const Grid& grid);
// Uses default_grid for the largest |t| in spec.times.
EvolutionFrames evolve(const Spectrum& spectrum, const EvolutionSpec& spec);

// Half-width of the time stencil used on these frames: min(3, (n-1)/2).
int time_stencil_half_width(const EvolutionFrames& frames);

using FrameField = std::function<const GridFunction&(const SolitonState&)>;

// Centered time derivative of a per-frame field at frame i; requires
// time_stencil_half_width(frames) <= i < size() - half_width.
GridFunction time_derivative(const EvolutionFrames& frames, std::size_t i, const FrameField& field);

struct PotentialEvolutionResidual {
  double general = 0.0;               // |U_t - 4 (sum alpha psi^2)'|
  std::optional<double> hierarchy;    // |U_t + L_m'| (lax) or |U_t + Lbar_m'| (dual)
  std::optional<double> kdv;          // |U_t + U_xxx - 6 U U_x|, lax m = 1

  double max() const;
};

PotentialEvolutionResidual potential_evolution_residual(const EvolutionFrames& frames);

// d psi_l / dt as given by the hierarchy generator for the frames' spec
// (lax or dual). For lax m = 0 this is -psi_l'.
GridFunction eigenstate_generator_apply(const SolitonState& state, const EvolutionSpec& spec, std::size_t l);

// max over interior frames and all l of |generator - FD d psi_l/dt|.
double generator_residual(const EvolutionFrames& frames);

// max |-4 sum alpha psi^2 - 2 W_t| over interior frames.
double superpotential_evolution_residual(const EvolutionFrames& frames);

// xi xi_t'' - xi_t xi'' + xi^3 xi' on interior frames; dual m = 1 only.
double xi_evolution_residual(const EvolutionFrames& frames);

// max over frames of |integral psi_k^2 - 1|
double normalization_drift(const EvolutionFrames& frames);

}  // namespace solitons
