#pragma once

// Checks that share nothing with the construction: a finite-difference
// Hamiltonian for bound-state energies and a Numerov integrator for
// scattering amplitudes. Only Grid and GridFunction are used here.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "solitons/grid.hpp"

namespace solitons {

// -d2/dx2 + U on the interior points with Dirichlet ends.
struct DiscreteHamiltonian {
  double spacing;
  std::vector<double> diagonal;  // 2/h^2 + U(x_i), i = 1 .. n-2
  double off_diagonal;           // -1/h^2

  explicit DiscreteHamiltonian(const GridFunction& potential);
  // Samples U(x_0 + i h) including both end points.
  DiscreteHamiltonian(std::span<const double> potential, double h);

  std::size_t dimension() const { return diagonal.size(); }
  // Number of eigenvalues strictly below e.
  std::size_t count_below(double e) const;
  // k-th smallest eigenvalue (k from 0) by bisection.
  double eigenvalue(std::size_t k) const;
};

struct SpectrumOptions {
  // Combine h and 2h results as (4 E_h - E_2h) / 3.
  bool richardson = false;
};

struct EnergySpectrum {
  std::vector<double> energies;  // lowest `count`, ascending
  std::size_t bound_count = 0;   // negative eigenvalues found
  std::size_t requested = 0;
};

EnergySpectrum schrodinger_spectrum(const GridFunction& potential, std::size_t count, SpectrumOptions options = {});

struct ScatteringReport {
  double k = 0.0;
  std::complex<double> R;
  std::complex<double> T;

  double flux_error() const;  // | |R|^2 + |T|^2 - 1 |
};

struct ScatteringOptions {
  double edge_tolerance = 1e-12;  // |U| allowed at the grid ends
  double max_kh = 0.1;
};

// Wave incident from the right. The discrete plane wave of the scheme is
// used on both ends so U = 0 scatters nothing.
ScatteringReport reflection_coefficient(const GridFunction& potential, double k, ScatteringOptions options = {});

}  // namespace solitons
