#include "solitons/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "solitons/error.hpp"

namespace solitons {

DiscreteHamiltonian::DiscreteHamiltonian(const GridFunction& potential)
    : DiscreteHamiltonian(potential.values(), potential.grid().spacing()) {}

DiscreteHamiltonian::DiscreteHamiltonian(std::span<const double> potential, double h)
    : spacing(h), off_diagonal(-1.0 / (h * h)) {
  const std::size_t n = potential.size();
  if (n < 3 || !(h > 0.0)) throw Error(ErrorCode::invalid_grid, "Hamiltonian needs at least 3 samples");
  diagonal.resize(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double u = potential[i];
    if (!std::isfinite(u)) throw Error(ErrorCode::domain, "potential is not finite");
    diagonal[i - 1] = 2.0 / (h * h) + u;
  }
}

std::size_t DiscreteHamiltonian::count_below(double e) const {
  const double b2 = off_diagonal * off_diagonal;
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    d = diagonal[i] - e - (i == 0 ? 0.0 : b2 / d);
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

double DiscreteHamiltonian::eigenvalue(std::size_t k) const {
  if (k >= dimension()) throw Error(ErrorCode::range, "eigenvalue index exceeds the matrix size");
  double lo = diagonal.front(), hi = diagonal.front();
  for (double a : diagonal) {
    lo = std::min(lo, a - 2.0 * std::fabs(off_diagonal));
    hi = std::max(hi, a + 2.0 * std::fabs(off_diagonal));
  }
  for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(std::fabs(lo), std::fabs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (count_below(mid) > k) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

EnergySpectrum plain_spectrum(const DiscreteHamiltonian& h, std::size_t count) {
  EnergySpectrum out;
  out.requested = count;
  out.bound_count = h.count_below(0.0);
  const std::size_t m = std::min(count, h.dimension());
  for (std::size_t k = 0; k < m; ++k) out.energies.push_back(h.eigenvalue(k));
  return out;
}

}  // namespace

EnergySpectrum schrodinger_spectrum(const GridFunction& potential, std::size_t count, SpectrumOptions options) {
  const Grid& g = potential.grid();
  if (g.size() < 5) throw Error(ErrorCode::invalid_grid, "eigen oracle needs at least 5 points");
  EnergySpectrum fine = plain_spectrum(DiscreteHamiltonian(potential), count);
  if (!options.richardson) return fine;

  // Every other point of an odd grid spans the same interval at 2h.
  const std::size_t nc = (g.size() + 1) / 2;
  if (nc < 5) throw Error(ErrorCode::invalid_grid, "grid too small to halve for extrapolation");
  std::vector<double> coarse_values(nc);
  for (std::size_t i = 0; i < nc; ++i) coarse_values[i] = potential[2 * i];
  const EnergySpectrum coarse = plain_spectrum(DiscreteHamiltonian(coarse_values, 2.0 * g.spacing()), count);

  const std::size_t m = std::min(fine.energies.size(), coarse.energies.size());
  for (std::size_t k = 0; k < m; ++k) fine.energies[k] = (4.0 * fine.energies[k] - coarse.energies[k]) / 3.0;
  return fine;
}

double ScatteringReport::flux_error() const { return std::fabs(std::norm(R) + std::norm(T) - 1.0); }

ScatteringReport reflection_coefficient(const GridFunction& potential, double k, ScatteringOptions options) {
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorCode::domain, "wavenumber must be positive");
  const Grid& g = potential.grid();
  const std::size_t n = g.size();
  const double h = g.spacing();
  if (k * h > options.max_kh) {
    std::ostringstream msg;
    msg << "k h = " << k * h << " exceeds " << options.max_kh << "; refine the grid";
    throw Error(ErrorCode::domain, msg.str());
  }
  if (std::fabs(potential[0]) > options.edge_tolerance || std::fabs(potential[n - 1]) > options.edge_tolerance) {
    std::ostringstream msg;
    msg << "potential has not decayed at the grid ends (|U| = " << std::max(std::fabs(potential[0]), std::fabs(potential[n - 1]))
        << "); widen the grid";
    throw Error(ErrorCode::domain, msg.str());
  }

  // Discrete wavenumber for which e^{ikx} solves the free Numerov recursion.
  const double q = k * k * h * h;
  const double kd = std::acos((1.0 - 5.0 * q / 12.0) / (1.0 + q / 12.0)) / h;
  const double e = k * k;
  using cplx = std::complex<double>;
  const cplx I(0.0, 1.0);

  auto f = [&](std::size_t i) { return 1.0 - h * h * (potential[i] - e) / 12.0; };
  std::vector<cplx> y(n);
  y[0] = std::exp(-I * kd * g.x(0));
  y[1] = std::exp(-I * kd * g.x(1));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double fi = f(i);
    y[i + 1] = (2.0 * (6.0 - 5.0 * fi) * y[i] - f(i - 1) * y[i - 1]) / f(i + 1);
  }

  // y = a e^{-ikx} + b e^{ikx} on the last two points.
  const double x1 = g.x(n - 2), x2 = g.x(n - 1);
  const cplx m11 = std::exp(-I * kd * x1), m12 = std::exp(I * kd * x1);
  const cplx m21 = std::exp(-I * kd * x2), m22 = std::exp(I * kd * x2);
  const cplx det = m11 * m22 - m12 * m21;
  const cplx a = (y[n - 2] * m22 - m12 * y[n - 1]) / det;
  const cplx b = (m11 * y[n - 1] - m21 * y[n - 2]) / det;
  if (!std::isfinite(std::abs(a)) || std::abs(a) == 0.0) throw Error(ErrorCode::numeric, "scattering integration failed");
  return {k, b / a, 1.0 / a};
}

}  // namespace solitons
