#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "solitons/state.hpp"

namespace testing {

// Random spectra with well separated decay rates, reproducible per seed.
struct SpectrumGen {
  std::mt19937_64 rng;
  explicit SpectrumGen(std::uint64_t seed) : rng(seed) {}

  std::vector<double> gammas(std::size_t max_n = 4, double lo = 0.4, double hi = 2.5, double gap = 0.3) {
    std::uniform_int_distribution<std::size_t> count(1, max_n);
    std::uniform_real_distribution<double> u(lo, hi);
    const std::size_t n = count(rng);
    std::vector<double> g;
    while (g.size() < n) {
      const double c = u(rng);
      if (std::all_of(g.begin(), g.end(), [&](double x) { return std::fabs(x - c) >= gap; })) g.push_back(c);
    }
    std::sort(g.begin(), g.end());
    return g;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  std::vector<double> uniforms(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }
};

inline solitons::SolitonState state_at(const std::vector<double>& gammas, double t = 0.0,
                                       std::vector<double> alphas = {}) {
  const auto sp = solitons::Spectrum::symmetric(gammas);
  if (alphas.empty()) alphas.assign(gammas.size(), 0.0);
  return solitons::build_state(sp, alphas, t, solitons::default_grid(sp, alphas, std::fabs(t)));
}

inline std::string show(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

inline double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace testing
