#include "solitons/spectrum.hpp"

#include <cmath>
#include <sstream>

#include "solitons/error.hpp"

namespace solitons {

void validate_gammas(std::span<const double> gammas) {
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (!std::isfinite(gammas[k]) || !(gammas[k] > 0.0)) {
      std::ostringstream msg;
      msg << "gamma[" << k << "] = " << gammas[k] << " must be finite and positive";
      throw Error(ErrorCode::invalid_spectrum, msg.str());
    }
  }
  for (std::size_t k = 1; k < gammas.size(); ++k) {
    if (gammas[k] == gammas[k - 1]) {
      std::ostringstream msg;
      msg << "gamma values must be distinct; gamma[" << k - 1 << "] = gamma[" << k << "] = " << gammas[k];
      throw Error(ErrorCode::degenerate_spectrum, msg.str());
    }
    if (gammas[k] < gammas[k - 1]) {
      throw Error(ErrorCode::invalid_spectrum, "gamma values must be strictly increasing");
    }
  }
}

std::vector<double> symmetric_norm_constants(std::span<const double> gammas) {
  validate_gammas(gammas);
  std::vector<double> c(gammas.size());
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    double c2 = 2.0 * gammas[k];
    for (std::size_t l = 0; l < gammas.size(); ++l) {
      if (l == k) continue;
      c2 *= (gammas[l] + gammas[k]) / std::fabs(gammas[l] - gammas[k]);
    }
    c[k] = std::sqrt(c2);
  }
  return c;
}

Spectrum Spectrum::symmetric(std::vector<double> gammas) {
  auto c = symmetric_norm_constants(gammas);
  return Spectrum(std::move(gammas), std::move(c));
}

Spectrum Spectrum::with_constants(std::vector<double> gammas, std::vector<double> norm_constants) {
  validate_gammas(gammas);
  if (norm_constants.size() != gammas.size()) {
    throw Error(ErrorCode::invalid_spectrum, "one normalisation constant per gamma is required");
  }
  for (double c : norm_constants) {
    if (!std::isfinite(c) || !(c > 0.0)) {
      throw Error(ErrorCode::invalid_spectrum, "normalisation constants must be finite and positive");
    }
  }
  return Spectrum(std::move(gammas), std::move(norm_constants));
}

}  // namespace solitons
