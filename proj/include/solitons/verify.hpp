#pragma once

// The full check suite behind `verify`: identities, hierarchy, sumrules,
// evolution residuals, closed forms, asymptotics and the independent oracles.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solitons/evolution.hpp"
#include "solitons/grid.hpp"
#include "solitons/spectrum.hpp"

namespace solitons {

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool lower_bound = false;  // passes when measured > tolerance (negative controls)
};

struct VerificationReport {
  std::vector<Check> checks;

  bool passed() const;
  std::size_t failures() const;
  std::string to_text() const;
  std::string to_json() const;
};

// Base check name -> default tolerance. Check names in a report carry a
// bracketed suffix, e.g. "sumrule[j=1,t=0]"; overrides use the base name.
const std::map<std::string, double>& default_tolerances();

struct VerifyOptions {
  double tolerance_scale = 1.0;             // applied to upper-bound checks only
  std::map<std::string, double> tolerances;  // overrides by base name
  int max_index = 2;                        // sumrules and recursions up to this j
  std::optional<Grid> grid;                 // otherwise default_grid over all times
};

// spec.times are the sample times (defaults to {0}). Unknown tolerance
// names raise a config error.
VerificationReport verify_scenario(const Spectrum& spectrum, const EvolutionSpec& spec, const VerifyOptions& options);

}  // namespace solitons
