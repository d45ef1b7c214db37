#pragma once

// Scenario files: YAML with sections spectrum, evolution, grid, hierarchy,
// output and verify. Every problem is reported with file, line and field.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solitons/evolution.hpp"
#include "solitons/hierarchy.hpp"
#include "solitons/spectrum.hpp"

namespace solitons {

enum class OutputFormat { csv, json };

struct GridOverride {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n_points = 0;
};

struct ScenarioConfig {
  std::vector<double> gammas;
  std::optional<std::vector<double>> norm_constants;

  EvolutionKind kind = EvolutionKind::lax;
  int m = 1;
  std::vector<double> alphas;
  std::vector<double> times;

  std::optional<GridOverride> grid;

  HierarchyFamily family = HierarchyFamily::lax;
  HierarchyMethod method = HierarchyMethod::spectral;
  int max_index = 2;
  std::vector<double> betas;

  std::string out_dir;
  OutputFormat format = OutputFormat::csv;

  double tolerance_scale = 1.0;
  std::map<std::string, double> tolerances;

  Spectrum spectrum() const;
  EvolutionSpec evolution() const;  // with times as configured
};

ScenarioConfig parse_config(const std::string& text, const std::string& source = "<config>");
ScenarioConfig load_config(const std::filesystem::path& path);

// Checks the settled config against spectrum and evolution rules.
// Throws Error(config, ...) naming the field.
void validate_config(const ScenarioConfig& config);

OutputFormat parse_format(const std::string& name);
EvolutionKind parse_kind(const std::string& name);
HierarchyFamily parse_family(const std::string& name);
HierarchyMethod parse_method(const std::string& name);

}  // namespace solitons
