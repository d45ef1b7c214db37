#include "solitons/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "solitons/asymptotics.hpp"
#include "solitons/config.hpp"
#include "solitons/error.hpp"
#include "solitons/hierarchy.hpp"
#include "solitons/io.hpp"
#include "solitons/verify.hpp"

namespace solitons {

namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::string times;
  std::string grid;
  std::string gammas;
  std::string alphas;
  std::string kind;
  std::string family;
  std::string method;
  std::optional<double> tolerance_scale;
  std::optional<int> m;
  std::optional<int> max_index;
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used == std::string::npos || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw Error(ErrorCode::config, "flag " + flag + ": bad number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

ScenarioConfig settle(const Flags& f) {
  ScenarioConfig c = f.config_path.empty() ? ScenarioConfig{} : load_config(f.config_path);
  if (!f.gammas.empty()) c.gammas = parse_list(f.gammas, "--gammas");
  if (!f.kind.empty()) c.kind = parse_kind(f.kind);
  if (f.m) c.m = *f.m;
  if (!f.alphas.empty()) {
    c.alphas = parse_list(f.alphas, "--alphas");
    if (f.kind.empty()) c.kind = EvolutionKind::custom;
  }
  if (!f.times.empty()) c.times = parse_list(f.times, "--times");
  if (!f.grid.empty()) {
    const std::vector<double> g = parse_list(f.grid, "--grid");
    if (g.size() != 2 || !(g[0] > 0.0) || g[1] < 5 || std::fmod(g[1], 2.0) != 1.0) {
      throw Error(ErrorCode::config, "flag --grid: expected L,n with L > 0 and odd n >= 5");
    }
    c.grid = GridOverride{-g[0], g[0], static_cast<std::size_t>(g[1])};
  }
  if (!f.family.empty()) c.family = parse_family(f.family);
  if (!f.method.empty()) c.method = parse_method(f.method);
  if (f.max_index) c.max_index = *f.max_index;
  if (!f.format.empty()) c.format = parse_format(f.format);
  if (f.tolerance_scale) c.tolerance_scale = *f.tolerance_scale;
  if (!f.out_dir.empty()) c.out_dir = f.out_dir;
  if (c.out_dir.empty()) {
    const char* env = std::getenv("SOLITONS_OUT_DIR");
    c.out_dir = env && *env ? env : ".";
  }
  if (c.gammas.empty()) throw Error(ErrorCode::config, "field 'spectrum.gammas': at least one gamma is required");
  validate_config(c);
  return c;
}

Grid scenario_grid(const ScenarioConfig& c, const Spectrum& sp, std::span<const double> alphas, double tmax) {
  if (c.grid) return Grid(c.grid->x_min, c.grid->x_max, c.grid->n_points);
  return default_grid(sp, alphas, tmax);
}

double max_abs_time(const std::vector<double>& times) {
  double m = 0.0;
  for (double t : times) m = std::max(m, std::fabs(t));
  return m;
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

void write_table(const ScenarioConfig& c, const std::string& stem, const Frame& table, std::ostream& out) {
  const std::string text = c.format == OutputFormat::csv ? to_csv(table) : to_json(table);
  write_text(prepare_dir(c.out_dir) / (stem + extension(c.format)), text);
  out << text;
}

int cmd_construct(const ScenarioConfig& c, std::ostream& out) {
  const Spectrum sp = c.spectrum();
  const std::vector<double> alphas = alphas_for(c.evolution(), sp);
  const SolitonState s = build_state(sp, alphas, 0.0, scenario_grid(c, sp, alphas, 0.0));
  const fs::path path = prepare_dir(c.out_dir) / (std::string("construct") + extension(c.format));
  write_frame(path, frame_from_state(s), c.format);
  out << "wrote " << path.string() << " (" << s.grid.size() << " points, N=" << s.size() << ")\n";
  return kExitOk;
}

int cmd_evolve(const ScenarioConfig& c, std::ostream& out) {
  const Spectrum sp = c.spectrum();
  EvolutionSpec spec = c.evolution();
  if (spec.times.empty()) spec.times = {0.0};
  const std::vector<double> alphas = alphas_for(spec, sp);
  const Grid grid = scenario_grid(c, sp, alphas, max_abs_time(spec.times));
  const EvolutionFrames frames = evolve(sp, spec, grid);
  const fs::path dir = prepare_dir(c.out_dir);

  nlohmann::json manifest;
  manifest["kind"] = to_string(spec.kind);
  manifest["m"] = spec.m;
  manifest["gammas"] = std::vector<double>(sp.gammas().begin(), sp.gammas().end());
  manifest["alphas"] = alphas;
  manifest["grid"] = {{"x_min", grid.x_min()}, {"x_max", grid.x_max()}, {"n_points", grid.size()}};
  manifest["format"] = c.format == OutputFormat::csv ? "csv" : "json";
  manifest["frames"] = nlohmann::json::array();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::ostringstream name;
    name << "frame_" << std::setw(4) << std::setfill('0') << i << extension(c.format);
    write_frame(dir / name.str(), frame_from_state(frames.states[i]), c.format);
    manifest["frames"].push_back({{"t", frames.states[i].time}, {"file", name.str()}});
  }
  write_text(dir / "manifest.json", manifest.dump(1) + "\n");
  out << "wrote " << frames.size() << " frames and manifest.json to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_sumrules(const ScenarioConfig& c, std::ostream& out) {
  const Spectrum sp = c.spectrum();
  EvolutionSpec spec = c.evolution();
  const double t = spec.times.empty() ? 0.0 : spec.times.front();
  const std::vector<double> alphas = alphas_for(spec, sp);
  const SolitonState s = build_state(sp, alphas, t, scenario_grid(c, sp, alphas, std::fabs(t)));
  Frame table;
  table.columns = {{"j", {}}, {"integral", {}}, {"analytic", {}}, {"rel_error", {}}};
  for (int j = 0; j <= c.max_index; ++j) {
    const SumruleReport r = sumrule(s, j);
    table.columns[0].values.push_back(j);
    table.columns[1].values.push_back(r.integral);
    table.columns[2].values.push_back(r.analytic);
    table.columns[3].values.push_back(r.rel_error);
  }
  write_table(c, "sumrules", table, out);
  return kExitOk;
}

int cmd_hierarchy(const ScenarioConfig& c, std::ostream& out) {
  const Spectrum sp = c.spectrum();
  EvolutionSpec spec = c.evolution();
  const double t = spec.times.empty() ? 0.0 : spec.times.front();
  const std::vector<double> alphas = alphas_for(spec, sp);
  const SolitonState s = build_state(sp, alphas, t, scenario_grid(c, sp, alphas, std::fabs(t)));
  Frame table;
  table.meta = FrameMeta{std::vector<double>(sp.gammas().begin(), sp.gammas().end()), alphas, t};
  table.columns.push_back({"x", s.grid.coordinates()});
  for (int j = 0; j <= c.max_index; ++j) {
    HierarchyFunction h = [&] {
      switch (c.family) {
        case HierarchyFamily::lax: return lax_L(s, j, c.method);
        case HierarchyFamily::dual: return dual_L(s, j);
        case HierarchyFamily::weighted: return weighted_Q(s, c.betas, j);
      }
      return lax_L(s, j);
    }();
    const char* prefix = c.family == HierarchyFamily::lax ? "L_" : (c.family == HierarchyFamily::dual ? "Lbar_" : "Q_");
    table.columns.push_back({prefix + std::to_string(j), {h.values.values().begin(), h.values.values().end()}});
  }
  const fs::path path = prepare_dir(c.out_dir) / (std::string("hierarchy") + extension(c.format));
  write_frame(path, table, c.format);
  out << "wrote " << path.string() << "\n";
  return kExitOk;
}

int cmd_asymptotics(const ScenarioConfig& c, std::ostream& out) {
  const Spectrum sp = c.spectrum();
  EvolutionSpec spec = c.evolution();
  if (spec.times.empty()) spec.times = {0.0};
  const std::vector<double> alphas = alphas_for(spec, sp);
  const Grid grid = scenario_grid(c, sp, alphas, max_abs_time(spec.times));
  const std::vector<SolitonTrack> tracks = soliton_tracks(sp, alphas);

  Frame table;
  for (const char* name : {"t", "k", "gamma", "speed", "delta", "predicted_center", "measured_center", "measured_shift",
                           "potential_error", "psi_error", "xi_error", "asymptotic"}) {
    table.columns.push_back({name, {}});
  }
  for (double t : spec.times) {
    const SolitonState s = build_state(sp, alphas, t, grid);
    const DecompositionReport r = asymptotic_decomposition_error(s);
    for (const SolitonWindowError& w : r.solitons) {
      const double row[] = {t,
                            static_cast<double>(w.k + 1),
                            sp.gamma(w.k),
                            tracks[w.k].speed,
                            tracks[w.k].delta,
                            w.predicted_center,
                            w.measured_center,
                            w.measured_shift,
                            w.potential_error,
                            w.psi_error,
                            w.xi_error,
                            r.asymptotic ? 1.0 : 0.0};
      for (std::size_t i = 0; i < table.columns.size(); ++i) table.columns[i].values.push_back(row[i]);
    }
  }
  write_table(c, "asymptotics", table, out);
  return kExitOk;
}

int cmd_verify(const ScenarioConfig& c, std::ostream& out) {
  VerifyOptions o;
  o.tolerance_scale = c.tolerance_scale;
  o.tolerances = c.tolerances;
  o.max_index = c.max_index;
  if (c.grid) o.grid = Grid(c.grid->x_min, c.grid->x_max, c.grid->n_points);
  const VerificationReport report = verify_scenario(c.spectrum(), c.evolution(), o);
  write_text(prepare_dir(c.out_dir) / "verify.json", report.to_json());
  out << (c.format == OutputFormat::json ? report.to_json() : report.to_text());
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::config:
    case ErrorCode::spec:
    case ErrorCode::invalid_spectrum:
    case ErrorCode::degenerate_spectrum:
    case ErrorCode::invalid_grid:
    case ErrorCode::ordering:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"N-soliton reflectionless potentials: construction, hierarchies, evolution, verification", "solitons"};
  app.require_subcommand(1);
  Flags f;
  auto add_common = [&f](CLI::App* sub) {
    sub->add_option("--config", f.config_path, "scenario YAML file");
    sub->add_option("--out", f.out_dir, "output directory (default: $SOLITONS_OUT_DIR or .)");
    sub->add_option("--format", f.format, "csv or json");
    sub->add_option("--tolerance-scale", f.tolerance_scale, "multiply every verify tolerance");
    sub->add_option("--times", f.times, "comma-separated sample times");
    sub->add_option("--grid", f.grid, "L,n for the grid [-L, L] with n points");
    sub->add_option("--gammas", f.gammas, "comma-separated decay rates");
    sub->add_option("--alphas", f.alphas, "comma-separated custom rates");
    sub->add_option("--kind", f.kind, "lax, dual or custom");
    sub->add_option("--m", f.m, "hierarchy member");
    sub->add_option("--max-index", f.max_index, "largest hierarchy index J");
    sub->add_option("--family", f.family, "lax, dual or weighted (hierarchy)");
    sub->add_option("--method", f.method, "spectral, recursive or closed_form (hierarchy)");
  };
  std::map<std::string, int (*)(const ScenarioConfig&, std::ostream&)> commands = {
      {"construct", cmd_construct}, {"evolve", cmd_evolve},           {"sumrules", cmd_sumrules},
      {"hierarchy", cmd_hierarchy}, {"asymptotics", cmd_asymptotics}, {"verify", cmd_verify},
  };
  const std::map<std::string, std::string> help = {
      {"construct", "write x, U, psi_k, W, xi at t=0"},
      {"evolve", "one frame file per time plus manifest.json"},
      {"sumrules", "integrals of L_j against -2 sum (2 gamma)^(2j+1)"},
      {"hierarchy", "L_j, Lbar_m or Q_j columns"},
      {"asymptotics", "speeds, phase shifts and decomposition errors"},
      {"verify", "run the full check suite; exit 1 on failure"},
  };
  for (const auto& [name, fn] : commands) add_common(app.add_subcommand(name, help.at(name)));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "solitons: " << e.what() << "\n";
    return kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const ScenarioConfig config = settle(f);
    return commands.at(name)(config, out);
  } catch (const Error& e) {
    err << "solitons " << name << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "solitons " << name << ": " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace solitons
