#include "solitons/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "solitons/error.hpp"

namespace solitons {

Spectrum ScenarioConfig::spectrum() const {
  if (norm_constants) return Spectrum::with_constants(gammas, *norm_constants);
  return Spectrum::symmetric(gammas);
}

EvolutionSpec ScenarioConfig::evolution() const {
  switch (kind) {
    case EvolutionKind::lax: return EvolutionSpec::lax(m, times);
    case EvolutionKind::dual: return EvolutionSpec::dual(m, times);
    case EvolutionKind::custom: return EvolutionSpec::custom(alphas, times);
  }
  return EvolutionSpec::lax(m, times);
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw Error(ErrorCode::config, "format must be csv or json, got '" + name + "'");
}

EvolutionKind parse_kind(const std::string& name) {
  if (name == "lax") return EvolutionKind::lax;
  if (name == "dual") return EvolutionKind::dual;
  if (name == "custom") return EvolutionKind::custom;
  throw Error(ErrorCode::config, "kind must be lax, dual or custom, got '" + name + "'");
}

HierarchyFamily parse_family(const std::string& name) {
  if (name == "lax") return HierarchyFamily::lax;
  if (name == "dual") return HierarchyFamily::dual;
  if (name == "weighted") return HierarchyFamily::weighted;
  throw Error(ErrorCode::config, "family must be lax, dual or weighted, got '" + name + "'");
}

HierarchyMethod parse_method(const std::string& name) {
  if (name == "spectral") return HierarchyMethod::spectral;
  if (name == "recursive") return HierarchyMethod::recursive;
  if (name == "closed_form") return HierarchyMethod::closed_form;
  throw Error(ErrorCode::config, "method must be spectral, recursive or closed_form, got '" + name + "'");
}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what) const {
    std::ostringstream msg;
    msg << source_;
    if (node.IsDefined() && node.Mark().line >= 0) msg << ":" << node.Mark().line + 1;
    msg << ": field '" << field << "': " << what;
    throw Error(ErrorCode::config, msg.str());
  }

  void only_keys(const YAML::Node& node, const std::string& section, const std::set<std::string>& allowed) const {
    if (!node.IsMap()) fail(node, section, "expected a mapping");
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, section.empty() ? key : section + "." + key, "unknown key");
    }
  }

  double number(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a number");
    try {
      return node.as<double>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected a number, got '" + node.Scalar() + "'");
    }
  }

  long integer(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected an integer");
    try {
      return node.as<long>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected an integer, got '" + node.Scalar() + "'");
    }
  }

  std::string text(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a string");
    return node.Scalar();
  }

  std::vector<double> numbers(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      out.push_back(number(node[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  template <class F>
  auto parsed(const YAML::Node& node, const std::string& field, F&& parse) const {
    const std::string s = text(node, field);
    try {
      return parse(s);
    } catch (const Error& e) {
      fail(node, field, e.what());
    }
  }

 private:
  std::string source_;
};

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream msg;
    msg << source << ":" << e.mark.line + 1 << ": " << e.msg;
    throw Error(ErrorCode::config, msg.str());
  }
  const Reader r(source);
  ScenarioConfig c;
  if (root.IsNull()) return c;
  r.only_keys(root, "", {"spectrum", "evolution", "grid", "hierarchy", "output", "verify"});

  if (const auto s = root["spectrum"]) {
    r.only_keys(s, "spectrum", {"gammas", "norm_constants"});
    if (s["gammas"]) c.gammas = r.numbers(s["gammas"], "spectrum.gammas");
    if (s["norm_constants"]) c.norm_constants = r.numbers(s["norm_constants"], "spectrum.norm_constants");
  }
  if (const auto e = root["evolution"]) {
    r.only_keys(e, "evolution", {"kind", "m", "alphas", "times"});
    if (e["kind"]) c.kind = r.parsed(e["kind"], "evolution.kind", parse_kind);
    if (e["m"]) c.m = static_cast<int>(r.integer(e["m"], "evolution.m"));
    if (e["alphas"]) c.alphas = r.numbers(e["alphas"], "evolution.alphas");
    if (e["times"]) c.times = r.numbers(e["times"], "evolution.times");
  }
  if (const auto g = root["grid"]) {
    r.only_keys(g, "grid", {"x_min", "x_max", "n_points"});
    for (const char* key : {"x_min", "x_max", "n_points"}) {
      if (!g[key]) r.fail(g, std::string("grid.") + key, "missing (grid needs x_min, x_max and n_points)");
    }
    GridOverride o;
    o.x_min = r.number(g["x_min"], "grid.x_min");
    o.x_max = r.number(g["x_max"], "grid.x_max");
    const long n = r.integer(g["n_points"], "grid.n_points");
    if (n < 5 || n % 2 == 0) r.fail(g["n_points"], "grid.n_points", "must be odd and at least 5");
    if (!(o.x_max > o.x_min)) r.fail(g["x_max"], "grid.x_max", "must exceed x_min");
    o.n_points = static_cast<std::size_t>(n);
    c.grid = o;
  }
  if (const auto h = root["hierarchy"]) {
    r.only_keys(h, "hierarchy", {"family", "method", "max_index", "betas"});
    if (h["family"]) c.family = r.parsed(h["family"], "hierarchy.family", parse_family);
    if (h["method"]) c.method = r.parsed(h["method"], "hierarchy.method", parse_method);
    if (h["max_index"]) c.max_index = static_cast<int>(r.integer(h["max_index"], "hierarchy.max_index"));
    if (h["betas"]) c.betas = r.numbers(h["betas"], "hierarchy.betas");
  }
  if (const auto o = root["output"]) {
    r.only_keys(o, "output", {"dir", "format"});
    if (o["dir"]) c.out_dir = r.text(o["dir"], "output.dir");
    if (o["format"]) c.format = r.parsed(o["format"], "output.format", parse_format);
  }
  if (const auto v = root["verify"]) {
    r.only_keys(v, "verify", {"tolerance_scale", "tolerances"});
    if (v["tolerance_scale"]) c.tolerance_scale = r.number(v["tolerance_scale"], "verify.tolerance_scale");
    if (const auto t = v["tolerances"]) {
      if (!t.IsMap()) r.fail(t, "verify.tolerances", "expected a mapping of check name to tolerance");
      for (const auto& kv : t) {
        const std::string name = kv.first.as<std::string>();
        c.tolerances[name] = r.number(kv.second, "verify.tolerances." + name);
      }
    }
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config, "cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

void validate_config(const ScenarioConfig& c) {
  auto fail = [](const std::string& field, const std::string& what) {
    throw Error(ErrorCode::config, "field '" + field + "': " + what);
  };
  try {
    const Spectrum sp = c.spectrum();
    (void)alphas_for(c.evolution(), sp);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    const std::string field = e.code() == ErrorCode::spec ? "evolution" : "spectrum";
    fail(field, e.what());
  }
  for (double t : c.times) {
    if (!std::isfinite(t)) fail("evolution.times", "times must be finite");
  }
  if (c.max_index < 0 || c.max_index > kMaxHierarchyIndex) {
    fail("hierarchy.max_index", "must lie in 0.." + std::to_string(kMaxHierarchyIndex));
  }
  if (c.family == HierarchyFamily::weighted && c.betas.size() != c.gammas.size()) {
    fail("hierarchy.betas", "weighted family needs one beta per gamma");
  }
  if (!(c.tolerance_scale > 0.0) || !std::isfinite(c.tolerance_scale)) {
    fail("verify.tolerance_scale", "must be a positive number");
  }
  for (const auto& [name, tol] : c.tolerances) {
    if (!(tol > 0.0) || !std::isfinite(tol)) fail("verify.tolerances." + name, "must be a positive number");
  }
}

}  // namespace solitons
