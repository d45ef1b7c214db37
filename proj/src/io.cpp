#include "solitons/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "solitons/error.hpp"

namespace solitons {

using nlohmann::json;

const Column& Frame::column(const std::string& name) const {
  for (const Column& c : columns) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::io, "frame has no column '" + name + "'");
}

Grid Frame::grid() const {
  const Column& x = column("x");
  if (x.values.size() < 2) throw Error(ErrorCode::io, "x column too short");
  return Grid(x.values.front(), x.values.back(), x.values.size());
}

GridFunction Frame::function(const std::string& name) const { return GridFunction(grid(), column(name).values); }

Frame frame_from_state(const SolitonState& state) {
  Frame f;
  const auto g = state.spectrum.gammas();
  f.meta = FrameMeta{std::vector<double>(g.begin(), g.end()), state.alphas, state.time};
  f.columns.push_back({"x", state.grid.coordinates()});
  auto add = [&](std::string name, const GridFunction& g) {
    f.columns.push_back({std::move(name), std::vector<double>(g.values().begin(), g.values().end())});
  };
  add("U", state.U);
  for (std::size_t k = 0; k < state.size(); ++k) add("psi_" + std::to_string(k + 1), state.psis[k]);
  add("W", state.W);
  add("xi", state.xi);
  return f;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void check_rectangular(const Frame& frame) {
  if (frame.columns.empty()) throw Error(ErrorCode::io, "frame has no columns");
  for (const Column& c : frame.columns) {
    if (c.values.size() != frame.columns.front().values.size()) {
      throw Error(ErrorCode::io, "column '" + c.name + "' has a different length");
    }
  }
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::io, "line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string to_csv(const Frame& frame) {
  check_rectangular(frame);
  std::string out;
  for (std::size_t c = 0; c < frame.columns.size(); ++c) {
    if (c) out += ',';
    out += frame.columns[c].name;
  }
  out += '\n';
  const std::size_t rows = frame.columns.front().values.size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < frame.columns.size(); ++c) {
      if (c) out += ',';
      out += format_number(frame.columns[c].values[i]);
    }
    out += '\n';
  }
  return out;
}

Frame parse_csv(const std::string& text) {
  Frame f;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::io, "empty CSV");
  for (auto name : split(line)) f.columns.push_back({std::string(name), {}});
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != f.columns.size()) {
      throw Error(ErrorCode::io, "line " + std::to_string(lineno) + ": expected " + std::to_string(f.columns.size()) +
                                     " cells, found " + std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) f.columns[c].values.push_back(parse_double(cells[c], lineno));
  }
  return f;
}

std::string to_json(const Frame& frame) {
  check_rectangular(frame);
  json j;
  if (frame.meta) {
    const Column* x = nullptr;
    for (const Column& c : frame.columns) {
      if (c.name == "x") x = &c;
    }
    j["meta"] = {{"gammas", frame.meta->gammas}, {"alphas", frame.meta->alphas}, {"t", frame.meta->time}};
    if (x && !x->values.empty()) {
      j["meta"]["grid"] = {{"x_min", x->values.front()}, {"x_max", x->values.back()}, {"n_points", x->values.size()}};
    }
  }
  j["columns"] = json::array();
  for (const Column& c : frame.columns) j["columns"].push_back({{"name", c.name}, {"values", c.values}});
  return j.dump(1) + "\n";
}

Frame parse_json(const std::string& text) {
  Frame f;
  try {
    const json j = json::parse(text);
    if (j.contains("meta")) {
      const json& m = j.at("meta");
      f.meta = FrameMeta{m.at("gammas").get<std::vector<double>>(), m.at("alphas").get<std::vector<double>>(),
                         m.at("t").get<double>()};
    }
    for (const json& c : j.at("columns")) {
      f.columns.push_back({c.at("name").get<std::string>(), c.at("values").get<std::vector<double>>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io, std::string("bad frame JSON: ") + e.what());
  }
  return f;
}

const char* extension(OutputFormat format) { return format == OutputFormat::csv ? ".csv" : ".json"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_frame(const std::filesystem::path& path, const Frame& frame, OutputFormat format) {
  write_text(path, format == OutputFormat::csv ? to_csv(frame) : to_json(frame));
}

Frame read_frame(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  return path.extension() == ".json" ? parse_json(text) : parse_csv(text);
}

}  // namespace solitons
