#pragma once

// Column files for plotting. CSV: one header row, x first, numbers as %.17g.
// JSON: {"meta": {...}, "columns": [{"name", "values"}, ...]}. Both read
// back to the exact doubles that were written.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solitons/config.hpp"
#include "solitons/grid.hpp"
#include "solitons/state.hpp"

namespace solitons {

struct Column {
  std::string name;
  std::vector<double> values;
};

struct FrameMeta {
  std::vector<double> gammas;
  std::vector<double> alphas;
  double time = 0.0;
};

struct Frame {
  std::optional<FrameMeta> meta;  // JSON only
  std::vector<Column> columns;    // columns[0] is x when written by frame_from_state

  const Column& column(const std::string& name) const;
  // Grid rebuilt from the x column.
  Grid grid() const;
  GridFunction function(const std::string& name) const;
};

// x, U, psi_1..psi_N, W, xi
Frame frame_from_state(const SolitonState& state);

std::string format_number(double v);  // %.17g

std::string to_csv(const Frame& frame);
std::string to_json(const Frame& frame);
Frame parse_csv(const std::string& text);
Frame parse_json(const std::string& text);

void write_frame(const std::filesystem::path& path, const Frame& frame, OutputFormat format);
Frame read_frame(const std::filesystem::path& path);  // format from extension

const char* extension(OutputFormat format);  // ".csv" / ".json"

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace solitons
