#pragma once

// Deterministic report writers. All floating-point values go through
// fmt_double (17 significant digits, round-trip exact) so identical runs
// produce byte-identical files.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mellin_bv/config.hpp"

namespace mbv {

using Json = nlohmann::ordered_json;

std::string fmt_double(double x);  // %.17g; "inf"/"-inf"/"nan" spelled out

// RFC-4180-style quoting: fields with commas, quotes, or newlines are wrapped
// in double quotes with inner quotes doubled
std::string csv_quote(const std::string& field);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const CsvTable& table);  // \r\n line ends, trailing newline

// two numeric columns, '#'-prefixed comment header, plain \n line ends
std::string render_plot_data(const std::vector<std::string>& comment_lines,
                             const std::vector<std::pair<double, double>>& points);

std::string render_json(const Json& j);  // dump(2) + trailing newline

Json config_to_json(const ConfigMap& config);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace mbv
