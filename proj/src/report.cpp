#include "mellin_bv/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mbv {

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_quote(const std::string& field) {
  const bool needs = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string render_csv(const CsvTable& table) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_quote(row[i]);
    }
    out += "\r\n";
  };
  append_row(table.columns);
  for (const auto& row : table.rows) append_row(row);
  return out;
}

std::string render_plot_data(const std::vector<std::string>& comment_lines,
                             const std::vector<std::pair<double, double>>& points) {
  std::string out;
  for (const auto& c : comment_lines) out += "# " + c + "\n";
  for (const auto& [x, y] : points)
    out += fmt_double(x) + " " + fmt_double(y) + "\n";
  return out;
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

Json config_to_json(const ConfigMap& config) {
  Json out = Json::object();
  for (const auto& [key, value] : config.entries()) {
    if (const bool* b = std::get_if<bool>(&value)) {
      out[key] = *b;
    } else if (const double* d = std::get_if<double>(&value)) {
      // keep the canonical text form so the summary is byte-stable
      out[key] = fmt_double(*d);
    } else if (const std::string* s = std::get_if<std::string>(&value)) {
      out[key] = *s;
    } else {
      Json arr = Json::array();
      for (double v : std::get<std::vector<double>>(value)) arr.push_back(fmt_double(v));
      out[key] = arr;
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace mbv
