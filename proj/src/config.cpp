#include "mellin_bv/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mellin_bv/errors.hpp"

namespace mbv {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

bool only_ws_left(const std::string& s, std::size_t i) {
  skip_ws(s, i);
  return i >= s.size();
}

std::string parse_quoted(const std::string& s, std::size_t& i, int line) {
  ++i;  // opening quote
  std::string out;
  while (i < s.size() && s[i] != '"') {
    if (s[i] == '\\') {
      if (i + 1 >= s.size()) fail(line, "dangling escape in string");
      switch (s[i + 1]) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: fail(line, "unknown escape in string");
      }
      i += 2;
    } else {
      out += s[i++];
    }
  }
  if (i >= s.size()) fail(line, "unterminated string");
  ++i;  // closing quote
  return out;
}

double parse_number(const std::string& s, std::size_t& i, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s.substr(i), &used);
  } catch (const std::exception&) {
    fail(line, "expected a number at '" + s.substr(i, 12) + "'");
  }
  if (used == 0) fail(line, "expected a number");
  i += used;
  return v;
}

bool word_at(const std::string& s, std::size_t i, const char* w) {
  const std::size_t n = std::strlen(w);
  if (s.compare(i, n, w) != 0) return false;
  const char after = i + n < s.size() ? s[i + n] : '\0';
  return !(std::isalnum(static_cast<unsigned char>(after)) || after == '_');
}

std::string parse_key(const std::string& s, std::size_t& i, int line) {
  const std::size_t start = i;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                          s[i] == '_' || s[i] == '-' || s[i] == '.' ||
                          s[i] == ':'))
    ++i;
  if (i == start) fail(line, "expected a key");
  return s.substr(start, i - start);
}

// one value; scalars store at `key`, inline tables recurse to dotted keys
void parse_value(const std::string& s, std::size_t& i, int line,
                 const std::string& key, ConfigMap& out) {
  skip_ws(s, i);
  if (i >= s.size()) fail(line, "missing value for key '" + key + "'");
  const char c = s[i];
  if (c == '"') {
    out.set(key, parse_quoted(s, i, line));
  } else if (c == '[') {
    ++i;
    std::vector<double> list;
    skip_ws(s, i);
    if (i < s.size() && s[i] == ']') {
      ++i;
    } else {
      for (;;) {
        skip_ws(s, i);
        list.push_back(parse_number(s, i, line));
        skip_ws(s, i);
        if (i < s.size() && s[i] == ',') {
          ++i;
          continue;
        }
        if (i < s.size() && s[i] == ']') {
          ++i;
          break;
        }
        fail(line, "expected ',' or ']' in list");
      }
    }
    out.set(key, std::move(list));
  } else if (c == '{') {
    ++i;
    skip_ws(s, i);
    if (i < s.size() && s[i] == '}') {
      ++i;
      return;
    }
    for (;;) {
      skip_ws(s, i);
      const std::string sub = parse_key(s, i, line);
      skip_ws(s, i);
      if (i >= s.size() || s[i] != '=') fail(line, "expected '=' in inline table");
      ++i;
      parse_value(s, i, line, key + "." + sub, out);
      skip_ws(s, i);
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == '}') {
        ++i;
        break;
      }
      fail(line, "expected ',' or '}' in inline table");
    }
  } else if (word_at(s, i, "true")) {
    i += 4;
    out.set(key, true);
  } else if (word_at(s, i, "false")) {
    i += 5;
    out.set(key, false);
  } else {
    out.set(key, parse_number(s, i, line));
  }
}

// drop everything from an unquoted '#' on
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_str) {
      if (c == '\\')
        ++i;
      else if (c == '"')
        in_str = false;
    } else if (c == '"') {
      in_str = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string format_double(double x) {
  if (x == static_cast<double>(static_cast<long long>(x)) &&
      std::fabs(x) < 1e15) {
    // keep integral values readable in round-trip text
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(x));
    return std::string(buf) + ".0";
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string quote_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace

std::string value_to_text(const ConfigValue& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const double* d = std::get_if<double>(&v)) return format_double(*d);
  if (const std::string* s = std::get_if<std::string>(&v)) return quote_string(*s);
  const auto& list = std::get<std::vector<double>>(v);
  std::string out = "[";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ", ";
    out += format_double(list[i]);
  }
  out += ']';
  return out;
}

void ConfigMap::set(const std::string& key, ConfigValue v) {
  map_[key] = std::move(v);
}

bool ConfigMap::contains(const std::string& key) const {
  return map_.find(key) != map_.end();
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  if (const bool* b = std::get_if<bool>(&it->second)) return *b;
  throw ConfigError("config key '" + key + "' is not a boolean");
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  if (const double* d = std::get_if<double>(&it->second)) return *d;
  throw ConfigError("config key '" + key + "' is not a number");
}

int ConfigMap::get_int(const std::string& key, int fallback) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  const double* d = std::get_if<double>(&it->second);
  if (d == nullptr) throw ConfigError("config key '" + key + "' is not a number");
  if (*d != std::floor(*d) || std::fabs(*d) > 2147483647.0)
    throw ConfigError("config key '" + key + "' is not an integer");
  return static_cast<int>(*d);
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  if (const std::string* s = std::get_if<std::string>(&it->second)) return *s;
  throw ConfigError("config key '" + key + "' is not a string");
}

std::vector<double> ConfigMap::get_list(const std::string& key,
                                        const std::vector<double>& fallback) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  if (const auto* l = std::get_if<std::vector<double>>(&it->second)) return *l;
  if (const double* d = std::get_if<double>(&it->second))
    return {*d};  // a single number is a one-element list
  throw ConfigError("config key '" + key + "' is not a list");
}

std::optional<ConfigValue> ConfigMap::find(const std::string& key) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void ConfigMap::set_override(const std::string& key, const std::string& raw) {
  std::size_t begin = 0, end = raw.size();
  while (begin < end && (raw[begin] == ' ' || raw[begin] == '\t')) ++begin;
  while (end > begin && (raw[end - 1] == ' ' || raw[end - 1] == '\t')) --end;
  const std::string text = raw.substr(begin, end - begin);
  if (text.empty()) throw ConfigError("empty override value for key '" + key + "'");

  if (text == "true") {
    set(key, true);
    return;
  }
  if (text == "false") {
    set(key, false);
    return;
  }
  if (text.front() == '[' || text.front() == '"' || text.front() == '{') {
    std::size_t i = 0;
    parse_value(text, i, 0, key, *this);
    if (!only_ws_left(text, i))
      throw ConfigError("trailing characters in override for key '" + key + "'");
    return;
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) {
      set(key, v);
      return;
    }
  } catch (const std::exception&) {
    // fall through: treat as a bare string
  }
  set(key, text);
}

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap out;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = strip_comment(raw);
    std::size_t i = 0;
    skip_ws(line, i);
    if (i >= line.size()) continue;

    if (line[i] == '[') {
      ++i;
      skip_ws(line, i);
      const std::string name = parse_key(line, i, line_no);
      skip_ws(line, i);
      if (i >= line.size() || line[i] != ']')
        fail(line_no, "expected ']' after section name");
      ++i;
      if (!only_ws_left(line, i)) fail(line_no, "trailing characters after section");
      section = name;
      continue;
    }

    const std::string key = parse_key(line, i, line_no);
    skip_ws(line, i);
    if (i >= line.size() || line[i] != '=')
      fail(line_no, "expected '=' after key '" + key + "'");
    ++i;
    const std::string full = section.empty() ? key : section + "." + key;
    parse_value(line, i, line_no, full, out);
    if (!only_ws_left(line, i))
      fail(line_no, "trailing characters after value for key '" + key + "'");
  }
  return out;
}

ConfigMap parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace mbv
