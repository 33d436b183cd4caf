#pragma once

// Flat key-value config with sections and inline tables. Grammar (documented
// in the README):
//
//   # comment
//   [section]
//   key = true | 3.5 | "text" | [1, 2, 4] | { kind = "power", p = 2.0 }
//
// Inline tables flatten to dotted keys (phi = { kind = "power" } stores
// "section.phi.kind"). Keys are case-sensitive. Command-line flags override
// file keys via set_override.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mbv {

using ConfigValue = std::variant<bool, double, std::string, std::vector<double>>;

std::string value_to_text(const ConfigValue& v);  // canonical round-trip form

class ConfigMap {
 public:
  void set(const std::string& key, ConfigValue v);
  bool contains(const std::string& key) const;

  // typed getters; throw ConfigError on wrong type, return fallback if absent
  bool get_bool(const std::string& key, bool fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;  // rejects non-integers
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& fallback) const;

  std::optional<ConfigValue> find(const std::string& key) const;

  // parses raw text ("true", "2.5", "[1,2]", quoted or bare string) and
  // stores it; used for flag overrides
  void set_override(const std::string& key, const std::string& raw);

  const std::map<std::string, ConfigValue>& entries() const { return map_; }

 private:
  std::map<std::string, ConfigValue> map_;
};

ConfigMap parse_config_text(const std::string& text);  // throws ConfigError
ConfigMap parse_config_file(const std::string& path);  // throws ConfigError

}  // namespace mbv
