#include <doctest.h>

#include <string>
#include <vector>

#include "mellin_bv/config.hpp"
#include "mellin_bv/errors.hpp"

using mbv::ConfigError;
using mbv::ConfigMap;
using mbv::ConfigValue;

namespace {

const char* kSample = R"(# experiment setup
[run]
N = 1
function = "step1d"        # trailing comment
phi = { kind = "power", p = 2.0 }
w_ladder = [2, 4, 8]
verbose = true

[table]
grid_depth = 10
box_m_max = 8.0
label = "a \"quoted\" name\nwith two lines"
)";

}  // namespace

TEST_CASE("happy-path parsing") {
  const ConfigMap c = mbv::parse_config_text(kSample);
  CHECK(c.get_int("run.N", -1) == 1);
  CHECK(c.get_string("run.function", "") == "step1d");
  CHECK(c.get_string("run.phi.kind", "") == "power");
  CHECK(c.get_double("run.phi.p", 0.0) == 2.0);
  CHECK(c.get_list("run.w_ladder", {}) == std::vector<double>{2, 4, 8});
  CHECK(c.get_bool("run.verbose", false));
  CHECK(c.get_int("table.grid_depth", 0) == 10);
  CHECK(c.get_double("table.box_m_max", 0.0) == 8.0);
  CHECK(c.get_string("table.label", "") == "a \"quoted\" name\nwith two lines");
  CHECK(c.contains("run.N"));
  CHECK_FALSE(c.contains("run.missing"));
}

TEST_CASE("fallbacks and typed errors") {
  const ConfigMap c = mbv::parse_config_text("x = 2.5\nname = \"abc\"\nn = 3\n");
  CHECK(c.get_double("absent", 7.5) == 7.5);
  CHECK(c.get_string("absent", "dflt") == "dflt");
  CHECK(c.get_bool("absent", true));
  CHECK(c.get_list("absent", {1.0}) == std::vector<double>{1.0});
  // a single number widens to a one-element list
  CHECK(c.get_list("x", {}) == std::vector<double>{2.5});
  CHECK_THROWS_AS((void)c.get_bool("x", false), ConfigError);
  CHECK_THROWS_AS((void)c.get_double("name", 0.0), ConfigError);
  CHECK_THROWS_AS((void)c.get_int("x", 0), ConfigError);  // 2.5 is not integral
  CHECK(c.get_int("n", 0) == 3);
}

TEST_CASE("get_int range guard") {
  ConfigMap c;
  c.set("big", 3.0e9);
  c.set("neg", -3.0e9);
  CHECK_THROWS_AS((void)c.get_int("big", 0), ConfigError);
  CHECK_THROWS_AS((void)c.get_int("neg", 0), ConfigError);
}

TEST_CASE("syntax errors carry line numbers") {
  CHECK_THROWS_WITH_AS(mbv::parse_config_text("a = 1\nb = = 2\n"),
                       doctest::Contains("config line 2"), ConfigError);
  CHECK_THROWS_WITH_AS(mbv::parse_config_text("a = 1\n\n[sec\nb = 2\n"),
                       doctest::Contains("config line 3"), ConfigError);
  CHECK_THROWS_AS(mbv::parse_config_text("just_a_key\n"), ConfigError);
  CHECK_THROWS_AS(mbv::parse_config_text("k = [1, 2\n"), ConfigError);
  CHECK_THROWS_AS(mbv::parse_config_text("k = \"open\n"), ConfigError);
  CHECK_THROWS_AS(mbv::parse_config_text("k = 1 2\n"), ConfigError);
  CHECK_THROWS_AS(mbv::parse_config_file("/nonexistent/path.toml"), ConfigError);
}

TEST_CASE("comments and whitespace forms") {
  const ConfigMap c = mbv::parse_config_text(
      "  # full-line comment\n"
      "\n"
      "a = 1 # after value\n"
      "b = \"has # inside\"\n"
      "\r\n"
      "c = [ 1 , 2 ,\t3 ]\n");
  CHECK(c.get_int("a", 0) == 1);
  CHECK(c.get_string("b", "") == "has # inside");
  CHECK(c.get_list("c", {}) == std::vector<double>{1, 2, 3});
}

TEST_CASE("overrides parse their raw forms") {
  ConfigMap c;
  c.set_override("a", "true");
  c.set_override("b", "false");
  c.set_override("n", " 42 ");
  c.set_override("x", "2.5e-3");
  c.set_override("s", "plain-text");
  c.set_override("q", "\"quoted text\"");
  c.set_override("l", "[1, 2, 4]");
  c.set_override("t", "{ kind = \"power\", p = 3.0 }");
  CHECK(c.get_bool("a", false));
  CHECK_FALSE(c.get_bool("b", true));
  CHECK(c.get_int("n", 0) == 42);
  CHECK(c.get_double("x", 0.0) == 2.5e-3);
  CHECK(c.get_string("s", "") == "plain-text");
  CHECK(c.get_string("q", "") == "quoted text");
  CHECK(c.get_list("l", {}) == std::vector<double>{1, 2, 4});
  CHECK(c.get_string("t.kind", "") == "power");
  CHECK(c.get_double("t.p", 0.0) == 3.0);
  CHECK_THROWS_AS(c.set_override("bad", ""), ConfigError);
  CHECK_THROWS_AS(c.set_override("bad", "[1, 2"), ConfigError);

  // later values win
  c.set_override("n", "7");
  CHECK(c.get_int("n", 0) == 7);
}

TEST_CASE("canonical text round-trips") {
  CHECK(mbv::value_to_text(ConfigValue{true}) == "true");
  CHECK(mbv::value_to_text(ConfigValue{false}) == "false");
  CHECK(mbv::value_to_text(ConfigValue{2.0}) == "2.0");
  CHECK(mbv::value_to_text(ConfigValue{0.1}) == "0.10000000000000001");
  CHECK(mbv::value_to_text(ConfigValue{std::string("hi")}) == "\"hi\"");
  CHECK(mbv::value_to_text(ConfigValue{std::vector<double>{1.0, 2.5}}) ==
        "[1.0, 2.5]");

  // parsing the canonical form reproduces the value
  ConfigMap c;
  c.set_override("v", mbv::value_to_text(ConfigValue{std::vector<double>{1.0, 2.5}}));
  CHECK(c.get_list("v", {}) == std::vector<double>{1.0, 2.5});
}
