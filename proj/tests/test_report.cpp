#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "mellin_bv/config.hpp"
#include "mellin_bv/report.hpp"

using mbv::CsvTable;

TEST_CASE("doubles format round-trip exactly") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1e-300, 3.141592653589793,
                   1.2345678901234567e17}) {
    const std::string s = mbv::fmt_double(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(mbv::fmt_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(mbv::fmt_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(mbv::fmt_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(mbv::fmt_double(1.0) == "1");
  CHECK(mbv::fmt_double(0.5) == "0.5");
}

TEST_CASE("csv quoting") {
  CHECK(mbv::csv_quote("plain") == "plain");
  CHECK(mbv::csv_quote("with,comma") == "\"with,comma\"");
  CHECK(mbv::csv_quote("with \"quote\"") == "\"with \"\"quote\"\"\"");
  CHECK(mbv::csv_quote("line\nbreak") == "\"line\nbreak\"");
  CHECK(mbv::csv_quote("") == "");
}

TEST_CASE("csv rendering uses CRLF and a header row") {
  CsvTable t;
  t.columns = {"lambda", "w", "error", "lower_or_upper_flag"};
  t.rows = {{"1", "2", "0.5", "lower"}, {"0.5", "2", "0.125", "lower"}};
  const std::string got = mbv::render_csv(t);
  CHECK(got ==
        "lambda,w,error,lower_or_upper_flag\r\n"
        "1,2,0.5,lower\r\n"
        "0.5,2,0.125,lower\r\n");
}

TEST_CASE("plot data renders comments then two columns") {
  const std::string got =
      mbv::render_plot_data({"series E(w)", "lambda = 1"}, {{2.0, 0.5}, {4.0, 0.125}});
  CHECK(got ==
        "# series E(w)\n"
        "# lambda = 1\n"
        "2 0.5\n"
        "4 0.125\n");
}

TEST_CASE("json rendering is deterministic") {
  mbv::Json j;
  j["b"] = 1;
  j["a"] = "x";
  const std::string once = mbv::render_json(j);
  CHECK(once == mbv::render_json(j));
  CHECK(once.back() == '\n');
  // ordered_json preserves insertion order rather than sorting
  CHECK(once.find("\"b\"") < once.find("\"a\""));
}

TEST_CASE("config serialization keeps doubles as text") {
  mbv::ConfigMap c;
  c.set("run.N", 2.0);
  c.set("run.name", std::string("step1d"));
  c.set("run.flag", true);
  c.set("run.list", std::vector<double>{1.0, 0.1});
  const mbv::Json j = mbv::config_to_json(c);
  CHECK(j["run.N"] == "2");
  CHECK(j["run.name"] == "step1d");
  CHECK(j["run.flag"] == true);
  REQUIRE(j["run.list"].is_array());
  CHECK(j["run.list"][0] == "1");
  CHECK(j["run.list"][1] == "0.10000000000000001");
}

TEST_CASE("text files are written verbatim") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mellin_bv_report_test";
  fs::create_directories(dir);
  const fs::path p = dir / "out.txt";
  const std::string payload = "line1\r\nline2\n";
  mbv::write_text_file(p.string(), payload);
  std::ifstream in(p, std::ios::binary);
  std::string got((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  CHECK(got == payload);
  fs::remove_all(dir);
  CHECK_THROWS_AS(mbv::write_text_file("/nonexistent_dir/file.txt", "x"),
                  std::runtime_error);
}
