#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mbv::cli {

// Parsed command line: config file path, output directory, and the two
// override layers (named flags first, then raw --set pairs).
struct CliState {
  std::string config_path;
  std::string out_dir;
  std::vector<std::pair<std::string, std::string>> flag_overrides;
  std::vector<std::pair<std::string, std::string>> raw_overrides;
};

// Loads the config, applies overrides, runs one subcommand, writes reports.
// Exit codes: 0 = verdict pass / report written, 1 = check or verdict
// failure, 2 = config error (bad file, unknown name, unsupported dimension).
int run_command(const std::string& command, const CliState& state);

}  // namespace mbv::cli
