#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "mellin_bv/version.hpp"

namespace {

// Named flags are thin aliases for config keys; everything funnels through
// the same override mechanism, so precedence is simply
// defaults < config file < named flags < --set.
void add_common(CLI::App* sub, mbv::cli::CliState* st) {
  sub->add_option("--config", st->config_path,
                  "config file (key = value lines with [sections])");
  sub->add_option("--out", st->out_dir,
                  "directory for CSV / JSON / plot-data reports");
  sub->add_option_function<std::vector<std::string>>(
      "--set",
      [st](const std::vector<std::string>& pairs) {
        for (const auto& kv : pairs) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos)
            throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
          st->raw_overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        }
      },
      "raw config override key=value (repeatable)");
}

void add_kv(CLI::App* sub, mbv::cli::CliState* st, const std::string& flag,
            const std::string& key, const std::string& desc) {
  sub->add_option_function<std::string>(
      flag,
      [st, key](const std::string& value) { st->flag_overrides.emplace_back(key, value); },
      desc);
}

// comma-separated or bracketed list flag
void add_list_kv(CLI::App* sub, mbv::cli::CliState* st, const std::string& flag,
                 const std::string& key, const std::string& desc) {
  sub->add_option_function<std::string>(
      flag,
      [st, key](const std::string& value) {
        std::string raw = value;
        if (raw.empty() || raw.front() != '[') raw = "[" + raw + "]";
        st->flag_overrides.emplace_back(key, raw);
      },
      desc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mellin-bv: Mellin-type integral operators, multidimensional "
      "phi-variation, and convergence experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mbv::kVersionString);

  mbv::cli::CliState st;
  std::string command;

  auto make_sub = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->callback([&command, name] { command = name; });
    add_common(sub, &st);
    add_kv(sub, &st, "--N", "run.N", "dimension (1..3)");
    add_list_kv(sub, &st, "--w-ladder", "run.w_ladder", "operator scales, increasing");
    return sub;
  };

  {
    CLI::App* sub = make_sub("kernel-check",
                             "approximate-identity axioms, absolute moments, "
                             "singularity certification");
    add_kv(sub, &st, "--kernel", "run.kernel", "kernel family name");
    add_kv(sub, &st, "--alpha", "run.alpha", "moment / singularity order");
    add_list_kv(sub, &st, "--deltas", "run.deltas", "far-region cutoffs in (0,1)");
    add_kv(sub, &st, "--delta-tilde", "run.delta_tilde", "near-region cutoff");
  }
  {
    CLI::App* sub = make_sub("variation", "global phi-variation of a test function");
    add_kv(sub, &st, "--function", "run.function", "test function name");
    add_kv(sub, &st, "--phi", "run.phi", "gauge: classical or power:<p>");
    add_kv(sub, &st, "--lambda", "run.lambda", "scaling constant");
  }
  {
    CLI::App* sub = make_sub("modulus", "phi-modulus of smoothness over delta");
    add_kv(sub, &st, "--function", "run.function", "test function name");
    add_kv(sub, &st, "--phi", "run.phi", "gauge: classical or power:<p>");
    add_kv(sub, &st, "--lambda", "run.lambda", "scaling constant");
    add_list_kv(sub, &st, "--deltas", "run.deltas", "delta values in (0,1)");
  }
  {
    CLI::App* sub = make_sub("apply", "evaluate the operator on a grid or point");
    add_kv(sub, &st, "--function", "run.function", "test function name");
    add_kv(sub, &st, "--kernel", "run.kernel", "kernel family name");
    add_kv(sub, &st, "--w", "run.w", "operator scale");
    add_list_kv(sub, &st, "--s", "run.s", "evaluation point (N coordinates)");
  }
  {
    CLI::App* sub = make_sub("convergence", "V^phi[lambda(T_w f - f)] -> 0 experiment");
    add_kv(sub, &st, "--function", "run.function", "test function name");
    add_kv(sub, &st, "--kernel", "run.kernel", "kernel family name");
    add_kv(sub, &st, "--phi", "run.phi", "gauge: classical or power:<p>");
    add_list_kv(sub, &st, "--lambda-grid", "run.lambda_grid", "scaling constants");
  }
  {
    CLI::App* sub = make_sub("rate", "decay-rate experiment with kernel certification");
    add_kv(sub, &st, "--function", "run.function", "test function name");
    add_kv(sub, &st, "--kernel", "run.kernel", "kernel family name");
    add_kv(sub, &st, "--phi", "run.phi", "gauge: classical or power:<p>");
    add_kv(sub, &st, "--alpha", "run.alpha", "target rate exponent");
    add_list_kv(sub, &st, "--lambda-grid", "run.lambda_grid", "scaling constants");
    add_list_kv(sub, &st, "--deltas", "run.deltas", "certification cutoffs");
    add_kv(sub, &st, "--delta-tilde", "run.delta_tilde", "near-region cutoff");
  }
  {
    CLI::App* sub = make_sub("rate-generalized",
                             "rate experiment for a general weight tau and decay xi");
    add_kv(sub, &st, "--function", "run.function", "test function name");
    add_kv(sub, &st, "--kernel", "run.kernel", "kernel family name");
    add_kv(sub, &st, "--phi", "run.phi", "gauge: classical or power:<p>");
    add_kv(sub, &st, "--tau", "run.tau", "weight spec, e.g. logpow:1");
    add_kv(sub, &st, "--xi", "run.xi", "decay spec, e.g. powinv:1 or one");
    add_list_kv(sub, &st, "--lambda-grid", "run.lambda_grid", "scaling constants");
  }
  {
    CLI::App* sub = make_sub("counterexample",
                             "step-function lower bound that never vanishes");
    add_kv(sub, &st, "--phi", "run.phi", "gauge: classical or power:<p>");
    add_list_kv(sub, &st, "--mu", "run.mu_list", "scaling constants mu");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);
    return 2;  // malformed command line is a config error
  }
  return mbv::cli::run_command(command, st);
}
