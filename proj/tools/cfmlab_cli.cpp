#include <iostream>

#include "CLI11.hpp"
#include "cfmlab/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cfmlab: constant function market fee-income simulator"};
  app.require_subcommand(1);

  cfmlab::CommandOptions options;
  std::uint64_t seed = 0;
  std::uint64_t paths = 0;

  const auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* config = cmd->add_option("--config", options.config, "Config file (key = value)");
    if (needs_config) config->required();
    cmd->add_option("--out", options.out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", seed, "Master seed");
    if (needs_config) {
      cmd->add_option("--paths", paths, "Paths per cell");
      cmd->add_option("--set", options.overrides, "Override a config value, KEY=VALUE (repeatable)");
    }
  };

  auto* simulate = app.add_subcommand("simulate", "Run one path and write steps.csv");
  add_common(simulate, true);
  auto* sweep = app.add_subcommand("sweep", "Run the gamma x sigma x lambda grid and write sweep.csv");
  add_common(sweep, true);
  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cfmlab::kExitConfigError;
  }

  for (auto* cmd : {simulate, sweep, verify}) {
    if (cmd->count("--seed") > 0) options.seed = seed;
    if (cmd != verify && cmd->count("--paths") > 0) options.paths = paths;
  }

  if (*simulate) return cfmlab::cmd_simulate(options, std::cerr);
  if (*sweep) return cfmlab::cmd_sweep(options, std::cerr);
  return cfmlab::cmd_verify(options, std::cout);
}
