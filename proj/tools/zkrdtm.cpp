// zkrdtm: truncated power-series solutions of ZK(n,n) equations.
//
//   zkrdtm solve    --config fixtures/zk22.cfg [--order K] [--backend exact|grid] [--out path]
//   zkrdtm table    --config fixtures/zk33.cfg --out table.csv
//   zkrdtm residual --config fixtures/zk33.cfg
//   zkrdtm compare  --config fixtures/zk22_compare.cfg
//
// Exit codes: 0 success, 2 configuration error, 3 grid domain exhausted,
// 4 internal invariant failure (e.g. nonzero exact residual).

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "zkrdtm/commands.hpp"
#include "zkrdtm/config.hpp"

int main(int argc, char** argv) {
  using namespace zkrdtm;

  CLI::App app{"Reduced differential transform solver for (2+1)-D ZK(n,n) equations"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<int> order;
  std::string backend;
  std::string out;
  std::optional<int> corrupt;

  for (const char* name : {"solve", "table", "residual", "compare"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "Run configuration file")->required();
    sub->add_option("--order", order, "Series order K (overrides [solve] order)");
    sub->add_option("--backend", backend, "exact or grid (overrides [solve] backend)")
        ->check(CLI::IsMember({"exact", "grid"}));
    sub->add_option("--out", out, "Output path (overrides [output] path; '-' for stdout)");
    if (std::string(name) == "residual") {
      sub->add_option("--inject-corruption", corrupt, "Test hook: flip a coefficient of U_k before checking");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_config_error;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunConfig config;
  try {
    config = load_config(config_path);
    if (order) {
      if (*order < 0) throw ConfigError(0, "--order must be >= 0");
      config.order = *order;
    }
    if (backend == "exact") {
      config.backend = Backend::exact;
      config.grid.reset();
    } else if (backend == "grid") {
      config.backend = Backend::grid;
    }
    if (!out.empty()) config.output.path = out;
    validate_config(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config_error;
  }

  CommandOptions options;
  options.corrupt_index = corrupt;
  return run_command(command, config, options, std::cerr);
}
