// Batch front-end: one subcommand per run, configured by a JSON document.

#include <string>

#include <CLI11.hpp>

#include "tmscatter/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"transfer-matrix scattering engine"};
  app.require_subcommand(1);

  const std::vector<std::string> subs = {
      "amplitude",     "cross-section", "certify",       "born-exact",
      "scan-ss",       "compose-bench", "oracle-compare"};
  std::string config_path;
  for (const auto& name : subs) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration")
        ->required();
  }

  CLI11_PARSE(app, argc, argv);
  const std::string chosen = app.get_subcommands().front()->get_name();
  return tmscatter::run_subcommand(chosen, config_path);
}
