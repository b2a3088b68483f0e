#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"relwig: relativistic Wigner and phase-space scenario runner"};
  app.set_version_flag("--version", std::string(relwig::cli::version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string chosen;
  for (const auto& name : relwig::cli::subcommands()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " scenario");
    sub->add_option("config", config_path, "scenario configuration file")->required();
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return relwig::cli::run_command(chosen, config_path, std::cout, std::cerr);
}
