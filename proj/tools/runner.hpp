#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace relwig::cli {

const char* version();

/// trajectory, rotor, dirac-free, wigner, kvnd, salpeter, kvn, klein-gordon, operator-check, convergence.
const std::vector<std::string>& subcommands();

struct SummaryItem {
  std::string key;
  std::string value;
};

struct RunReport {
  /// File names relative to the output directory, in write order.
  std::vector<std::string> artifacts;
  std::vector<std::string> warnings;
  std::vector<SummaryItem> summary;
};

/// Runs a validated scenario, writing artifacts into c.output_dir (created if
/// needed). Solver aborts propagate as NumericalAbort.
RunReport run_scenario(const std::string& subcommand, const ScenarioConfig& c);

/// Full pipeline: load, validate, run, write manifest.json. Returns the process
/// exit status: 0 success, 2 configuration error, 3 numerical abort, 1 other failure.
int run_command(const std::string& subcommand, const std::string& config_path, std::ostream& out, std::ostream& err);

}  // namespace relwig::cli
