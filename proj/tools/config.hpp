#pragma once

// Scenario configuration files.
//
// Flat INI: `key = value` lines grouped under `[section]` headers. Lines whose
// first non-blank character is `#` or `;` are comments. Lists are
// comma-separated. Unknown sections or keys are rejected with the offending
// line number.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "relwig/clifford.hpp"
#include "relwig/constants.hpp"
#include "relwig/dirac.hpp"
#include "relwig/potential.hpp"
#include "relwig/scalar.hpp"
#include "relwig/wigner_field.hpp"

namespace relwig::cli {

/// Invalid configuration; line() is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ScenarioConfig {
  std::string scenario;

  PhysicalConstants constants;

  // [run]
  GammaRep rep = GammaRep::Dirac;
  bool kvnd = false;
  double kappa = 1.0;
  double dt = 0.01;
  int steps = 100;
  int output_every = 1;
  int snapshot_every = 0;
  std::string output_dir = "out";
  std::uint64_t seed = 1;

  PotentialSpec potential;

  // [grid]
  XThetaGrid grid;
  int np = 64;
  double p_min = -8.0;
  double lp = 16.0;

  // [initial]
  std::array<double, 4> position{0.0, 0.0, 0.0, 0.0};
  std::array<double, 3> velocity{0.0, 0.0, 0.0};
  double x_center = 0.0;
  double width = 2.0;
  double momentum = 0.0;
  double theta_width = 0.0;
  double p_width = 1.0;

  // [dirac]
  Branch branch = Branch::PlusUp;
  int samples = 100;
  double max_momentum = 3.0;

  // [scalar]
  ScalarPotential scalar_potential;
  KineticForm kinetic = KineticForm::Salpeter;
  double phase_constant = 0.0;
  int oracle_samples = 10000;

  // [klein_gordon]
  int kg_n0 = 16, kg_n1 = 16;
  double kg_l0 = 1.0, kg_l1 = 1.0;
  int kg_m0 = 1, kg_m1 = 0;

  // [operator]
  int op_n = 32;
  int op_degree = 4;
  std::vector<double> op_kappas{0.0, 0.5, 1.0};

  // [convergence]
  std::string conv_target = "wigner";
  std::string conv_parameter = "dt";
  std::vector<double> conv_levels;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Parse configuration text. Throws ConfigError with the line number of the
/// first syntax error, unknown key or invalid value.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& c);

/// Semantic checks for the named subcommand. Throws ConfigError naming the
/// field (and its line when `lines` has it).
void validate_config(const ScenarioConfig& c, const std::string& subcommand,
                     const std::map<std::string, int>& lines = {});

/// Line numbers of keys seen by the last parse, keyed "section.key".
struct ParsedConfig {
  ScenarioConfig config;
  std::map<std::string, int> lines;
};
ParsedConfig parse_config_with_lines(const std::string& text);

}  // namespace relwig::cli
