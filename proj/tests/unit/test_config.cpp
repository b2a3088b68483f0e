#include <doctest.h>

#include <random>
#include <string>

#include "config.hpp"

using namespace relwig;
using namespace relwig::cli;

namespace {

ScenarioConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0), pos(0.01, 10.0);
  std::uniform_int_distribution<int> small(1, 500), pick(0, 4);
  const auto pow2 = [&] { return 1 << std::uniform_int_distribution<int>(3, 9)(rng); };
  ScenarioConfig c;
  c.scenario = "case " + std::to_string(small(rng));
  c.constants = {pos(rng), pos(rng), pos(rng), u(rng)};
  c.rep = pick(rng) % 2 ? GammaRep::Weyl : GammaRep::Dirac;
  c.kvnd = pick(rng) % 2;
  c.kappa = pos(rng) / 10.0;
  c.dt = pos(rng) / 7.0;
  c.steps = small(rng);
  c.output_every = small(rng);
  c.snapshot_every = small(rng) - 1;
  c.output_dir = "out/r" + std::to_string(small(rng));
  c.seed = rng();
  switch (pick(rng)) {
    case 0: c.potential = PotentialSpec::none(); break;
    case 1: c.potential = PotentialSpec::constant_e(u(rng)); break;
    case 2: c.potential = PotentialSpec::constant_b(u(rng)); break;
    case 3: c.potential = PotentialSpec::sine(u(rng), pos(rng), pick(rng) % 4); break;
    default: c.potential = PotentialSpec(PolynomialA{{std::vector<double>{u(rng)}, {}, {u(rng), 0.0, u(rng)}, {}}}); break;
  }
  c.grid = {pow2(), pow2(), u(rng), pos(rng), pos(rng), u(rng)};
  c.np = pow2();
  c.p_min = u(rng);
  c.lp = pos(rng);
  c.position = {u(rng), u(rng), u(rng), u(rng)};
  c.velocity = {u(rng), u(rng), u(rng)};
  c.x_center = u(rng);
  c.width = pos(rng);
  c.momentum = u(rng);
  c.theta_width = pos(rng);
  c.p_width = pos(rng);
  c.branch = static_cast<Branch>(pick(rng) % 4);
  c.samples = small(rng);
  c.max_momentum = pos(rng);
  c.scalar_potential = {{u(rng), u(rng)}, u(rng), pos(rng)};
  c.kinetic = pick(rng) % 2 ? KineticForm::Newtonian : KineticForm::Salpeter;
  c.phase_constant = u(rng);
  c.oracle_samples = small(rng);
  c.kg_n0 = pow2();
  c.kg_n1 = pow2();
  c.kg_l0 = pos(rng);
  c.kg_l1 = pos(rng);
  c.kg_m0 = small(rng) - 250;
  c.kg_m1 = small(rng) - 250;
  c.op_n = small(rng) + 8;
  c.op_degree = pick(rng) + 1;
  c.op_kappas = {pos(rng) / 10.0, 1.0 / 3.0};
  c.conv_target = pick(rng) % 2 ? "kvn" : "salpeter";
  c.conv_parameter = "dx";
  c.conv_levels = {pos(rng), pos(rng) / 2, pos(rng) / 4};
  return c;
}

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("serialised configs parse back to the same value") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const ScenarioConfig c = random_config(rng);
    const std::string text = serialize_config(c);
    const ScenarioConfig back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize_config(back) == text);
  }
  CHECK(parse_config(serialize_config(ScenarioConfig{})) == ScenarioConfig{});
}

TEST_CASE("syntax: comments, whitespace and lists") {
  const auto c = parse_config(
      "# leading comment\n"
      "scenario = demo run\n"
      "\n"
      "[constants]\n"
      "  ; indented comment\n"
      "  m   =   2.5  \n"
      "[operator]\n"
      "kappas = 0, 0.25 ,1\n"
      "[potential]\n"
      "type = sine\n"
      "amplitude = 0.5\n"
      "wavenumber = 0.3\n"
      "component = 2\n");
  CHECK(c.scenario == "demo run");
  CHECK(c.constants.m == 2.5);
  CHECK(c.op_kappas == std::vector<double>{0.0, 0.25, 1.0});
  CHECK(c.potential == PotentialSpec::sine(0.5, 0.3, 2));
  CHECK(c.constants.hbar == 1.0);
}

TEST_CASE("syntax errors carry the line number") {
  CHECK(error_line("[constants]\nm = 1\nbogus = 2\n") == 3);
  CHECK(error_line("[nowhere]\n") == 1);
  CHECK(error_line("[run]\nsteps = 10\nsteps = 11\n") == 3);
  CHECK(error_line("[run]\nsteps = ten\n") == 2);
  CHECK(error_line("[run]\nsteps = 1.5\n") == 2);
  CHECK(error_line("[run]\nrep = majorana\n") == 2);
  CHECK(error_line("[constants]\nm 1\n") == 2);
  CHECK(error_line("[potential]\ntype = constant_e\nstrength = 1e999\n") == 3);
  CHECK(error_line("\n\n[grid\n") == 3);
}

TEST_CASE("semantic validation names the field and line") {
  const auto parsed = parse_config_with_lines("[constants]\nc = 1\nm = -1\n");
  CHECK(parsed.lines.at("constants.m") == 3);
  try {
    validate_config(parsed.config, "trajectory", parsed.lines);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("constants.m must be positive") != std::string::npos);
  }

  ScenarioConfig c;
  CHECK_NOTHROW(validate_config(c, "wigner"));
  c.grid.nx = 100;
  CHECK_THROWS_AS(validate_config(c, "wigner"), ConfigError);
  CHECK_NOTHROW(validate_config(c, "trajectory"));
  c = ScenarioConfig{};
  c.kappa = 0.0;
  CHECK_THROWS_AS(validate_config(c, "wigner"), ConfigError);
  c.kvnd = true;
  CHECK_NOTHROW(validate_config(c, "kvnd"));
  c = ScenarioConfig{};
  c.conv_levels = {0.1, 0.05};
  CHECK_THROWS_AS(validate_config(c, "convergence"), ConfigError);
  c.conv_levels = {0.1, 0.05, 0.025};
  CHECK_NOTHROW(validate_config(c, "convergence"));
  c.conv_target = "salpeter";
  c.conv_parameter = "kappa";
  CHECK_THROWS_AS(validate_config(c, "convergence"), ConfigError);
}
