#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "relwig/convergence.hpp"
#include "relwig/csv.hpp"
#include "relwig/dirac.hpp"
#include "relwig/dynamics.hpp"
#include "relwig/errors.hpp"
#include "relwig/operator_lab.hpp"
#include "relwig/parallel.hpp"
#include "relwig/scalar.hpp"
#include "relwig/snapshot.hpp"
#include "relwig/wigner_field.hpp"

#ifndef RELWIG_VERSION
#define RELWIG_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace relwig::cli {

const char* version() { return RELWIG_VERSION; }

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s{"trajectory", "rotor",    "dirac-free",   "wigner",         "kvnd",
                                          "salpeter",   "kvn",      "klein-gordon", "operator-check", "convergence"};
  return s;
}

namespace {

std::ofstream open_out(const ScenarioConfig& c, RunReport& rep, const std::string& name) {
  std::ofstream os(fs::path(c.output_dir) / name, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + (fs::path(c.output_dir) / name).string());
  rep.artifacts.push_back(name);
  return os;
}

void note(RunReport& rep, const std::string& key, double v) { rep.summary.push_back({key, format_double(v)}); }
void note(RunReport& rep, const std::string& key, const std::string& v) { rep.summary.push_back({key, v}); }

void add_warnings(RunReport& rep, const std::vector<std::string>& w) {
  for (const auto& s : w)
    if (std::find(rep.warnings.begin(), rep.warnings.end(), s) == rep.warnings.end()) rep.warnings.push_back(s);
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every standard library.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

FourVector initial_velocity(const ScenarioConfig& c) {
  const auto& v = c.velocity;
  const double cc = c.constants.c;
  return FourVector::upper(std::sqrt(cc * cc + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]), v[0], v[1], v[2]);
}

FourVector initial_position(const ScenarioConfig& c) {
  return FourVector::upper(c.position[0], c.position[1], c.position[2], c.position[3]);
}

// -- classical particle ---------------------------------------------------------

void run_trajectory(const ScenarioConfig& c, RunReport& rep) {
  const auto& k = c.constants;
  PhasePoint p0;
  p0.X = initial_position(c);
  p0.P = canonical_momentum(p0.X, initial_velocity(c), c.potential, k);
  const TrajectoryRecord full = integrate_hamiltonian(p0, c.potential, k, c.dt, c.steps);
  TrajectoryRecord out = full;
  out.points.clear();
  for (std::size_t i = 0; i < full.points.size(); ++i)
    if (i % static_cast<std::size_t>(c.output_every) == 0 || i + 1 == full.points.size()) out.points.push_back(full.points[i]);
  {
    auto os = open_out(c, rep, "trajectory.csv");
    write_trajectory_csv(os, out, c.potential, k);
  }
  {
    auto os = open_out(c, rep, "velocity.csv");
    CsvWriter w(os, {"s", "u0", "u1", "u2", "u3"});
    for (const auto& p : out.points) {
      const FourVector u = four_velocity(p, c.potential, k);
      w.row({p.s, u[0], u[1], u[2], u[3]});
    }
  }
  note(rep, "hamiltonian_drift", full.hamiltonian_drift);
  note(rep, "mass_shell_drift", full.mass_shell_drift);
}

void run_rotor(const ScenarioConfig& c, RunReport& rep) {
  const auto& k = c.constants;
  RotorState r0;
  r0.X = initial_position(c);
  r0.L = boost_from_velocity(initial_velocity(c), k, c.rep);
  RotorOptions opts;
  opts.rep = c.rep;
  const RotorTrajectory full = integrate_rotor(r0, c.potential, k, c.dt, c.steps, opts);
  RotorTrajectory out = full;
  out.states.clear();
  for (std::size_t i = 0; i < full.states.size(); ++i)
    if (i % static_cast<std::size_t>(c.output_every) == 0 || i + 1 == full.states.size()) out.states.push_back(full.states[i]);
  auto os = open_out(c, rep, "rotor.csv");
  write_rotor_csv(os, out, c.potential, k, c.rep);
  note(rep, "constraint_drift", full.constraint_drift);
  note(rep, "corrections", static_cast<double>(full.corrections));
}

// -- Dirac plane waves ------------------------------------------------------------

void run_dirac_free(const ScenarioConfig& c, RunReport& rep) {
  const auto& k = c.constants;
  std::mt19937_64 rng(c.seed);
  auto os = open_out(c, rep, "dirac_free.csv");
  CsvWriter w(os, {"branch", "sample", "p0", "p1", "p2", "p3", "residual", "J0", "J1", "J2", "J3"});
  double worst = 0.0;
  const double pm = c.max_momentum * k.m * k.c;
  for (int s = 0; s < c.samples; ++s) {
    const double p1 = pm * (2.0 * unit(rng) - 1.0), p2 = pm * (2.0 * unit(rng) - 1.0), p3 = pm * (2.0 * unit(rng) - 1.0);
    const double span = 10.0 * k.compton_length();
    const FourVector x = FourVector::upper(span * (2.0 * unit(rng) - 1.0), span * (2.0 * unit(rng) - 1.0),
                                           span * (2.0 * unit(rng) - 1.0), span * (2.0 * unit(rng) - 1.0));
    for (Branch b : {Branch::PlusUp, Branch::PlusDown, Branch::MinusUp, Branch::MinusDown}) {
      const FourVector p = on_shell_momentum(b, p1, p2, p3, k);
      const Spinor psi = free_spinor(b, p, x, k, c.rep);
      const double r = dirac_residual(psi, p, c.potential, x, k, c.rep);
      worst = std::max(worst, r);
      const FourVector J = dirac_current(psi, c.rep);
      w.row({to_string(b)}, {static_cast<double>(s), p[0], p[1], p[2], p[3], r, J[0], J[1], J[2], J[3]});
    }
  }
  note(rep, "max_residual", worst);
}

// -- Wigner field -------------------------------------------------------------------

PropagationMode wigner_mode(const ScenarioConfig& c, bool kvnd) {
  return kvnd ? PropagationMode::koopman() : PropagationMode::quantum(c.kappa);
}

SpinorField initial_packet(const ScenarioConfig& c) {
  return gaussian_packet(c.grid, c.constants, c.rep, c.x_center, c.width, c.momentum, c.theta_width);
}

std::string step_name(const char* prefix, int step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%06d.wgrid", prefix, step);
  return buf;
}

void run_wigner(const ScenarioConfig& c, RunReport& rep, bool kvnd) {
  const auto& g = c.grid;
  double grad = 0.0;
  for (int i = 0; i < g.nx; ++i)
    for (double d : c.potential.derivative_x1(g.x(i))) grad = std::max(grad, std::abs(c.constants.e * d));
  add_warnings(rep, validate_regime(c.width, grad, c.constants));

  SpinorField psi = initial_packet(c);
  const double n0 = psi.norm();
  WignerPropagator prop(g, c.potential, wigner_mode(c, kvnd), c.constants, c.rep, c.dt);
  auto obs = open_out(c, rep, "observables.csv");
  write_observables_header(obs);
  const auto snapshot = [&](const std::string& name) {
    auto os = open_out(c, rep, name);
    write_snapshot(os, psi);
  };
  write_observables_row(obs, observables(psi));
  if (c.snapshot_every > 0) snapshot(step_name("psi", 0));
  for (int s = 1; s <= c.steps; ++s) {
    prop.step(psi);
    if (s % c.output_every == 0 || s == c.steps) write_observables_row(obs, observables(psi));
    if (c.snapshot_every > 0 && s % c.snapshot_every == 0) snapshot(step_name("psi", s));
  }
  snapshot("psi_final.wgrid");
  add_warnings(rep, prop.warnings());
  note(rep, "norm_drift", std::abs(psi.norm() - n0) / n0);
  note(rep, "mean_alpha1", mean_alpha1(psi));
}

// -- scalar solvers -----------------------------------------------------------------

ScalarHamiltonian scalar_hamiltonian(const ScenarioConfig& c) { return {c.scalar_potential, c.constants, c.kinetic}; }

void run_salpeter(const ScenarioConfig& c, RunReport& rep) {
  const ScalarHamiltonian H = scalar_hamiltonian(c);
  Wavefunction1D psi =
      gaussian_wavefunction(c.grid.nx, c.grid.x_min, c.grid.lx, c.x_center, c.width, c.momentum, c.constants.hbar);
  const double n0 = psi.norm();
  note(rep, "initial_group_velocity", mean_group_velocity(psi, H));
  SalpeterPropagator prop(H, psi.n, psi.x_min, psi.length, c.dt);
  auto os = open_out(c, rep, "observables.csv");
  write_scalar_header(os);
  write_scalar_row(os, scalar_observables(psi, H, 0.0));
  for (int s = 1; s <= c.steps; ++s) {
    prop.step(psi);
    if (s % c.output_every == 0 || s == c.steps) write_scalar_row(os, scalar_observables(psi, H, s * c.dt));
  }
  add_warnings(rep, prop.warnings());
  note(rep, "norm_drift", std::abs(psi.norm() - n0) / n0);
}

PhaseSpaceField kvn_initial(const ScenarioConfig& c, int nx, int np) {
  return gaussian_phase_space(nx, c.grid.x_min, c.grid.lx, np, c.p_min, c.lp, c.x_center, c.momentum, c.width,
                              c.p_width);
}

std::function<double(double, double)> kvn_rho0(const ScenarioConfig& c) {
  const double xc = c.x_center, pc = c.momentum, sx = c.width, sp = c.p_width;
  return [=](double x, double p) {
    const double u = (x - xc) / sx, w = (p - pc) / sp;
    return std::exp(-0.5 * (u * u + w * w)) / (2.0 * std::numbers::pi * sx * sp);
  };
}

KvnOptions kvn_options(const ScenarioConfig& c) {
  KvnOptions o;
  if (c.phase_constant != 0.0) {
    const ScalarHamiltonian H = scalar_hamiltonian(c);
    const double f = c.phase_constant;
    o.phase = [H, f](double x, double p) { return f * H.energy(x, p); };
  }
  return o;
}

ScalarObservables phase_space_observables(const PhaseSpaceField& f, const ScalarHamiltonian& H, double t) {
  ScalarObservables o{t, 0.0, 0.0, 0.0, 0.0};
  double w = 0.0;
  for (int i = 0; i < f.nx; ++i)
    for (int j = 0; j < f.np; ++j) {
      const double d = std::norm(f(i, j));
      w += d;
      o.mean_x += f.x(i) * d;
      o.mean_p += f.p(j) * d;
      o.energy += H.energy(f.x(i), f.p(j)) * d;
    }
  o.norm = w * f.dx() * f.dp();
  if (w > 0.0) {
    o.mean_x /= w;
    o.mean_p /= w;
    o.energy /= w;
  }
  return o;
}

void write_phase_snapshot(std::ostream& os, const PhaseSpaceField& f, double t) {
  SnapshotHeader h;
  h.n1 = static_cast<std::uint32_t>(f.nx);
  h.n2 = static_cast<std::uint32_t>(f.np);
  h.components = 1;
  h.d1 = f.dx();
  h.d2 = f.dp();
  h.x0 = t;
  write_snapshot(os, h, f.values);
}

void run_kvn(const ScenarioConfig& c, RunReport& rep) {
  const ScalarHamiltonian H = scalar_hamiltonian(c);
  PhaseSpaceField psi = kvn_initial(c, c.grid.nx, c.np);
  const double n0 = psi.norm();
  KvnPropagator prop(H, psi, c.dt, kvn_options(c));
  add_warnings(rep, prop.warnings());
  auto os = open_out(c, rep, "observables.csv");
  write_scalar_header(os);
  write_scalar_row(os, phase_space_observables(psi, H, 0.0));
  const auto snapshot = [&](const std::string& name, double t) {
    auto ss = open_out(c, rep, name);
    write_phase_snapshot(ss, psi, t);
  };
  if (c.snapshot_every > 0) snapshot(step_name("rho", 0), 0.0);
  for (int s = 1; s <= c.steps; ++s) {
    prop.step(psi);
    if (s % c.output_every == 0 || s == c.steps) write_scalar_row(os, phase_space_observables(psi, H, s * c.dt));
    if (c.snapshot_every > 0 && s % c.snapshot_every == 0) snapshot(step_name("rho", s), s * c.dt);
  }
  snapshot("rho_final.wgrid", c.steps * c.dt);
  note(rep, "norm_drift", std::abs(psi.norm() - n0) / n0);
  note(rep, "l1_error_vs_characteristics",
       kvn_l1_error(psi, kvn_rho0(c), H, c.steps * c.dt, c.oracle_samples, c.seed, std::max(100, c.steps)));
}

// -- Klein-Gordon -------------------------------------------------------------------

void run_klein_gordon(const ScenarioConfig& c, RunReport& rep) {
  const auto& k = c.constants;
  const KleinGordonField phi = kg_plane_wave(c.kg_n0, c.kg_l0, c.kg_n1, c.kg_l1, c.kg_m0, c.kg_m1, k.hbar);
  const double p0 = k.hbar * 2.0 * std::numbers::pi * c.kg_m0 / c.kg_l0;
  const double p1 = k.hbar * 2.0 * std::numbers::pi * c.kg_m1 / c.kg_l1;
  const double lam = kg_eigenvalue(p0, p1, k);
  const KleinGordonField kphi = klein_gordon_apply(phi, c.potential, k);
  double res = 0.0, dev = 0.0, nn = 0.0;
  for (std::size_t q = 0; q < phi.values.size(); ++q) {
    res += std::norm(kphi.values[q]);
    dev += std::norm(kphi.values[q] - lam * phi.values[q]);
    nn += std::norm(phi.values[q]);
  }
  note(rep, "eigenvalue", lam);
  note(rep, "generator_norm", std::sqrt(res / nn));
  note(rep, "eigen_defect", std::sqrt(dev / nn));

  auto os = open_out(c, rep, "klein_gordon.csv");
  CsvWriter w(os, {"s", "re_overlap", "im_overlap", "phase_error"});
  double worst = 0.0;
  for (int step = 0; step <= c.steps; ++step) {
    if (step % c.output_every != 0 && step != c.steps) continue;
    const double s = step * c.dt;
    const KleinGordonField f = klein_gordon_propagate(phi, s, k);
    Complex ov = 0.0;
    for (std::size_t q = 0; q < phi.values.size(); ++q) ov += std::conj(phi.values[q]) * f.values[q];
    ov /= nn;
    const double err = std::abs(ov - std::exp(Complex(0.0, lam * s / k.hbar)));
    worst = std::max(worst, err);
    w.row({s, ov.real(), ov.imag(), err});
  }
  note(rep, "max_phase_error", worst);
}

// -- operator lab -------------------------------------------------------------------

void run_operator_check(const ScenarioConfig& c, RunReport& rep) {
  const auto rows = operator_report(c.op_n, c.constants.hbar, c.op_degree, c.op_kappas);
  auto os = open_out(c, rep, "operator_report.csv");
  CsvWriter w(os, {"check", "kappa", "degree", "residual"});
  double worst = 0.0;
  for (const auto& r : rows) {
    w.row({r.check}, {r.kappa, static_cast<double>(r.degree), r.residual});
    worst = std::max(worst, r.residual);
  }
  note(rep, "max_residual", worst);
}

// -- convergence studies ------------------------------------------------------------

int grid_points(double length, double dx, const std::string& what) {
  const double r = length / dx;
  const long n = std::lround(r);
  if (n < 8 || std::abs(r - static_cast<double>(n)) > 1e-9 * r || (n & (n - 1)) != 0)
    throw std::invalid_argument("convergence: " + what + " / dx = " + format_double(r) +
                                " is not a power of two >= 8");
  return static_cast<int>(n);
}

int steps_for(double total, double dt) {
  const double r = total / dt;
  const long n = std::lround(r);
  if (n < 1 || std::abs(r - static_cast<double>(n)) > 1e-9 * r)
    throw std::invalid_argument("convergence: dt level " + format_double(dt) + " does not divide the run time");
  return static_cast<int>(n);
}

std::vector<double> salpeter_dx_errors(const ScenarioConfig& c) {
  const ScalarHamiltonian H = scalar_hamiltonian(c);
  const double fine = *std::min_element(c.conv_levels.begin(), c.conv_levels.end());
  const int nref = 4 * grid_points(c.grid.lx, fine, "grid.lx");
  const auto evolve = [&](int n) {
    Wavefunction1D psi =
        gaussian_wavefunction(n, c.grid.x_min, c.grid.lx, c.x_center, c.width, c.momentum, c.constants.hbar);
    SalpeterPropagator prop(H, n, c.grid.x_min, c.grid.lx, c.dt);
    for (int s = 0; s < c.steps; ++s) prop.step(psi);
    return psi;
  };
  const Wavefunction1D ref = evolve(nref);
  std::vector<double> errs;
  for (double dx : c.conv_levels) {
    const int n = grid_points(c.grid.lx, dx, "grid.lx");
    const Wavefunction1D psi = evolve(n);
    const int stride = nref / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      s += std::norm(psi.values[static_cast<std::size_t>(i)] - ref.values[static_cast<std::size_t>(i * stride)]);
    errs.push_back(std::sqrt(s * psi.dx()));
  }
  return errs;
}

std::vector<double> kvn_errors(const ScenarioConfig& c) {
  const ScalarHamiltonian H = scalar_hamiltonian(c);
  const double total = c.steps * c.dt;
  const int oracle = std::max(100, c.steps);
  std::vector<double> errs;
  for (double level : c.conv_levels) {
    int nx = c.grid.nx, np = c.np;
    double dt = c.dt;
    if (c.conv_parameter == "dx") {
      nx = grid_points(c.grid.lx, level, "grid.lx");
      np = grid_points(c.lp, level, "grid.lp");
    } else {
      dt = level;
    }
    const PhaseSpaceField psi = kvn_step(kvn_initial(c, nx, np), H, dt, steps_for(total, dt), kvn_options(c));
    errs.push_back(kvn_l1_error(psi, kvn_rho0(c), H, total, c.oracle_samples, c.seed, oracle));
  }
  return errs;
}

void run_convergence(const ScenarioConfig& c, RunReport& rep) {
  std::vector<double> errs;
  const std::string& t = c.conv_target;
  const std::string& p = c.conv_parameter;
  if (t == "wigner" || t == "kvnd") {
    const SpinorField psi0 = initial_packet(c);
    if (p == "kappa") {
      const auto r = classical_limit_deviation(psi0, c.potential, c.conv_levels, c.dt, c.steps);
      for (const auto& pt : r.points) errs.push_back(pt.deviation);
    } else {
      errs = strang_errors(psi0, c.potential, wigner_mode(c, t == "kvnd"), c.dt * c.steps, c.conv_levels);
    }
  } else if (t == "salpeter") {
    errs = salpeter_dx_errors(c);
  } else {
    errs = kvn_errors(c);
  }
  const ConvergenceReport r = analyze_convergence(c.conv_levels, errs);
  auto os = open_out(c, rep, "convergence.csv");
  CsvWriter w(os, {"level", "parameter", "error", "local_slope"});
  for (std::size_t i = 0; i < errs.size(); ++i) {
    // local_slopes follow the sorted parameter order; the first level has none.
    const double ls = i == 0 || i - 1 >= r.local_slopes.size() ? std::nan("") : r.local_slopes[i - 1];
    w.row({static_cast<double>(i), r.parameters[i], r.errors[i], ls});
  }
  note(rep, "target", t);
  note(rep, "parameter", p);
  note(rep, "classification", r.classification);
  if (r.fit) {
    note(rep, "slope", r.fit->slope);
    note(rep, "r2", r.fit->r2);
  } else {
    note(rep, "slope", "undefined");
    note(rep, "r2", "undefined");
  }
}

std::string describe_location(const std::string& path, const ConfigError& e) {
  if (e.line() > 0) {
    const std::string what = e.what();
    const std::string prefix = "line " + std::to_string(e.line()) + ": ";
    return path + ":" + std::to_string(e.line()) + ": " +
           (what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what);
  }
  return path + ": " + e.what();
}

}  // namespace

RunReport run_scenario(const std::string& sub, const ScenarioConfig& c) {
  fs::create_directories(c.output_dir);
  RunReport rep;
  if (sub == "trajectory") run_trajectory(c, rep);
  else if (sub == "rotor") run_rotor(c, rep);
  else if (sub == "dirac-free") run_dirac_free(c, rep);
  else if (sub == "wigner") run_wigner(c, rep, false);
  else if (sub == "kvnd") run_wigner(c, rep, true);
  else if (sub == "salpeter") run_salpeter(c, rep);
  else if (sub == "kvn") run_kvn(c, rep);
  else if (sub == "klein-gordon") run_klein_gordon(c, rep);
  else if (sub == "operator-check") run_operator_check(c, rep);
  else if (sub == "convergence") run_convergence(c, rep);
  else throw std::invalid_argument("unknown subcommand '" + sub + "'");
  return rep;
}

int run_command(const std::string& sub, const std::string& path, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  std::string text;
  try {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    const ParsedConfig parsed = parse_config_with_lines(text);
    validate_config(parsed.config, sub, parsed.lines);
    cfg = parsed.config;
  } catch (const ConfigError& e) {
    err << "config error: " << describe_location(path, e) << "\n";
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  nlohmann::json manifest;
  manifest["subcommand"] = sub;
  manifest["scenario"] = cfg.scenario;
  manifest["version"] = version();
  manifest["config_path"] = path;
  manifest["config"] = serialize_config(cfg);
  manifest["threads"] = worker_count();
  int status = 0;
  RunReport rep;
  try {
    rep = run_scenario(sub, cfg);
    manifest["status"] = "ok";
  } catch (const NumericalAbort& e) {
    err << "numerical abort: " << e.what() << "\n";
    manifest["status"] = "aborted";
    manifest["diagnostic"] = e.what();
    status = 3;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << path << ": " << e.what() << "\n";
    manifest["status"] = "invalid";
    manifest["diagnostic"] = e.what();
    status = 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    manifest["status"] = "failed";
    manifest["diagnostic"] = e.what();
    status = 1;
  }
  manifest["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  manifest["artifacts"] = rep.artifacts;
  manifest["warnings"] = rep.warnings;
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& s : rep.summary) summary[s.key] = s.value;
  manifest["summary"] = summary;

  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  std::ofstream mf(fs::path(cfg.output_dir) / "manifest.json", std::ios::binary);
  if (mf) mf << manifest.dump(2) << "\n";

  for (const auto& w : rep.warnings) err << "warning: " << w << "\n";
  if (status == 0) {
    out << sub << ": wrote " << rep.artifacts.size() << " file(s) to " << cfg.output_dir << "\n";
    for (const auto& s : rep.summary) out << "  " << s.key << " = " << s.value << "\n";
  }
  return status;
}

}  // namespace relwig::cli
