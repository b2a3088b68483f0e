// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "relwig/clifford.hpp"
#include "relwig/convergence.hpp"
#include "relwig/dirac.hpp"
#include "relwig/dynamics.hpp"
#include "relwig/operator_lab.hpp"
#include "relwig/scalar.hpp"
#include "relwig/wigner_field.hpp"

namespace acc {

using namespace relwig;

namespace {

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome clifford_suite() {
  double worst = 0.0;
  const Matrix4C I = Matrix4C::Identity();
  for (GammaRep rep : {GammaRep::Dirac, GammaRep::Weyl}) {
    const Matrix4C& g0 = gamma(rep, 0);
    for (int mu = 0; mu < 4; ++mu) {
      const Matrix4C& gm = gamma(rep, mu);
      for (int nu = 0; nu < 4; ++nu) {
        const Matrix4C& gn = gamma(rep, nu);
        const double metric = mu == nu ? MetricSignature::g(mu) : 0.0;
        worst = std::max(worst, (gm * gn + gn * gm - 2.0 * metric * I).norm());
      }
      // gamma^mu dagger = gamma^0 gamma^mu gamma^0
      worst = std::max(worst, (gm.adjoint() - g0 * gm * g0).norm());
      // (gamma^mu)^-1 = gamma_mu
      worst = std::max(worst, (gm * gamma_lower(rep, mu) - I).norm());
      worst = std::max(worst, (gamma_lower(rep, mu) * gm - I).norm());
    }
  }
  return {worst < 1e-14, fmt("max defect %.3g over 16 anticommutators, adjoint and inverse, both reps", worst)};
}

Outcome hyperbolic_motion() {
  PhysicalConstants k{1.0, 1.0, 2.0, 0.5};
  const double e0 = 1.5;
  const double s_end = 5.0 * k.m * k.c / (k.e * e0);
  const int n = 10000;
  const auto A = PotentialSpec::constant_e(e0);
  PhasePoint p0;
  p0.X = FourVector::upper(0.0, 0.0, 0.0, 0.0);
  p0.P = canonical_momentum(p0.X, FourVector::upper(k.c, 0.0, 0.0, 0.0), A, k);
  const auto tr = integrate_hamiltonian(p0, A, k, s_end / n, n);
  double rel = 0.0;
  for (const auto& pt : tr.points) {
    if (pt.s <= 0.0) continue;
    const double exact = k.c * std::sinh(k.e * e0 * pt.s / (k.m * k.c));
    const double u1 = four_velocity(pt, A, k)[1];
    rel = std::max(rel, std::abs(u1 - exact) / std::abs(exact));
  }
  return {rel < 1e-8 && tr.mass_shell_drift < 1e-10,
          fmt("max relative u1 error %.3g, mass-shell drift %.3g", rel, tr.mass_shell_drift)};
}

Outcome rotor_equivalence() {
  const PhysicalConstants k{1.0, 1.0, 1.0, 1.0};
  const int n = 1000;
  const double ds = 2e-3;
  double worst_x = 0.0, worst_c = 0.0;
  for (const auto& A : {PotentialSpec::constant_e(0.8), PotentialSpec::constant_b(1.2)}) {
    for (GammaRep rep : {GammaRep::Dirac, GammaRep::Weyl}) {
      const FourVector u = FourVector::upper(std::sqrt(1.0 + 0.3 * 0.3 + 0.2 * 0.2 + 0.1 * 0.1), 0.3, 0.2, 0.1);
      PhasePoint p0;
      p0.X = FourVector::upper(0.0, 0.5, -0.2, 0.1);
      p0.P = canonical_momentum(p0.X, u, A, k);
      const auto ham = integrate_hamiltonian(p0, A, k, ds, n);
      RotorState r0;
      r0.X = p0.X;
      r0.L = boost_from_velocity(u, k, rep);
      RotorOptions opts;
      opts.rep = rep;
      const auto rot = integrate_rotor(r0, A, k, ds, n, opts);
      double scale = 0.0, diff = 0.0;
      for (std::size_t i = 0; i < ham.points.size(); ++i) {
        for (int mu = 0; mu < 4; ++mu) {
          scale = std::max(scale, std::abs(ham.points[i].X[mu]));
          diff = std::max(diff, std::abs(ham.points[i].X[mu] - rot.states[i].X[mu]));
        }
      }
      worst_x = std::max(worst_x, diff / scale);
      worst_c = std::max(worst_c, rot.constraint_drift);
    }
  }
  return {worst_x < 1e-8 && worst_c < 1e-8,
          fmt("max relative X disagreement %.3g, rotor constraint drift %.3g", worst_x, worst_c)};
}

Outcome dirac_oracle() {
  const PhysicalConstants k{1.0, 1.0, 1.0, 1.0};
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> mom(-3.0, 3.0), pos(-5.0, 5.0);
  double worst = 0.0, worst_slash = 0.0;
  const double mc = k.m * k.c;
  for (int s = 0; s < 100; ++s) {
    const double p1 = mom(rng), p2 = mom(rng), p3 = mom(rng);
    const FourVector x = FourVector::upper(pos(rng), pos(rng), pos(rng), pos(rng));
    for (Branch b : {Branch::PlusUp, Branch::PlusDown, Branch::MinusUp, Branch::MinusDown})
      for (GammaRep rep : {GammaRep::Dirac, GammaRep::Weyl}) {
        const FourVector p = on_shell_momentum(b, p1, p2, p3, k);
        worst = std::max(worst, dirac_residual(free_spinor(b, p, x, k, rep), p, PotentialSpec::none(), x, k, rep));
      }
    const FourVector p = on_shell_momentum(Branch::PlusUp, p1, p2, p3, k);
    const Matrix4C L = branch_rotor(Branch::PlusUp, p, x, k);
    const double scale = slash(p).norm();
    worst_slash = std::max(worst_slash, (slash(p) - mc * L * L.adjoint() * gamma(GammaRep::Dirac, 0)).norm() / scale);
    const FourVector J = dirac_current(free_spinor(Branch::PlusUp, p, x, k));
    worst_slash = std::max(worst_slash, (slash(p) - mc * slash(J)).norm() / scale);
  }
  const FourVector rest = on_shell_momentum(Branch::PlusUp, 0.0, 0.0, 0.0, k);
  Spinor up, down;
  up << 1.0, 0.0, 0.0, 0.0;
  down << 0.0, Complex(0.0, 1.0), 0.0, 0.0;
  const auto phase_aligned_diff = [](const Spinor& a, const Spinor& ref) {
    const Complex ov = ref.dot(a);
    const Complex phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0);
    return (a - phase * ref).norm();
  };
  const double rest_diff = std::max(phase_aligned_diff(free_amplitude(Branch::PlusUp, rest, k), up),
                                    phase_aligned_diff(free_amplitude(Branch::PlusDown, rest, k), down));
  return {worst < 1e-12 && rest_diff == 0.0 && worst_slash < 1e-12,
          fmt("max generator residual %.3g, rest-form difference %.3g, p-slash relation defect %.3g", worst, rest_diff,
              worst_slash)};
}

SpinorField sine_packet(const XThetaGrid& g, const PhysicalConstants& k) {
  return gaussian_packet(g, k, GammaRep::Dirac, -2.0, 2.0, 0.5, 1.0);
}

Outcome wigner_unitarity() {
  const PhysicalConstants k{1.0, 1.0, 1.0, 1.0};
  XThetaGrid g;
  g.nx = 128;
  g.ntheta = 64;
  const auto A = PotentialSpec::sine(0.5, 0.3, 0);
  const SpinorField psi0 = sine_packet(g, k);
  const double n0 = psi0.norm();
  const auto run = propagate(psi0, A, PropagationMode::quantum(1.0), 0.01, 1000);
  const double drift = std::abs(run.final.norm() - n0) / n0;
  const std::vector<double> dts{0.04, 0.02, 0.01};
  const auto errs = strang_errors(psi0, A, PropagationMode::quantum(1.0), 0.8, dts);
  const auto rep = analyze_convergence(dts, errs);
  const double slope = rep.fit ? rep.fit->slope : std::nan("");
  return {drift < 1e-10 && std::abs(slope - 2.0) <= 0.2,
          fmt("norm drift %.3g over 1000 steps, dt slope %.4f (R2 %.6f)", drift, slope, rep.fit ? rep.fit->r2 : 0.0)};
}

Outcome classical_limit() {
  const PhysicalConstants k{1.0, 1.0, 1.0, 1.0};
  XThetaGrid g;
  g.nx = 128;
  g.ntheta = 64;
  const SpinorField psi0 = gaussian_packet(g, k, GammaRep::Dirac, 0.0, 1.5, 0.5, 1.0);
  const std::vector<double> kappas{0.2, 0.1, 0.05};
  const auto cubic = PotentialSpec::polynomial(0, {0.0, 0.0, 0.0, 0.02});
  const auto rc = classical_limit_deviation(psi0, cubic, kappas, 0.02, 100);
  const auto rl = classical_limit_deviation(psi0, PotentialSpec::constant_e(0.3), kappas, 0.02, 100);
  double lin = 0.0;
  for (const auto& p : rl.points) lin = std::max(lin, p.deviation);
  const double slope = rc.slope.value_or(std::nan(""));
  return {rc.slope && std::abs(slope - 2.0) <= 0.2 && lin < 1e-12,
          fmt("cubic kappa slope %.4f, linear max deviation %.3g", slope, lin)};
}

Outcome free_field() {
  const PhysicalConstants k{1.0, 1.0, 1.0, 1.0};
  XThetaGrid g;
  g.nx = 128;
  g.ntheta = 16;
  g.k0 = 0.7;
  const auto sup = PlaneWaveSuperposition::gaussian(g, k, -3.0, 1.0, 0.5, 40);
  const SpinorField psi0 = sup.evaluate(g, k, GammaRep::Dirac, 0.0);
  const double T = 5.0;
  const auto run = propagate(psi0, PotentialSpec::none(), PropagationMode::quantum(1.0), 0.05, 100);
  const double err = l2_distance(run.final, sup.evaluate(g, k, GammaRep::Dirac, T));
  return {err < 1e-6, fmt("L2 error %.3g against the analytic superposition at X0 = %.1f", err, T)};
}

Outcome salpeter() {
  ScalarHamiltonian H;
  const int n = 512;
  const double x_min = -40.0, len = 80.0, dt = 0.01;
  const Wavefunction1D psi0 = gaussian_wavefunction(n, x_min, len, -10.0, 2.0, 1.0, H.constants.hbar);
  const double v = mean_group_velocity(psi0, H);
  const double x_start = scalar_observables(psi0, H, 0.0).mean_x;
  Wavefunction1D psi = psi0;
  SalpeterPropagator prop(H, n, x_min, len, dt);
  for (int s = 0; s < 1000; ++s) prop.step(psi);
  const double T = 1000 * dt;
  const auto o = scalar_observables(psi, H, T);
  const double vel_err = std::abs((o.mean_x - x_start) / T - v);
  const double drift = std::abs(o.norm - psi0.norm()) / psi0.norm();
  return {vel_err < 1e-6 && drift < 1e-10,
          fmt("<x> velocity error %.3g (<V'> = %.6f), norm drift %.3g", vel_err, v, drift)};
}

}  // namespace

double kvn_harmonic_error(int n, std::uint64_t seed, int samples) {
  ScalarHamiltonian H;
  H.potential = ScalarPotential::harmonic(1.0, 1.0);
  const double xc = 1.5, pc = 0.0, sx = 0.6, sp = 0.6;
  const double L = 12.0, T = 2.0;
  const int steps = 8 * n;
  const PhaseSpaceField psi0 = gaussian_phase_space(n, -0.5 * L, L, n, -0.5 * L, L, xc, pc, sx, sp);
  const PhaseSpaceField psi = kvn_step(psi0, H, T / steps, steps);
  const auto rho0 = [=](double x, double p) {
    const double u = (x - xc) / sx, w = (p - pc) / sp;
    return std::exp(-0.5 * (u * u + w * w)) / (2.0 * std::numbers::pi * sx * sp);
  };
  return kvn_l1_error(psi, rho0, H, T, samples, seed, 400);
}

namespace {

Outcome kvn_characteristics() {
  const std::vector<int> ns{16, 32, 64};
  std::vector<double> dx, err;
  for (int n : ns) {
    dx.push_back(12.0 / n);
    err.push_back(kvn_harmonic_error(n, 7, 10000));
  }
  const auto rep = analyze_convergence(dx, err);
  const double order = rep.fit ? rep.fit->slope : std::nan("");
  return {rep.fit && order >= 1.0,
          fmt("L1 errors %.3g -> %.3g, fitted order %.3f", err.front(), err.back(), order)};
}

double field_norm(const KleinGordonField& f) { return std::sqrt(f.norm()); }

Outcome klein_gordon() {
  const PhysicalConstants k{1.0, 1.0, 1.0, 1.0};
  // On shell: p0^2 - p1^2 = m^2 c^2 with p1 = 2 pi / l1 and p0 = 2 pi / l0.
  const double l1 = 1.0;
  const double p1 = 2.0 * std::numbers::pi / l1;
  const double p0 = std::sqrt(p1 * p1 + k.m * k.m * k.c * k.c);
  const double l0 = 2.0 * std::numbers::pi / p0;
  KleinGordonField on = kg_plane_wave(16, l0, 16, l1, 1, 1, k.hbar);
  const double on_res = field_norm(klein_gordon_apply(on, PotentialSpec::none(), k)) / field_norm(on);

  KleinGordonField off = kg_plane_wave(16, 1.0, 16, 1.0, 2, 1, k.hbar);
  const double lam = kg_eigenvalue(k.hbar * 2.0 * std::numbers::pi * 2.0, k.hbar * 2.0 * std::numbers::pi, k);
  const double s = 0.37;
  const KleinGordonField evolved = klein_gordon_propagate(off, s, k);
  Complex overlap = 0.0;
  double nn = 0.0;
  for (std::size_t q = 0; q < off.values.size(); ++q) {
    overlap += std::conj(off.values[q]) * evolved.values[q];
    nn += std::norm(off.values[q]);
  }
  const Complex ph = std::exp(Complex(0.0, lam * s / k.hbar));
  // Unwrapped: the accumulated phase lam * s / hbar exceeds pi.
  const double rate = lam + std::arg(overlap / nn * std::conj(ph)) * k.hbar / s;
  double shape = 0.0;
  for (std::size_t q = 0; q < off.values.size(); ++q)
    shape = std::max(shape, std::abs(evolved.values[q] - ph * off.values[q]));
  const KleinGordonField applied = klein_gordon_apply(off, PotentialSpec::none(), k);
  double eig = 0.0;
  for (std::size_t q = 0; q < off.values.size(); ++q)
    eig = std::max(eig, std::abs(applied.values[q] - lam * off.values[q]) / std::abs(lam));
  const double rate_err = std::max({std::abs(rate - lam) / std::abs(lam), shape, eig});
  return {on_res < 1e-10 && rate_err < 1e-10,
          fmt("on-shell |K phi| %.3g, off-shell phase-rate defect %.3g", on_res, rate_err)};
}

Outcome operator_lab() {
  const auto rows = operator_report(32, 1.0, 4, {0.0, 0.5, 1.0});
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.residual);
  return {worst < 1e-12, fmt("%.0f checks, max low-subspace residual %.3g", static_cast<double>(rows.size()), worst)};
}

}  // namespace

std::vector<Criterion> criteria() {
  return {
      {1, "clifford suite", 1.0, clifford_suite},
      {2, "constant-E hyperbolic motion", 1.0, hyperbolic_motion},
      {3, "rotor-Hamiltonian equivalence", 2.0, rotor_equivalence},
      {4, "Dirac plane-wave oracle", 1.0, dirac_oracle},
      {5, "Wigner propagator unitarity and order", 60.0, wigner_unitarity},
      {6, "classical limit", 60.0, classical_limit},
      {7, "free-field cross-check", 30.0, free_field},
      {8, "Salpeter group velocity", 10.0, salpeter},
      {9, "KvN vs characteristics", 60.0, kvn_characteristics},
      {10, "Klein-Gordon plane waves", 5.0, klein_gordon},
      {11, "operator lab", 5.0, operator_lab},
      {12, "determinism", 60.0, determinism},
  };
}

}  // namespace acc

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  int failed = 0;
  for (const auto& c : acc::criteria()) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    acc::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs < c.budget_seconds;
    if (!pass) ++failed;
    std::printf("%s [%2d] %s: %s (%.2f s, budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.budget_seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
