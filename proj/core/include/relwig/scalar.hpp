#pragma once

// One-dimensional spinless solvers.
//
//   quantum Salpeter    i hbar d psi/dt = [V(p) + U(x)] psi,  V(p) = sqrt((c p)^2 + c^4 m^2)
//   Koopman-von Neumann i dPsi/dt = [-i V'(P) d/dX + i U'(X) d/dP + f(X, P)] Psi
//
// The KvN density rho = |Psi|^2 obeys the Liouville equation
// d rho/dt = {H_c, rho} = U'(X) d rho/dP - V'(P) d rho/dX.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "relwig/clifford.hpp"
#include "relwig/constants.hpp"
#include "relwig/potential.hpp"

namespace relwig {

/// U(x) = sum_n poly[n] x^n + sine_amplitude sin(sine_wavenumber x).
struct ScalarPotential {
  std::vector<double> poly;
  double sine_amplitude = 0.0;
  double sine_wavenumber = 1.0;

  static ScalarPotential none() { return {}; }
  /// m omega^2 x^2 / 2.
  static ScalarPotential harmonic(double m, double omega) { return {{0.0, 0.0, 0.5 * m * omega * omega}, 0.0, 1.0}; }

  double U(double x) const;
  double dU(double x) const;
  bool is_zero() const;

  bool operator==(const ScalarPotential&) const = default;
};

enum class KineticForm { Salpeter, Newtonian };

/// Classical / quantum Hamiltonian V(P) + U(X).
struct ScalarHamiltonian {
  ScalarPotential potential;
  PhysicalConstants constants;
  /// Newtonian uses V(P) = P^2 / 2m.
  KineticForm kinetic = KineticForm::Salpeter;

  double V(double p) const;
  double dV(double p) const;
  double U(double x) const { return potential.U(x); }
  double dU(double x) const { return potential.dU(x); }
  double energy(double x, double p) const { return V(p) + U(x); }
};

struct Wavefunction1D {
  int n = 256;
  double x_min = -20.0;
  double length = 40.0;
  std::vector<Complex> values;

  Wavefunction1D() = default;
  Wavefunction1D(int n, double x_min, double length);

  double dx() const { return length / n; }
  double x(int i) const { return x_min + i * dx(); }
  double norm() const;
  void normalize();
};

/// exp(-(x - xc)^2 / (4 sx^2) + i p x / hbar), unit norm.
Wavefunction1D gaussian_wavefunction(int n, double x_min, double length, double xc, double sx, double p,
                                     double hbar);

struct ScalarObservables {
  double t, norm, mean_x, mean_p, energy;
};

ScalarObservables scalar_observables(const Wavefunction1D& psi, const ScalarHamiltonian& H, double t);
void write_scalar_header(std::ostream& os);
void write_scalar_row(std::ostream& os, const ScalarObservables& o);

/// Strang split-step: exp(-iU dt/2hbar), exact exp(-iV(hbar k) dt/hbar) per mode, exp(-iU dt/2hbar).
class SalpeterPropagator {
 public:
  SalpeterPropagator(const ScalarHamiltonian& H, int n, double x_min, double length, double dt);
  ~SalpeterPropagator();
  SalpeterPropagator(const SalpeterPropagator&) = delete;
  SalpeterPropagator& operator=(const SalpeterPropagator&) = delete;

  /// Throws NumericalAbort when the relative norm change exceeds norm_tolerance.
  void step(Wavefunction1D& psi);

  double norm_tolerance = 1e-8;
  double leak_tolerance = 1e-8;
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::vector<std::string> warnings_;
  bool leak_warned_ = false;
};

Wavefunction1D salpeter_step(const Wavefunction1D& psi, const ScalarHamiltonian& H, double dt, int n);

/// <V'(p)> from |psi-hat|^2, the group-velocity prediction for a free packet.
double mean_group_velocity(const Wavefunction1D& psi, const ScalarHamiltonian& H);

/// Complex field on a periodic (X, P) grid, X-major.
struct PhaseSpaceField {
  int nx = 64, np = 64;
  double x_min = -8.0, lx = 16.0;
  double p_min = -8.0, lp = 16.0;
  std::vector<Complex> values;

  PhaseSpaceField() = default;
  PhaseSpaceField(int nx, double x_min, double lx, int np, double p_min, double lp);

  double dx() const { return lx / nx; }
  double dp() const { return lp / np; }
  double x(int i) const { return x_min + i * dx(); }
  double p(int j) const { return p_min + j * dp(); }
  Complex& operator()(int i, int j) { return values[static_cast<std::size_t>(i) * np + j]; }
  Complex operator()(int i, int j) const { return values[static_cast<std::size_t>(i) * np + j]; }

  double norm() const;
  /// rho = |Psi|^2 at every node.
  std::vector<double> density() const;
};

/// Psi = sqrt(Gaussian density) centred at (xc, pc) with widths (sx, sp); unit norm.
PhaseSpaceField gaussian_phase_space(int nx, double x_min, double lx, int np, double p_min, double lp, double xc,
                                     double pc, double sx, double sp);

struct KvnOptions {
  /// Real phase generator f(X, P); absent means f = 0.
  std::function<double(double, double)> phase;
};

/// Strang-ordered spectral advection: half X-shift by V'(P) dt/2 per P row,
/// full P-shift by -U'(X) dt per X column, half X-shift.
class KvnPropagator {
 public:
  KvnPropagator(const ScalarHamiltonian& H, const PhaseSpaceField& layout, double dt, const KvnOptions& opts = {});
  ~KvnPropagator();
  KvnPropagator(const KvnPropagator&) = delete;
  KvnPropagator& operator=(const KvnPropagator&) = delete;

  void step(PhaseSpaceField& psi);
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::vector<std::string> warnings_;
};

PhaseSpaceField kvn_step(const PhaseSpaceField& psi, const ScalarHamiltonian& H, double dt, int n,
                         const KvnOptions& opts = {});

/// Band-limited (trigonometric) interpolation of a periodic phase-space field.
class TrigInterpolator {
 public:
  explicit TrigInterpolator(const PhaseSpaceField& psi);
  Complex operator()(double x, double p) const;

 private:
  int nx_, np_;
  double x_min_, lx_, p_min_, lp_;
  std::vector<Complex> coeffs_;  // normalised 2D DFT, X-major
};

/// Monte Carlo L1 distance between |Psi|^2 on the grid (trigonometric
/// interpolation) and the exact push-forward rho0(backward characteristics)
/// at `samples` uniform points drawn with a seeded mt19937_64.
double kvn_l1_error(const PhaseSpaceField& evolved, const std::function<double(double, double)>& rho0,
                    const ScalarHamiltonian& H, double total_time, int samples, std::uint64_t seed,
                    int oracle_steps);

/// RK4 on dX/dt = V'(P), dP/dt = -U'(X). Any sign of dt is allowed.
std::vector<std::pair<double, double>> characteristics_oracle(const std::vector<std::pair<double, double>>& samples,
                                                              const ScalarHamiltonian& H, double dt, int n);

/// RMS over the grid of the central-difference d rho/dt minus the spectral
/// Poisson bracket {H_c, rho}, at every interior state of an equally spaced trajectory.
std::vector<double> liouville_residual(const std::vector<PhaseSpaceField>& trajectory, const ScalarHamiltonian& H,
                                       double dt);

/// Field on a periodic (X^0, X^1) grid for the Klein-Gordon generator.
struct KleinGordonField {
  int n0 = 16, n1 = 16;
  double l0 = 1.0, l1 = 1.0;
  std::vector<Complex> values;  // X^0-major

  KleinGordonField() = default;
  KleinGordonField(int n0, double l0, int n1, double l1);

  double x0(int a) const { return a * l0 / n0; }
  double x1(int b) const { return b * l1 / n1; }
  Complex& operator()(int a, int b) { return values[static_cast<std::size_t>(a) * n1 + b]; }
  Complex operator()(int a, int b) const { return values[static_cast<std::size_t>(a) * n1 + b]; }
  double norm() const;
};

/// exp(-i (p_0 X^0 + p_1 X^1) / hbar) sampled on the grid, with lower-index momenta p_0 = hbar 2 pi m0 / l0 and
/// p_1 = hbar 2 pi m1 / l1 (m0, m1 integers).
KleinGordonField kg_plane_wave(int n0, double l0, int n1, double l1, int m0, int m1, double hbar);

/// (p.p - m^2 c^2) / (2m) for lower-index momenta (p0, p1).
double kg_eigenvalue(double p0, double p1, const PhysicalConstants& k);

/// K phi = (1/2m) g^{mu mu} (p_mu - e A_mu)^2 phi - m c^2 / 2 phi, p_mu = i hbar d/dx^mu applied spectrally.
/// A may depend on X^1 only (the PotentialSpec family).
KleinGordonField klein_gordon_apply(const KleinGordonField& phi, const PotentialSpec& A,
                                    const PhysicalConstants& k);

/// exp(+i K s / hbar) for A = 0, applied per Fourier mode.
KleinGordonField klein_gordon_propagate(const KleinGordonField& phi, double s, const PhysicalConstants& k);

}  // namespace relwig
