#pragma once

// Spinorial Wigner function psi(X, Theta) on a periodic (X^1, Theta^1) grid.
//
// Lab-time evolution i hbar c d psi / dX^0 = H psi with
//
//   H = -e c D_0 - e c sum_k alpha^k D_k - c alpha^1 i hbar d/dX + gamma^0 m c^2 - c hbar k0
//
//   D_mu = [A_mu(X + hbar kappa Theta/2) - A_mu(X - hbar kappa Theta/2)] / kappa   (kappa > 0)
//   D_mu = hbar (dA_mu/dX) Theta                                                     (KvND, kappa -> 0)
//
// Grid: X_i = x_min + i dx (i < Nx), Theta_j = -L_theta/2 + j dtheta (j < Ntheta),
// so Theta = 0 sits at j = Ntheta/2. Storage is X-major, Theta-minor,
// component-innermost: data[(i * Ntheta + j) * 4 + c].
//
// Current transform convention:
//   J_XP(X, P_j) = dtheta sum_l J_XTheta(X, Theta_l) exp(-i P_j Theta_l),
//   P_j = (j - Ntheta/2) 2 pi / L_theta,
// hence sum_j |J_XP|^2 dP = 2 pi sum_l |J_XTheta|^2 dtheta.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relwig/clifford.hpp"
#include "relwig/constants.hpp"
#include "relwig/dirac.hpp"
#include "relwig/potential.hpp"

namespace relwig {

struct XThetaGrid {
  int nx = 128;
  int ntheta = 64;
  double x_min = -20.0;
  double lx = 40.0;
  double ltheta = 8.0;
  /// Spectator X^0 frequency.
  double k0 = 0.0;

  double dx() const { return lx / nx; }
  double dtheta() const { return ltheta / ntheta; }
  double x(int i) const { return x_min + i * dx(); }
  double theta(int j) const { return -0.5 * ltheta + j * dtheta(); }
  int theta_zero_index() const { return ntheta / 2; }
  std::size_t nodes() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ntheta); }

  /// Throws std::invalid_argument unless Nx, Ntheta are powers of two >= 8 and lengths are positive.
  void validate() const;

  bool operator==(const XThetaGrid&) const = default;
};

class SpinorField {
 public:
  SpinorField() = default;
  SpinorField(const XThetaGrid& grid, const PhysicalConstants& k, GammaRep rep = GammaRep::Dirac);

  const XThetaGrid& grid() const { return grid_; }
  const PhysicalConstants& constants() const { return k_; }
  GammaRep rep() const { return rep_; }

  std::size_t index(int i, int j) const { return (static_cast<std::size_t>(i) * grid_.ntheta + j) * 4; }
  Spinor at(int i, int j) const;
  void set(int i, int j, const Spinor& v);

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  /// Quantumness tag and evolution coordinate of the stored state.
  double kappa = 1.0;
  double x0 = 0.0;

  /// sum |psi|^2 dx dtheta in a fixed summation order.
  double norm() const;
  bool all_finite() const;
  void scale(double s);

 private:
  XThetaGrid grid_;
  PhysicalConstants k_;
  GammaRep rep_ = GammaRep::Dirac;
  std::vector<Complex> data_;
};

/// sqrt(sum |a - b|^2 dx dtheta).
double l2_distance(const SpinorField& a, const SpinorField& b);

struct PropagationMode {
  bool kvnd = false;
  double kappa = 1.0;

  static PropagationMode quantum(double kappa) { return {false, kappa}; }
  static PropagationMode koopman() { return {true, 0.0}; }
  /// Throws std::invalid_argument for kappa outside (0, 1] in kappa mode.
  void validate() const;
};

/// [A(X + hbar kappa Theta/2) - A(X - hbar kappa Theta/2)] / kappa. Throws for kappa <= 0.
PotentialComponents potential_difference(const PotentialSpec& A, double X, double theta, double kappa,
                                         const PhysicalConstants& k);

/// hbar A'(X) Theta, the kappa -> 0 limit of potential_difference.
PotentialComponents kvnd_difference(const PotentialSpec& A, double X, double theta, const PhysicalConstants& k);

/// Pointwise part -e c (D_0 + alpha^k D_k) of the Hamiltonian.
Matrix4C potential_matrix(const PotentialComponents& D, const PhysicalConstants& k, GammaRep rep);

/// c alpha^1 hbar k1 + gamma^0 m c^2 - c hbar k0.
Matrix4C kinetic_matrix(double k1, double k0, const PhysicalConstants& k, GammaRep rep);

/// H psi for kappa > 0; the derivative is applied spectrally.
SpinorField wigner_hamiltonian_apply(const SpinorField& psi, const PotentialSpec& A, double kappa);
/// H psi with D replaced by the KvND limit.
SpinorField kvnd_apply(const SpinorField& psi, const PotentialSpec& A);

/// Strang propagator: half potential, full kinetic, half potential.
/// Exponentials are cached at construction.
class WignerPropagator {
 public:
  WignerPropagator(const XThetaGrid& grid, const PotentialSpec& A, const PropagationMode& mode,
                   const PhysicalConstants& k, GammaRep rep, double dx0);
  ~WignerPropagator();
  WignerPropagator(const WignerPropagator&) = delete;
  WignerPropagator& operator=(const WignerPropagator&) = delete;

  /// One Strang step in place. Throws NumericalAbort when the relative norm
  /// change exceeds norm_tolerance or values become non-finite.
  void step(SpinorField& psi);

  double dx0() const { return dx0_; }
  double norm_tolerance = 1e-8;
  /// Boundary-cell density fraction above which a leak warning is recorded.
  double leak_tolerance = 1e-8;

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double dx0_;
  std::vector<std::string> warnings_;
  bool leak_warned_ = false;
};

struct PropagationResult {
  SpinorField final;
  /// States at X^0 = 0, stride*dx0, 2*stride*dx0, ... (always includes the initial state).
  std::vector<SpinorField> stored;
  std::vector<std::string> warnings;
};

/// Runs n Strang steps. stride = 0 stores only the initial state.
PropagationResult propagate(const SpinorField& psi0, const PotentialSpec& A, const PropagationMode& mode, double dx0,
                            int n, int stride = 0,
                            const std::function<void(int step, const SpinorField&)>& observer = {});

struct KappaDeviation {
  double kappa;
  double deviation;
};

struct ClassicalLimitReport {
  std::vector<KappaDeviation> points;
  /// Log-log slope of deviation against kappa; empty when undefined.
  std::optional<double> slope;
  bool monotone = true;
};

ClassicalLimitReport classical_limit_deviation(const SpinorField& psi0, const PotentialSpec& A,
                                               const std::vector<double>& kappas, double dx0, int n);

/// L2 error of propagating psi0 to X^0 = total with each step in dts, measured
/// against a reference run at min(dts)/4. Each step must divide total.
std::vector<double> strang_errors(const SpinorField& psi0, const PotentialSpec& A, const PropagationMode& mode,
                                  double total, const std::vector<double>& dts);

class CurrentGrid {
 public:
  CurrentGrid(int nx, int ncols, bool momentum_space);

  int nx() const { return nx_; }
  int ncols() const { return ncols_; }
  bool momentum_space() const { return momentum_; }

  /// J^mu at node (i, j): Tr(J-slash gamma^mu) for the stored matrix (complex in general after the P transform).
  Complex component(int i, int j, int mu) const { return comps_[(static_cast<std::size_t>(i) * ncols_ + j) * 4 + mu]; }
  Complex& component(int i, int j, int mu) { return comps_[(static_cast<std::size_t>(i) * ncols_ + j) * 4 + mu]; }
  const Matrix4C& matrix(int i, int j) const { return mats_[static_cast<std::size_t>(i) * ncols_ + j]; }
  Matrix4C& matrix(int i, int j) { return mats_[static_cast<std::size_t>(i) * ncols_ + j]; }

  std::vector<Complex>& components() { return comps_; }
  const std::vector<Complex>& components() const { return comps_; }

 private:
  int nx_, ncols_;
  bool momentum_;
  std::vector<Complex> comps_;
  std::vector<Matrix4C> mats_;
};

/// J-slash = psi psi^dagger gamma^0 per node, with components J^mu = psi^dagger gamma^0 gamma^mu psi.
CurrentGrid current_xtheta(const SpinorField& psi);
/// Fourier transform of current_xtheta over Theta (see header convention).
CurrentGrid current_xp(const SpinorField& psi);
/// P_j of current_xp column j.
double momentum_of_column(const XThetaGrid& g, int j);

/// Returns warnings when width < hbar/(mc) or gradient >= 2 m c^2 * mc / hbar.
std::vector<std::string> validate_regime(double width, double potential_gradient, const PhysicalConstants& k);

struct Observables {
  double x0, norm, mean_x, mean_p, j0_integral;
};

/// norm, <X>, <-i d/dTheta>, and sum_X J^0(X, Theta = 0) dx.
Observables observables(const SpinorField& psi);
/// <alpha^1> normalised by the norm.
double mean_alpha1(const SpinorField& psi);

void write_observables_header(std::ostream& os);
void write_observables_row(std::ostream& os, const Observables& o);

/// |central difference of <X> in X^0 minus <alpha^1>| at every interior stored state.
/// States must be equally spaced by dx0.
std::vector<double> ehrenfest_check(const std::vector<SpinorField>& states, double dx0);

/// RMS over X of d J^0/dX^0 + d J^1/dX at the Theta = 0 slice, both by central
/// differences, evaluated at the middle state.
double continuity_residual(const SpinorField& prev, const SpinorField& cur, const SpinorField& next, double dx0);

/// Gaussian packet exp(-(X - xc)^2 / (4 sx^2) + i p X / hbar) times exp(-Theta^2 / (4 st^2))
/// (or 1 when st <= 0), times the plus_up amplitude at momentum (p, 0, 0). Unit norm.
SpinorField gaussian_packet(const XThetaGrid& grid, const PhysicalConstants& k, GammaRep rep, double xc, double sx,
                            double p, double theta_sigma);

/// Theta-independent superposition sum_n c_n w_{+up}(hbar k_n) exp(-i p_n . x / hbar)
/// over grid modes k_n = 2 pi n / L_x. Doubles as the analytic oracle when evaluated at X^0 > 0.
struct PlaneWaveSuperposition {
  std::vector<int> modes;
  std::vector<Complex> coefficients;
  Branch branch = Branch::PlusUp;

  /// Gaussian weights exp(-(hbar k_n - p)^2 / (4 sp^2) - i k_n xc) over |n| <= nmax.
  static PlaneWaveSuperposition gaussian(const XThetaGrid& grid, const PhysicalConstants& k, double xc, double p,
                                         double sp, int nmax);

  SpinorField evaluate(const XThetaGrid& grid, const PhysicalConstants& k, GammaRep rep, double x0) const;
};

}  // namespace relwig
