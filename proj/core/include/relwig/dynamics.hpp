#pragma once

// Covariant classical dynamics of a charged point particle, in proper time s.
//
// Hamiltonian form (extended phase space):
//   pi_mu = P_mu - e A_mu
//   dX^mu/ds = pi^mu / m
//   dP_mu/ds = (e/m) (d_mu A_nu) pi^nu
//   H = pi.pi / (2m) - m c^2 / 2
//
// Rotor form:
//   u-slash = c L gamma^0 L^-1 = c L L^dagger gamma^0
//   dL/ds  = (e / 2m) F-slash L

#include <iosfwd>
#include <string>
#include <vector>

#include "relwig/clifford.hpp"
#include "relwig/constants.hpp"
#include "relwig/potential.hpp"

namespace relwig {

struct PhasePoint {
  double s = 0.0;
  FourVector X;                          // upper
  FourVector P{{}, Variance::Lower};     // lower
};

struct RotorState {
  double s = 0.0;
  FourVector X;
  Matrix4C L = Matrix4C::Identity();
};

struct TrajectoryRecord {
  std::vector<PhasePoint> points;
  /// max_s |H(s) - H(0)|
  double hamiltonian_drift = 0.0;
  /// max_s |u.u - c^2| / c^2
  double mass_shell_drift = 0.0;
};

struct RotorTrajectory {
  std::vector<RotorState> states;
  /// max_s |L^-1 - gamma^0 L^dagger gamma^0|
  double constraint_drift = 0.0;
  /// Number of steps on which the constraint correction fired.
  int corrections = 0;
};

FieldTensor field_tensor_at(const PotentialSpec& A, const FourVector& x);

/// Kinetic momentum pi_mu = P_mu - e A_mu (lower index).
FourVector kinetic_momentum(const PhasePoint& p, const PotentialSpec& A, const PhysicalConstants& k);
/// u^mu = pi^mu / m.
FourVector four_velocity(const PhasePoint& p, const PotentialSpec& A, const PhysicalConstants& k);
/// Canonical momentum P_mu = m u_mu + e A_mu(X).
FourVector canonical_momentum(const FourVector& X, const FourVector& u, const PotentialSpec& A,
                              const PhysicalConstants& k);

double extended_hamiltonian(const PhasePoint& p, const PotentialSpec& A, const PhysicalConstants& k);

struct HamiltonRhs {
  FourVector dX;                       // upper
  FourVector dP{{}, Variance::Lower};  // lower
};

HamiltonRhs hamilton_rhs(const PhasePoint& p, const PotentialSpec& A, const PhysicalConstants& k);

/// Lorentz force e F_{mu nu} u^nu (lower index).
FourVector lorentz_force(const FieldTensor& F, const FourVector& u, const PhysicalConstants& k);

/// Classical RK4. Throws std::invalid_argument for ds <= 0 or n < 1 and
/// NumericalAbort on a non-finite state.
TrajectoryRecord integrate_hamiltonian(const PhasePoint& p0, const PotentialSpec& A, const PhysicalConstants& k,
                                       double ds, int n);

/// Hermitian boost B with B^2 gamma^0 = u-slash / c.
Matrix4C boost_from_velocity(const FourVector& u, const PhysicalConstants& k, GammaRep rep = GammaRep::Dirac);

Matrix4C rotor_rhs(const Matrix4C& L, const Matrix4C& Fslash, const PhysicalConstants& k);

/// (1 + gamma^0)(1 + i gamma^1 gamma^2) / 4.
Matrix4C projector(GammaRep rep = GammaRep::Dirac);
/// Unit vector spanning the range of projector(rep); (1,0,0,0) in the Dirac rep.
Spinor rest_spinor(GammaRep rep = GammaRep::Dirac);

/// L applied to rest_spinor(rep). In the Dirac rep this is the first column of L.
Spinor spinor_from_rotor(const Matrix4C& L, GammaRep rep = GammaRep::Dirac);

/// u^mu = Psi^dagger c gamma^0 gamma^mu Psi.
FourVector velocity_from_spinor(const Spinor& psi, const PhysicalConstants& k, GammaRep rep = GammaRep::Dirac);
/// u^mu = c Tr(L L^dagger gamma^0 gamma^mu) / 4.
FourVector velocity_from_rotor(const Matrix4C& L, const PhysicalConstants& k, GammaRep rep = GammaRep::Dirac);

/// Force Psi^dagger c gamma^0 e (d_mu A-slash) Psi, i.e. e (d_mu A_nu) u^nu.
FourVector spinor_force(const Spinor& psi, const PotentialSpec& A, const FourVector& x, const PhysicalConstants& k,
                        GammaRep rep = GammaRep::Dirac);

/// |L^-1 - gamma^0 L^dagger gamma^0| (Frobenius).
double rotor_constraint_defect(const Matrix4C& L, GammaRep rep = GammaRep::Dirac);

struct RotorOptions {
  GammaRep rep = GammaRep::Dirac;
  double correction_threshold = 1e-10;
  double abort_threshold = 1e-6;
};

/// RK4 on (X, L). Throws NumericalAbort when the rotor constraint drifts past
/// opts.abort_threshold or the state becomes non-finite.
RotorTrajectory integrate_rotor(const RotorState& s0, const PotentialSpec& A, const PhysicalConstants& k, double ds,
                                int n, const RotorOptions& opts = {});

/// s,X0..X3,P0..P3,H,uu
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& t, const PotentialSpec& A,
                          const PhysicalConstants& k);
/// Same columns as write_trajectory_csv plus Re/Im of the 16 entries of L (row-major).
void write_rotor_csv(std::ostream& os, const RotorTrajectory& t, const PotentialSpec& A, const PhysicalConstants& k,
                     GammaRep rep = GammaRep::Dirac);

}  // namespace relwig
