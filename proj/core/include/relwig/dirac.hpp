#pragma once

// Free-particle plane-wave solutions of the Dirac equation and residual checks.
//
// Phase convention: psi(x) = w(p) exp(-i p.x / hbar). Positive branches need
// p^0 > 0 and negative branches p^0 < 0; both need p.p = m^2 c^2 to within
// 1e-10 m^2 c^2.
//
// Dirac-representation amplitudes:
//   +up    (p0+mc, 0, p3, p1+i p2)           / sqrt(2mc(p0+mc))
//   +down  i (0, p0+mc, p1-i p2, -p3)        / sqrt(2mc(p0+mc))
//   -up   -i (p3, p1+i p2, p0-mc, 0)         / sqrt(2mc(mc-p0))
//   -down    (p1-i p2, -p3, 0, p0-mc)        / sqrt(2mc(mc-p0))
// Each equals branch_rotor(...) applied to the rest spinor, which is how the
// Weyl-representation amplitudes are produced.

#include <string>

#include "relwig/clifford.hpp"
#include "relwig/constants.hpp"
#include "relwig/potential.hpp"

namespace relwig {

enum class Branch { PlusUp, PlusDown, MinusUp, MinusDown };

const char* to_string(Branch b);
Branch branch_from_string(const std::string& name);
inline bool positive_energy(Branch b) { return b == Branch::PlusUp || b == Branch::PlusDown; }

/// Throws std::invalid_argument when p is off-shell or p^0 has the wrong sign.
void check_branch_momentum(Branch b, const FourVector& p, const PhysicalConstants& k);

/// On-shell momentum with spatial part (p1, p2, p3) and p^0 sign set by the branch.
FourVector on_shell_momentum(Branch b, double p1, double p2, double p3, const PhysicalConstants& k);

/// Spinor amplitude without the plane-wave phase.
Spinor free_amplitude(Branch b, const FourVector& p, const PhysicalConstants& k, GammaRep rep = GammaRep::Dirac);

/// free_amplitude * exp(-i p.x / hbar).
Spinor free_spinor(Branch b, const FourVector& p, const FourVector& x, const PhysicalConstants& k,
                   GammaRep rep = GammaRep::Dirac);

/// Lorentz rotor whose action on rest_spinor(rep) is free_spinor:
///   boost(u) * [down-flip] * exp(gamma_1 gamma_2 p.x/hbar), left-multiplied by
///   the inverse pseudoscalar for negative branches (with u = -p/m there).
Matrix4C branch_rotor(Branch b, const FourVector& p, const FourVector& x, const PhysicalConstants& k,
                      GammaRep rep = GammaRep::Dirac);

/// Generator gamma^0 (c gamma^mu (p_mu - e A_mu(x)) - m c^2) acting on a plane wave of momentum p.
Matrix4C dirac_generator(const FourVector& p, const PotentialSpec& A, const FourVector& x,
                         const PhysicalConstants& k, GammaRep rep = GammaRep::Dirac);

/// |D psi| / |psi|.
double dirac_residual(const Spinor& psi, const FourVector& p, const PotentialSpec& A, const FourVector& x,
                      const PhysicalConstants& k, GammaRep rep = GammaRep::Dirac);

/// J^mu = psi^dagger gamma^0 gamma^mu psi; the components of psi psi^dagger gamma^0.
FourVector dirac_current(const Spinor& psi, GammaRep rep = GammaRep::Dirac);
/// psi^dagger gamma^mu gamma^0 psi. Agrees with dirac_current for mu = 0 and
/// has the opposite sign for the spatial components.
FourVector dirac_current_as_written(const Spinor& psi, GammaRep rep = GammaRep::Dirac);
/// psi psi^dagger gamma^0.
Matrix4C current_matrix(const Spinor& psi, GammaRep rep = GammaRep::Dirac);

}  // namespace relwig
