#include "relwig/dirac.hpp"

#include <cmath>
#include <stdexcept>

#include "relwig/dynamics.hpp"

namespace relwig {

namespace {

Spinor dirac_rep_amplitude(Branch b, const FourVector& p, const PhysicalConstants& k) {
  const double mc = k.m * k.c;
  const double p0 = p[0], p1 = p[1], p2 = p[2], p3 = p[3];
  Spinor w;
  switch (b) {
    case Branch::PlusUp:
      w << p0 + mc, 0.0, p3, Complex(p1, p2);
      return w / std::sqrt(2.0 * mc * (p0 + mc));
    case Branch::PlusDown:
      w << 0.0, p0 + mc, Complex(p1, -p2), -p3;
      return kI * w / std::sqrt(2.0 * mc * (p0 + mc));
    case Branch::MinusUp:
      w << p3, Complex(p1, p2), p0 - mc, 0.0;
      return -kI * w / std::sqrt(2.0 * mc * (mc - p0));
    case Branch::MinusDown:
      w << Complex(p1, -p2), -p3, 0.0, p0 - mc;
      return w / std::sqrt(2.0 * mc * (mc - p0));
  }
  throw std::logic_error("unreachable branch");
}

}  // namespace

const char* to_string(Branch b) {
  switch (b) {
    case Branch::PlusUp: return "plus_up";
    case Branch::PlusDown: return "plus_down";
    case Branch::MinusUp: return "minus_up";
    case Branch::MinusDown: return "minus_down";
  }
  return "?";
}

Branch branch_from_string(const std::string& name) {
  for (Branch b : {Branch::PlusUp, Branch::PlusDown, Branch::MinusUp, Branch::MinusDown})
    if (name == to_string(b)) return b;
  throw std::invalid_argument("unknown branch '" + name + "' (expected plus_up, plus_down, minus_up, minus_down)");
}

void check_branch_momentum(Branch b, const FourVector& p, const PhysicalConstants& k) {
  const FourVector up = p.raised();
  const double m2c2 = k.m * k.m * k.c * k.c;
  if (std::abs(up.squared() - m2c2) > 1e-10 * m2c2)
    throw std::invalid_argument("momentum is off-shell: p.p - m^2c^2 = " + std::to_string(up.squared() - m2c2));
  if (positive_energy(b) ? up[0] <= 0.0 : up[0] >= 0.0)
    throw std::invalid_argument(std::string("p^0 has the wrong sign for branch ") + to_string(b));
}

FourVector on_shell_momentum(Branch b, double p1, double p2, double p3, const PhysicalConstants& k) {
  const double mc = k.m * k.c;
  const double e = std::sqrt(mc * mc + p1 * p1 + p2 * p2 + p3 * p3);
  return FourVector::upper(positive_energy(b) ? e : -e, p1, p2, p3);
}

Spinor free_amplitude(Branch b, const FourVector& p, const PhysicalConstants& k, GammaRep rep) {
  check_branch_momentum(b, p, k);
  if (rep == GammaRep::Dirac) return dirac_rep_amplitude(b, p.raised(), k);
  return branch_rotor(b, p, FourVector(), k, rep) * rest_spinor(rep);
}

Spinor free_spinor(Branch b, const FourVector& p, const FourVector& x, const PhysicalConstants& k, GammaRep rep) {
  return free_amplitude(b, p, k, rep) * std::exp(-kI * (p.dot(x) / k.hbar));
}

Matrix4C branch_rotor(Branch b, const FourVector& p, const FourVector& x, const PhysicalConstants& k, GammaRep rep) {
  check_branch_momentum(b, p, k);
  const bool plus = positive_energy(b);
  const FourVector u = p.raised() * ((plus ? 1.0 : -1.0) / k.m);
  Matrix4C L = boost_from_velocity(u, k, rep);
  if (b == Branch::PlusDown || b == Branch::MinusDown) L = L * (-gamma(rep, 2) * gamma(rep, 3));
  const double phi = p.dot(x) / k.hbar;
  const Matrix4C g12 = gamma_lower(rep, 1) * gamma_lower(rep, 2);
  L = L * (std::cos(phi) * Matrix4C::Identity() + std::sin(phi) * g12);
  if (!plus) {
    const Matrix4C I5 = gamma(rep, 0) * gamma(rep, 1) * gamma(rep, 2) * gamma(rep, 3);
    L = -I5 * L;
  }
  return L;
}

Matrix4C dirac_generator(const FourVector& p, const PotentialSpec& A, const FourVector& x,
                         const PhysicalConstants& k, GammaRep rep) {
  const FourVector pl = p.lowered();
  const auto a = A.at(x);
  Matrix4C s = Matrix4C::Zero();
  for (int mu = 0; mu < 4; ++mu) s += (pl[mu] - k.e * a[static_cast<std::size_t>(mu)]) * gamma(rep, mu);
  const Matrix4C& g0 = gamma(rep, 0);
  return g0 * (k.c * s - k.m * k.c * k.c * Matrix4C::Identity());
}

double dirac_residual(const Spinor& psi, const FourVector& p, const PotentialSpec& A, const FourVector& x,
                      const PhysicalConstants& k, GammaRep rep) {
  const double n = psi.norm();
  if (n == 0.0) return 0.0;
  return (dirac_generator(p, A, x, k, rep) * psi).norm() / n;
}

FourVector dirac_current(const Spinor& psi, GammaRep rep) {
  FourVector j;
  for (int mu = 0; mu < 4; ++mu) j[mu] = (psi.adjoint() * gamma(rep, 0) * gamma(rep, mu) * psi)(0, 0).real();
  return j;
}

FourVector dirac_current_as_written(const Spinor& psi, GammaRep rep) {
  FourVector j;
  for (int mu = 0; mu < 4; ++mu) j[mu] = (psi.adjoint() * gamma(rep, mu) * gamma(rep, 0) * psi)(0, 0).real();
  return j;
}

Matrix4C current_matrix(const Spinor& psi, GammaRep rep) { return psi * psi.adjoint() * gamma(rep, 0); }

}  // namespace relwig
