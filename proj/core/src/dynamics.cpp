#include "relwig/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "relwig/csv.hpp"
#include "relwig/errors.hpp"

namespace relwig {

namespace {

using State8 = Eigen::Matrix<double, 8, 1>;

State8 pack(const PhasePoint& p) {
  State8 y;
  const FourVector X = p.X.raised();
  const FourVector P = p.P.lowered();
  for (int mu = 0; mu < 4; ++mu) {
    y(mu) = X[mu];
    y(4 + mu) = P[mu];
  }
  return y;
}

PhasePoint unpack(const State8& y, double s) {
  PhasePoint p;
  p.s = s;
  p.X = FourVector::upper(y(0), y(1), y(2), y(3));
  p.P = FourVector::lower(y(4), y(5), y(6), y(7));
  return p;
}

State8 rhs8(const State8& y, const PotentialSpec& A, const PhysicalConstants& k) {
  const auto r = hamilton_rhs(unpack(y, 0.0), A, k);
  State8 d;
  for (int mu = 0; mu < 4; ++mu) {
    d(mu) = r.dX[mu];
    d(4 + mu) = r.dP[mu];
  }
  return d;
}

bool finite(const FourVector& v) {
  for (int mu = 0; mu < 4; ++mu)
    if (!std::isfinite(v[mu])) return false;
  return true;
}

struct RotorDeriv {
  Eigen::Vector4d dX;
  Matrix4C dL;
};

RotorDeriv rotor_deriv(const Eigen::Vector4d& X, const Matrix4C& L, const PotentialSpec& A,
                       const PhysicalConstants& k, GammaRep rep) {
  const FourVector x = FourVector::upper(X(0), X(1), X(2), X(3));
  const Matrix4C Fs = field_slash(field_tensor_at(A, x), rep);
  const FourVector u = velocity_from_rotor(L, k, rep);
  RotorDeriv d;
  for (int mu = 0; mu < 4; ++mu) d.dX(mu) = u[mu];
  d.dL = rotor_rhs(L, Fs, k);
  return d;
}

std::vector<double> trajectory_row(double s, const FourVector& X, const FourVector& P, const PotentialSpec& A,
                                   const PhysicalConstants& k) {
  PhasePoint p;
  p.s = s;
  p.X = X.raised();
  p.P = P.lowered();
  const FourVector u = four_velocity(p, A, k);
  return {s,    p.X[0], p.X[1], p.X[2], p.X[3], p.P[0], p.P[1], p.P[2], p.P[3], extended_hamiltonian(p, A, k),
          u.squared()};
}

const std::vector<std::string> kTrajectoryHeader = {"s",  "X0", "X1", "X2", "X3", "P0",
                                                    "P1", "P2", "P3", "H",  "uu"};

}  // namespace

FieldTensor field_tensor_at(const PotentialSpec& A, const FourVector& x) {
  const Eigen::Matrix4d G = A.gradient(x);
  return FieldTensor::from_matrix(G - G.transpose());
}

FourVector kinetic_momentum(const PhasePoint& p, const PotentialSpec& A, const PhysicalConstants& k) {
  const auto a = A.at(p.X);
  const FourVector P = p.P.lowered();
  return FourVector::lower(P[0] - k.e * a[0], P[1] - k.e * a[1], P[2] - k.e * a[2], P[3] - k.e * a[3]);
}

FourVector four_velocity(const PhasePoint& p, const PotentialSpec& A, const PhysicalConstants& k) {
  return kinetic_momentum(p, A, k).raised() * (1.0 / k.m);
}

FourVector canonical_momentum(const FourVector& X, const FourVector& u, const PotentialSpec& A,
                              const PhysicalConstants& k) {
  const auto a = A.at(X);
  const FourVector ul = u.lowered();
  return FourVector::lower(k.m * ul[0] + k.e * a[0], k.m * ul[1] + k.e * a[1], k.m * ul[2] + k.e * a[2],
                           k.m * ul[3] + k.e * a[3]);
}

double extended_hamiltonian(const PhasePoint& p, const PotentialSpec& A, const PhysicalConstants& k) {
  const FourVector pi = kinetic_momentum(p, A, k);
  return pi.squared() / (2.0 * k.m) - 0.5 * k.m * k.c * k.c;
}

HamiltonRhs hamilton_rhs(const PhasePoint& p, const PotentialSpec& A, const PhysicalConstants& k) {
  const FourVector pi_up = kinetic_momentum(p, A, k).raised();
  const Eigen::Matrix4d G = A.gradient(p.X);
  HamiltonRhs r;
  r.dX = pi_up * (1.0 / k.m);
  for (int mu = 0; mu < 4; ++mu) {
    double s = 0.0;
    for (int nu = 0; nu < 4; ++nu) s += G(mu, nu) * pi_up[nu];
    r.dP[mu] = k.e / k.m * s;
  }
  return r;
}

FourVector lorentz_force(const FieldTensor& F, const FourVector& u, const PhysicalConstants& k) {
  const FourVector up = u.raised();
  FourVector f({}, Variance::Lower);
  for (int mu = 0; mu < 4; ++mu) {
    double s = 0.0;
    for (int nu = 0; nu < 4; ++nu) s += F(mu, nu) * up[nu];
    f[mu] = k.e * s;
  }
  return f;
}

TrajectoryRecord integrate_hamiltonian(const PhasePoint& p0, const PotentialSpec& A, const PhysicalConstants& k,
                                       double ds, int n) {
  if (!(ds > 0.0)) throw std::invalid_argument("integrate_hamiltonian: ds must be positive");
  if (n < 1) throw std::invalid_argument("integrate_hamiltonian: n must be at least 1");
  TrajectoryRecord rec;
  rec.points.reserve(static_cast<std::size_t>(n) + 1);
  PhasePoint start = p0;
  start.X = start.X.raised();
  start.P = start.P.lowered();
  rec.points.push_back(start);
  const double h0 = extended_hamiltonian(start, A, k);
  const double c2 = k.c * k.c;
  State8 y = pack(start);
  for (int i = 1; i <= n; ++i) {
    const State8 k1 = rhs8(y, A, k);
    const State8 k2 = rhs8(y + 0.5 * ds * k1, A, k);
    const State8 k3 = rhs8(y + 0.5 * ds * k2, A, k);
    const State8 k4 = rhs8(y + ds * k3, A, k);
    y += ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite())
      throw NumericalAbort("integrate_hamiltonian: non-finite state at step " + std::to_string(i));
    const PhasePoint p = unpack(y, p0.s + i * ds);
    rec.hamiltonian_drift = std::max(rec.hamiltonian_drift, std::abs(extended_hamiltonian(p, A, k) - h0));
    rec.mass_shell_drift =
        std::max(rec.mass_shell_drift, std::abs(four_velocity(p, A, k).squared() - c2) / c2);
    rec.points.push_back(p);
  }
  return rec;
}

Matrix4C boost_from_velocity(const FourVector& u, const PhysicalConstants& k, GammaRep rep) {
  const FourVector up = u.raised();
  const double c2 = k.c * k.c;
  if (!finite(up) || std::abs(up.squared() - c2) > 1e-8 * c2)
    throw std::invalid_argument("boost_from_velocity: velocity is off the mass shell (u.u = " +
                                std::to_string(up.squared()) + ")");
  if (up[0] <= 0.0) throw std::invalid_argument("boost_from_velocity: u^0 must be positive");
  const double gam = up[0] / k.c;
  const Matrix4C num = slash(up, rep) * gamma(rep, 0) / k.c + Matrix4C::Identity();
  return num / std::sqrt(2.0 * (gam + 1.0));
}

Matrix4C rotor_rhs(const Matrix4C& L, const Matrix4C& Fslash, const PhysicalConstants& k) {
  return (k.e / (2.0 * k.m)) * Fslash * L;
}

Matrix4C projector(GammaRep rep) {
  const Matrix4C I = Matrix4C::Identity();
  return 0.25 * (I + gamma(rep, 0)) * (I + kI * gamma(rep, 1) * gamma(rep, 2));
}

Spinor rest_spinor(GammaRep rep) {
  Spinor chi = Spinor::Zero();
  if (rep == GammaRep::Dirac) {
    chi(0) = 1.0;
  } else {
    chi(0) = chi(2) = 1.0 / std::sqrt(2.0);
  }
  return chi;
}

Spinor spinor_from_rotor(const Matrix4C& L, GammaRep rep) { return L * rest_spinor(rep); }

FourVector velocity_from_spinor(const Spinor& psi, const PhysicalConstants& k, GammaRep rep) {
  FourVector u;
  for (int mu = 0; mu < 4; ++mu)
    u[mu] = k.c * (psi.adjoint() * gamma(rep, 0) * gamma(rep, mu) * psi)(0, 0).real();
  return u;
}

FourVector velocity_from_rotor(const Matrix4C& L, const PhysicalConstants& k, GammaRep rep) {
  const Matrix4C M = L * L.adjoint() * gamma(rep, 0);
  FourVector u;
  for (int mu = 0; mu < 4; ++mu) u[mu] = k.c * 0.25 * (M * gamma(rep, mu)).trace().real();
  return u;
}

FourVector spinor_force(const Spinor& psi, const PotentialSpec& A, const FourVector& x, const PhysicalConstants& k,
                        GammaRep rep) {
  const Eigen::Matrix4d G = A.gradient(x);
  const Matrix4C g0 = gamma(rep, 0);
  FourVector f({}, Variance::Lower);
  for (int mu = 0; mu < 4; ++mu) {
    Matrix4C dA = Matrix4C::Zero();
    for (int nu = 0; nu < 4; ++nu) dA += G(mu, nu) * gamma(rep, nu);
    f[mu] = k.e * k.c * (psi.adjoint() * g0 * dA * psi)(0, 0).real();
  }
  return f;
}

double rotor_constraint_defect(const Matrix4C& L, GammaRep rep) {
  const Matrix4C& g0 = gamma(rep, 0);
  return (L.inverse() - g0 * L.adjoint() * g0).norm();
}

RotorTrajectory integrate_rotor(const RotorState& s0, const PotentialSpec& A, const PhysicalConstants& k, double ds,
                                int n, const RotorOptions& opts) {
  if (!(ds > 0.0)) throw std::invalid_argument("integrate_rotor: ds must be positive");
  if (n < 1) throw std::invalid_argument("integrate_rotor: n must be at least 1");
  const GammaRep rep = opts.rep;
  const Matrix4C& g0 = gamma(rep, 0);
  const Matrix4C I = Matrix4C::Identity();
  if (rotor_constraint_defect(s0.L, rep) > opts.abort_threshold)
    throw std::invalid_argument("integrate_rotor: initial L violates L^-1 = gamma^0 L^dagger gamma^0");

  RotorTrajectory out;
  out.states.reserve(static_cast<std::size_t>(n) + 1);
  RotorState cur = s0;
  cur.X = cur.X.raised();
  out.states.push_back(cur);

  Eigen::Vector4d X;
  for (int mu = 0; mu < 4; ++mu) X(mu) = cur.X[mu];
  Matrix4C L = cur.L;

  for (int i = 1; i <= n; ++i) {
    const auto d1 = rotor_deriv(X, L, A, k, rep);
    const auto d2 = rotor_deriv(X + 0.5 * ds * d1.dX, L + 0.5 * ds * d1.dL, A, k, rep);
    const auto d3 = rotor_deriv(X + 0.5 * ds * d2.dX, L + 0.5 * ds * d2.dL, A, k, rep);
    const auto d4 = rotor_deriv(X + ds * d3.dX, L + ds * d3.dL, A, k, rep);
    X += ds / 6.0 * (d1.dX + 2.0 * d2.dX + 2.0 * d3.dX + d4.dX);
    L += ds / 6.0 * (d1.dL + 2.0 * d2.dL + 2.0 * d3.dL + d4.dL);
    if (!X.allFinite() || !L.allFinite())
      throw NumericalAbort("integrate_rotor: non-finite state at step " + std::to_string(i));

    // G = L gamma0 L^dagger gamma0 equals L L^-1 = 1 on the constraint manifold.
    double drift = (L * g0 * L.adjoint() * g0 - I).norm();
    if (drift > opts.abort_threshold)
      throw NumericalAbort("integrate_rotor: rotor constraint drift " + std::to_string(drift) + " at step " +
                           std::to_string(i) + " exceeds " + std::to_string(opts.abort_threshold));
    if (drift > opts.correction_threshold) {
      for (int it = 0; it < 4 && drift > 1e-15; ++it) {
        const Matrix4C G = L * g0 * L.adjoint() * g0;
        L = 0.5 * (3.0 * I - G) * L;
        drift = (L * g0 * L.adjoint() * g0 - I).norm();
      }
      ++out.corrections;
    }
    out.constraint_drift = std::max(out.constraint_drift, rotor_constraint_defect(L, rep));

    cur.s = s0.s + i * ds;
    cur.X = FourVector::upper(X(0), X(1), X(2), X(3));
    cur.L = L;
    out.states.push_back(cur);
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& t, const PotentialSpec& A,
                          const PhysicalConstants& k) {
  CsvWriter w(os, kTrajectoryHeader);
  for (const auto& p : t.points) w.row(trajectory_row(p.s, p.X, p.P, A, k));
}

void write_rotor_csv(std::ostream& os, const RotorTrajectory& t, const PotentialSpec& A, const PhysicalConstants& k,
                     GammaRep rep) {
  std::vector<std::string> header = kTrajectoryHeader;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      header.push_back("ReL" + std::to_string(r) + std::to_string(c));
      header.push_back("ImL" + std::to_string(r) + std::to_string(c));
    }
  CsvWriter w(os, header);
  for (const auto& st : t.states) {
    const FourVector u = velocity_from_rotor(st.L, k, rep);
    auto row = trajectory_row(st.s, st.X, canonical_momentum(st.X, u, A, k), A, k);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        row.push_back(st.L(r, c).real());
        row.push_back(st.L(r, c).imag());
      }
    w.row(row);
  }
}

}  // namespace relwig
