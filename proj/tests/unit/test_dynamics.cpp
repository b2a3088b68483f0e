#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles/oracles.hpp"
#include "relwig/dynamics.hpp"
#include "relwig/errors.hpp"

using namespace relwig;

namespace {

// Frozen high-precision reference values.
constexpr double kSinh5 = 74.20321057778875898;
constexpr double kCosh5 = 74.20994852478784444;
constexpr double kCoshHalfEta = 1.061877819155985;  // cosh(0.35)
constexpr double kSinhHalfEta = 0.3571897294372719;  // sinh(0.35)
constexpr double kFrozenH = -0.2966230800688965408;

PhasePoint at_rest(const PotentialSpec& A, const PhysicalConstants& k, const FourVector& u) {
  PhasePoint p;
  p.X = FourVector::upper(0.0, 0.0, 0.0, 0.0);
  p.P = canonical_momentum(p.X, u, A, k);
  return p;
}

}  // namespace

TEST_CASE("potential derivatives agree with central differences") {
  const PotentialSpec specs[] = {PotentialSpec::constant_e(0.7), PotentialSpec::constant_b(-1.1),
                                 PotentialSpec::sine(0.5, 0.3, 2), PotentialSpec::polynomial(3, {0.1, -0.2, 0.3, 0.05})};
  for (const auto& A : specs) {
    for (double x : {-1.7, 0.0, 0.4, 2.2}) {
      const double h = 1e-5;
      const auto d = A.derivative_x1(x);
      const auto hi = A.at_x1(x + h), lo = A.at_x1(x - h);
      const auto sd = A.symmetric_difference(x, h);
      for (std::size_t mu = 0; mu < 4; ++mu) {
        CHECK(d[mu] == doctest::Approx((hi[mu] - lo[mu]) / (2 * h)).epsilon(1e-8));
        CHECK(std::abs(sd[mu] - (hi[mu] - lo[mu])) < 1e-12);
      }
      // Tiny offsets stay accurate: the difference tends to 2 h A'.
      const auto tiny = A.symmetric_difference(x, 1e-13);
      for (std::size_t mu = 0; mu < 4; ++mu)
        CHECK(std::abs(tiny[mu] - 2e-13 * d[mu]) <= 1e-6 * std::abs(2e-13 * d[mu]));
    }
  }
  CHECK(PotentialSpec::none().is_zero());
  CHECK_FALSE(PotentialSpec::constant_e(1.0).is_zero());
}

TEST_CASE("gauge choices produce the intended field tensors") {
  const FourVector x = FourVector::upper(0.3, 1.2, -0.5, 0.8);
  const FieldTensor fe = field_tensor_at(PotentialSpec::constant_e(0.9), x);
  CHECK(fe(0, 1) == doctest::Approx(0.9));
  CHECK(fe(1, 0) == doctest::Approx(-0.9));
  CHECK(fe(1, 2) == 0.0);
  const FieldTensor fb = field_tensor_at(PotentialSpec::constant_b(1.3), x);
  CHECK(fb(1, 2) == doctest::Approx(1.3));
  CHECK(fb(0, 1) == 0.0);
  const FieldTensor fs = field_tensor_at(PotentialSpec::sine(0.5, 0.3, 0), x);
  CHECK(fs(0, 1) == doctest::Approx(-0.5 * 0.3 * std::cos(0.3 * 1.2)));
}

TEST_CASE("extended Hamiltonian against a term-by-term evaluation") {
  const PhysicalConstants k{1.0, 1.2, 1.5, -0.7};
  const auto A = PotentialSpec::sine(0.5, 0.3, 0);
  PhasePoint p;
  p.X = FourVector::upper(0.0, 1.3, 0.0, 0.0);
  p.P = FourVector::lower(1.7, 0.2, -0.4, 0.9);
  CHECK(extended_hamiltonian(p, A, k) == doctest::Approx(kFrozenH).epsilon(1e-14));
  CHECK(extended_hamiltonian(p, A, k) ==
        doctest::Approx(oracle::hamiltonian({1.7, 0.2, -0.4, 0.9}, A.at_x1(1.3), k.m, k.c, k.e)).epsilon(1e-14));
  // On the mass shell H vanishes.
  const auto q = at_rest(A, k, FourVector::upper(std::sqrt(k.c * k.c + 0.25), 0.5, 0.0, 0.0));
  CHECK(std::abs(extended_hamiltonian(q, A, k)) < 1e-14);
}

TEST_CASE("Hamilton's equations reproduce the Lorentz force") {
  const PhysicalConstants k{1.0, 1.0, 1.3, 0.8};
  const PotentialSpec specs[] = {PotentialSpec::constant_e(0.7), PotentialSpec::constant_b(1.1),
                                 PotentialSpec::sine(0.6, 0.9, 1), PotentialSpec::polynomial(0, {0.0, 0.2, -0.1})};
  for (const auto& A : specs) {
    PhasePoint p;
    p.X = FourVector::upper(0.1, 0.7, -0.3, 0.2);
    const FourVector u = FourVector::upper(std::sqrt(1.0 + 0.09 + 0.04 + 0.01), 0.3, -0.2, 0.1);
    p.P = canonical_momentum(p.X, u, A, k);
    CHECK(four_velocity(p, A, k).max_abs_diff(u) < 1e-14);
    const auto rhs = hamilton_rhs(p, A, k);
    CHECK(rhs.dX.max_abs_diff(u) < 1e-14);
    // d pi_mu / ds = dP_mu/ds - e (d_nu A_mu) u^nu must equal e F_{mu nu} u^nu.
    const Eigen::Matrix4d G = A.gradient(p.X);
    const FourVector f = lorentz_force(field_tensor_at(A, p.X), u, k);
    for (int mu = 0; mu < 4; ++mu) {
      double dpi = rhs.dP.lowered()[mu];
      for (int nu = 0; nu < 4; ++nu) dpi -= k.e * G(nu, mu) * u[nu];
      CHECK(std::abs(dpi - f.lowered()[mu]) < 1e-14);
    }
  }
}

TEST_CASE("hyperbolic motion in a constant electric field") {
  const PhysicalConstants k{};
  const auto A = PotentialSpec::constant_e(1.0);
  const auto tr = integrate_hamiltonian(at_rest(A, k, FourVector::upper(1.0, 0.0, 0.0, 0.0)), A, k, 1e-3, 5000);
  const auto u = four_velocity(tr.points.back(), A, k);
  CHECK(tr.points.back().s == doctest::Approx(5.0));
  CHECK(u[0] == doctest::Approx(kCosh5).epsilon(1e-10));
  CHECK(u[1] == doctest::Approx(kSinh5).epsilon(1e-10));
  CHECK(tr.points.back().X[1] == doctest::Approx(kCosh5 - 1.0).epsilon(1e-10));
  CHECK(tr.mass_shell_drift < 1e-10);
  CHECK(tr.hamiltonian_drift < 1e-8);
}

TEST_CASE("cyclotron rotation in a constant magnetic field") {
  const PhysicalConstants k{1.0, 1.0, 2.0, 0.5};
  const double b = 1.6, v = 0.75, gam = std::sqrt(1.0 + v * v);
  const auto A = PotentialSpec::constant_b(b);
  const double omega = k.e * b / k.m;
  const auto tr = integrate_hamiltonian(at_rest(A, k, FourVector::upper(gam, v, 0.0, 0.0)), A, k, 1e-3, 3000);
  for (std::size_t i = 0; i < tr.points.size(); i += 500) {
    const auto& pt = tr.points[i];
    const auto u = four_velocity(pt, A, k);
    CHECK(u[0] == doctest::Approx(gam).epsilon(1e-12));
    CHECK(std::abs(u[1] - v * std::cos(omega * pt.s)) < 1e-10);
    CHECK(std::abs(u[2] - v * std::sin(omega * pt.s)) < 1e-10);
  }
}

TEST_CASE("integrators reject bad input") {
  const PhysicalConstants k{};
  const auto A = PotentialSpec::constant_e(1.0);
  const auto p0 = at_rest(A, k, FourVector::upper(1.0, 0.0, 0.0, 0.0));
  CHECK_THROWS_AS(integrate_hamiltonian(p0, A, k, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(integrate_hamiltonian(p0, A, k, 0.1, 0), std::invalid_argument);
  const auto huge = PotentialSpec::constant_e(1e300);
  CHECK_THROWS_AS(integrate_hamiltonian(at_rest(huge, k, FourVector::upper(1.0, 0.0, 0.0, 0.0)), huge, k, 1.0, 50),
                  NumericalAbort);
  RotorState r;
  RotorOptions opts;
  opts.correction_threshold = 1e300;
  CHECK_THROWS_AS(integrate_rotor(r, PotentialSpec::constant_e(50.0), k, 1.0, 5, opts), NumericalAbort);
}

TEST_CASE("boost rotor") {
  const PhysicalConstants k{};
  const double eta = 0.7;
  const FourVector u = FourVector::upper(std::cosh(eta), std::sinh(eta), 0.0, 0.0);
  const Matrix4C B = boost_from_velocity(u, k, GammaRep::Dirac);
  CHECK((B.col(0) - Spinor(kCoshHalfEta, 0.0, 0.0, kSinhHalfEta)).norm() < 1e-14);
  const Matrix4C g01 = gamma(GammaRep::Dirac, 0) * gamma(GammaRep::Dirac, 1);
  CHECK((B - oracle::expm(0.5 * eta * g01)).norm() < 1e-13);

  for (GammaRep rep : {GammaRep::Dirac, GammaRep::Weyl}) {
    const PhysicalConstants k2{1.0, 2.0, 1.5, 1.0};
    const FourVector w = FourVector::upper(std::sqrt(4.0 + 0.25 + 1.0 + 0.09), 0.5, -1.0, 0.3);
    const Matrix4C L = boost_from_velocity(w, k2, rep);
    CHECK((L - L.adjoint()).norm() < 1e-13);
    CHECK((L * L * gamma(rep, 0) - slash(w, rep) / k2.c).norm() < 1e-12);
    CHECK(rotor_constraint_defect(L, rep) < 1e-13);
    CHECK(velocity_from_rotor(L, k2, rep).max_abs_diff(w) < 1e-12);
    CHECK(velocity_from_spinor(spinor_from_rotor(L, rep), k2, rep).max_abs_diff(w) < 1e-12);
    CHECK(rotor_constraint_defect(2.0 * L, rep) > 1.0);
  }
}

TEST_CASE("rest projector and spinor") {
  for (GammaRep rep : {GammaRep::Dirac, GammaRep::Weyl}) {
    const Matrix4C P = projector(rep);
    CHECK((P * P - P).norm() < 1e-14);
    CHECK((P - P.adjoint()).norm() < 1e-14);
    CHECK(std::abs(P.trace() - Complex(1.0, 0.0)) < 1e-14);
    const Spinor r = rest_spinor(rep);
    CHECK(std::abs(r.norm() - 1.0) < 1e-14);
    CHECK((P * r - r).norm() < 1e-14);
    CHECK(velocity_from_spinor(r, PhysicalConstants{}, rep).max_abs_diff(FourVector::upper(1, 0, 0, 0)) < 1e-14);
  }
  CHECK((rest_spinor(GammaRep::Dirac) - Spinor(1.0, 0.0, 0.0, 0.0)).norm() == 0.0);
}

TEST_CASE("rotor right-hand side and spinor force") {
  const PhysicalConstants k{1.0, 1.0, 2.0, 0.6};
  const FieldTensor F = field_tensor_at(PotentialSpec::constant_b(1.4), FourVector());
  const Matrix4C L = boost_from_velocity(FourVector::upper(std::sqrt(1.25), 0.5, 0.0, 0.0), k);
  CHECK((rotor_rhs(L, field_slash(F), k) - (k.e / (2 * k.m)) * field_slash(F) * L).norm() < 1e-15);

  const auto A = PotentialSpec::sine(0.4, 1.1, 0);
  const FourVector x = FourVector::upper(0.0, 0.8, 0.0, 0.0);
  const FourVector u = FourVector::upper(std::sqrt(1.0 + 0.36), 0.6, 0.0, 0.0);
  const Spinor psi = spinor_from_rotor(boost_from_velocity(u, k));
  const FourVector f = spinor_force(psi, A, x, k);
  const Eigen::Matrix4d G = A.gradient(x);
  for (int mu = 0; mu < 4; ++mu) {
    double expect = 0.0;
    for (int nu = 0; nu < 4; ++nu) expect += k.e * G(mu, nu) * u[nu];
    CHECK(std::abs(f.lowered()[mu] - expect) < 1e-14);
  }
}

TEST_CASE("rotor and Hamiltonian trajectories coincide") {
  const PhysicalConstants k{1.0, 1.0, 1.0, 1.0};
  const auto A = PotentialSpec::constant_b(0.9);
  const FourVector u = FourVector::upper(std::sqrt(1.0 + 0.16 + 0.01), 0.4, 0.0, 0.1);
  PhasePoint p0;
  p0.X = FourVector::upper(0.0, 0.2, 0.0, 0.0);
  p0.P = canonical_momentum(p0.X, u, A, k);
  RotorState r0;
  r0.X = p0.X;
  r0.L = boost_from_velocity(u, k);
  const auto h = integrate_hamiltonian(p0, A, k, 5e-3, 400);
  const auto r = integrate_rotor(r0, A, k, 5e-3, 400);
  REQUIRE(h.points.size() == r.states.size());
  CHECK(h.points.back().X.max_abs_diff(r.states.back().X) < 1e-9);
  CHECK(velocity_from_rotor(r.states.back().L, k).max_abs_diff(four_velocity(h.points.back(), A, k)) < 1e-9);

  std::ostringstream os;
  write_rotor_csv(os, r, A, k);
  const std::string text = os.str();
  CHECK(text.rfind("s,X0,X1,X2,X3,P0,P1,P2,P3,H,uu", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 402);
}
