#include <doctest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "relwig/clifford.hpp"
#include "relwig/errors.hpp"

using namespace relwig;

namespace {

const GammaRep kReps[] = {GammaRep::Dirac, GammaRep::Weyl};

Matrix4C random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix4C a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = Complex(n(rng), n(rng));
  return (a + a.adjoint()) * 0.5;
}

}  // namespace

TEST_CASE("gamma matrices match the explicit Kronecker construction") {
  for (GammaRep rep : kReps)
    for (int mu = 0; mu < 4; ++mu)
      CHECK((gamma(rep, mu) - oracle::gamma(rep == GammaRep::Weyl, mu)).norm() == 0.0);
  Matrix4C g0 = Matrix4C::Zero();
  g0.diagonal() << 1.0, 1.0, -1.0, -1.0;
  CHECK(gamma(GammaRep::Dirac, 0) == g0);
  CHECK((gamma(GammaRep::Weyl, 1) * gamma(GammaRep::Weyl, 1) + Matrix4C::Identity()).norm() == 0.0);
  CHECK_THROWS_AS(gamma(GammaRep::Dirac, 4), std::out_of_range);
  CHECK_THROWS_AS(gamma(GammaRep::Dirac, -1), std::out_of_range);
}

TEST_CASE("Clifford relations hold in both representations") {
  for (GammaRep rep : kReps) {
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        const Matrix4C ac = gamma(rep, mu) * gamma(rep, nu) + gamma(rep, nu) * gamma(rep, mu);
        const double g = mu == nu ? MetricSignature::g(mu) : 0.0;
        CHECK((ac - 2.0 * g * Matrix4C::Identity()).norm() < 1e-14);
      }
      const double sign = mu == 0 ? 1.0 : -1.0;
      CHECK((gamma(rep, mu).adjoint() - sign * gamma(rep, mu)).norm() < 1e-14);
      CHECK((gamma(rep, mu) * gamma_lower(rep, mu) - Matrix4C::Identity()).norm() < 1e-14);
    }
    for (int k = 1; k < 4; ++k) CHECK((alpha(rep, k) - alpha(rep, k).adjoint()).norm() < 1e-15);
  }
}

TEST_CASE("slash and unslash") {
  for (GammaRep rep : kReps) {
    const FourVector rest = FourVector::upper(2.5, 0.0, 0.0, 0.0);
    CHECK((slash(rest, rep) - 2.5 * gamma(rep, 0)).norm() < 1e-15);
    CHECK(slash(FourVector(), rep).norm() == 0.0);
    const FourVector v = FourVector::upper(1.0, 2.0, 3.0, 4.0);
    CHECK(unslash(slash(v, rep), rep).max_abs_diff(v) < 1e-15);
    // Lower-index input contracts the same way.
    CHECK(unslash(slash(v.lowered(), rep), rep).max_abs_diff(v) < 1e-15);
    CHECK(unslash(2.5 * gamma(rep, 0), rep).max_abs_diff(rest) < 1e-15);
    CHECK_THROWS_AS(unslash(gamma(rep, 0) * gamma(rep, 1), rep), NotAVectorError);
    CHECK_THROWS_AS(unslash(Matrix4C::Identity(), rep), NotAVectorError);
  }
}

TEST_CASE("FourVector index gymnastics") {
  const FourVector u = FourVector::upper(3.0, 1.0, -2.0, 0.5);
  const FourVector l = u.lowered();
  CHECK(l.variance() == Variance::Lower);
  CHECK(l[0] == 3.0);
  CHECK(l[1] == -1.0);
  CHECK(l[2] == 2.0);
  CHECK(u.squared() == doctest::Approx(9.0 - 1.0 - 4.0 - 0.25));
  CHECK(u.dot(l) == doctest::Approx(u.squared()));
  CHECK(l.raised().max_abs_diff(u) == 0.0);
}

TEST_CASE("hermitian_part") {
  std::mt19937_64 rng(3);
  const Matrix4C h = random_hermitian(rng);
  CHECK((hermitian_part(h) - h).norm() < 1e-15);
  const Matrix4C ah = Complex(0.0, 1.0) * h;
  CHECK(hermitian_part(ah).norm() < 1e-15);
  // gamma^0 sigma^{12} = -i sigma3 (x) sigma3 in the Dirac rep: purely anti-Hermitian.
  const Matrix4C m = gamma(GammaRep::Dirac, 0) * sigma(GammaRep::Dirac, 1, 2);
  CHECK(hermitian_part(m).norm() < 1e-15);
  Matrix4C expect = Matrix4C::Zero();
  expect.diagonal() << Complex(0, -1), Complex(0, 1), Complex(0, 1), Complex(0, -1);
  CHECK((m - expect).norm() < 1e-15);
}

TEST_CASE("field_slash") {
  CHECK(field_slash(FieldTensor()).norm() == 0.0);
  Eigen::Matrix4d f = Eigen::Matrix4d::Zero();
  f(0, 1) = 1.7;
  f(1, 0) = -1.7;
  for (GammaRep rep : kReps)
    CHECK((field_slash(FieldTensor::from_matrix(f), rep) - 1.7 * sigma(rep, 0, 1)).norm() < 1e-15);
  Eigen::Matrix4d bad = f;
  bad(2, 3) = 1.0;
  CHECK_THROWS_AS(FieldTensor::from_matrix(bad), std::invalid_argument);

  // <gamma^0 F-slash u-slash>_H = gamma^0 gamma^mu F_{mu xi} u^xi.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Matrix4d a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = n(rng);
    const FieldTensor F = FieldTensor::from_matrix(a - a.transpose());
    const FourVector u = FourVector::upper(n(rng), n(rng), n(rng), n(rng));
    for (GammaRep rep : kReps) {
      const Matrix4C g0 = gamma(rep, 0);
      const Matrix4C lhs = hermitian_part(g0 * field_slash(F, rep) * slash(u, rep));
      Matrix4C rhs = Matrix4C::Zero();
      for (int mu = 0; mu < 4; ++mu)
        for (int xi = 0; xi < 4; ++xi) rhs += g0 * gamma(rep, mu) * F(mu, xi) * u.raised()[xi];
      CHECK((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
    }
  }
}

TEST_CASE("exp_hermitian") {
  CHECK((exp_hermitian(Matrix4C::Zero(), 1.3) - Matrix4C::Identity()).norm() < 1e-15);
  // exp(-i pi gamma^0) = -1 since gamma^0 has eigenvalues +-1.
  for (GammaRep rep : kReps)
    CHECK((exp_hermitian(gamma(rep, 0), std::numbers::pi) + Matrix4C::Identity()).norm() < 1e-14);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix4C h = random_hermitian(rng);
    const Matrix4C u = exp_hermitian(h, 0.37);
    CHECK(unitarity_defect(u) < 1e-12);
    CHECK((u - oracle::expm(Complex(0.0, -0.37) * h)).norm() < 1e-12);
    CHECK((exp_hermitian(h, 0.2) * exp_hermitian(h, 0.17) - u).norm() < 1e-12);
  }
  Matrix4C nh = Matrix4C::Zero();
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(exp_hermitian(nh, 1.0), std::invalid_argument);
}

TEST_CASE("representation names round-trip") {
  for (GammaRep rep : kReps) CHECK(gamma_rep_from_string(to_string(rep)) == rep);
  CHECK_THROWS(gamma_rep_from_string("majorana"));
}
