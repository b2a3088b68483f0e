#include <doctest.h>

#include "relwig/operator_lab.hpp"

using namespace relwig;

TEST_CASE("truncated canonical pair") {
  CHECK_THROWS_AS(build_truncated_pair(4), std::invalid_argument);
  CHECK_THROWS_AS(build_truncated_pair(16, 0.0), std::invalid_argument);
  const int n = 12;
  const double hbar = 0.7;
  const auto pair = build_truncated_pair(n, hbar);
  CHECK((pair.x - pair.x.adjoint()).norm() < 1e-14);
  CHECK((pair.p - pair.p.adjoint()).norm() < 1e-14);
  const MatrixXC c = pair.x * pair.p - pair.p * pair.x;
  const std::complex<double> i(0.0, 1.0);
  for (int k = 0; k < n - 1; ++k) CHECK(std::abs(c(k, k) - i * hbar) < 1e-13);
  // The top state carries the compensating trace: Tr[x, p] = 0.
  CHECK(std::abs(c(n - 1, n - 1) + i * hbar * static_cast<double>(n - 1)) < 1e-12);
  CHECK(std::abs(c.trace()) < 1e-12);
  MatrixXC off = c;
  off.diagonal().setZero();
  CHECK(off.norm() < 1e-13);
}

TEST_CASE("Weyl monomials") {
  const auto pair = build_truncated_pair(16);
  CHECK((weyl_monomial(pair, 1, 0) - pair.x).norm() < 1e-14);
  CHECK((weyl_monomial(pair, 0, 1) - pair.p).norm() < 1e-14);
  const MatrixXC w11 = weyl_monomial(pair, 1, 1);
  CHECK((w11 - 0.5 * (pair.x * pair.p + pair.p * pair.x)).norm() < 1e-13);
  const MatrixXC w21 = weyl_monomial(pair, 2, 1);
  const MatrixXC& x = pair.x;
  const MatrixXC& p = pair.p;
  CHECK((w21 - (x * x * p + x * p * x + p * x * x) / 3.0).norm() < 1e-12);
  CHECK((w21 - w21.adjoint()).norm() < 1e-12);
}

TEST_CASE("commutators with monomials on the low subspace") {
  const auto pair = build_truncated_pair(32);
  const int low = 16;
  // [x, p^3] = 3 i hbar p^2 holds on low states and fails on the top ones.
  const MatrixXC p3 = pair.p * pair.p * pair.p;
  const MatrixXC lhs = pair.x * p3 - p3 * pair.x;
  const MatrixXC rhs = std::complex<double>(0.0, 3.0) * pair.p * pair.p;
  CHECK(low_subspace_residual(lhs - rhs, low) < 1e-10);
  CHECK((lhs - rhs).norm() > 1.0);
  CHECK(weyl_commutator_check(pair, 0, 3, CommutatorSide::X) < 1e-10);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      if (a + b == 0) continue;
      CHECK(weyl_commutator_check(pair, a, b, CommutatorSide::X) < 1e-9);
      CHECK(weyl_commutator_check(pair, a, b, CommutatorSide::P) < 1e-9);
    }
}

TEST_CASE("extended quadruple algebra") {
  for (double kappa : {0.0, 0.5, 1.0}) {
    const auto quad = build_extended_quad(16, kappa);
    CHECK(quad.low_columns.size() == 64);
    for (const auto& row : extended_algebra_check(quad)) {
      INFO(row.check);
      CHECK(row.residual < 1e-10);
    }
  }
  const auto report = operator_report(16, 1.0, 3, {0.0, 1.0});
  CHECK(report.size() > 10);
  for (const auto& row : report) {
    INFO(row.check << " degree " << row.degree);
    CHECK(row.residual < 1e-9);
  }
}
