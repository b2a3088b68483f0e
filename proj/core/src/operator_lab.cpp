#include "relwig/operator_lab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace relwig {

namespace {

const std::complex<double> kIm(0.0, 1.0);

SparseC to_sparse(const MatrixXC& m) {
  SparseC s = m.sparseView();
  s.makeCompressed();
  return s;
}

SparseC identity(int n) {
  SparseC I(n, n);
  I.setIdentity();
  return I;
}

SparseC commutator(const SparseC& a, const SparseC& b) { return SparseC(a * b) - SparseC(b * a); }

}  // namespace

TruncatedPair build_truncated_pair(int n, double hbar) {
  if (n < 8) throw std::invalid_argument("build_truncated_pair: N must be at least 8");
  if (!(hbar > 0.0)) throw std::invalid_argument("build_truncated_pair: hbar must be positive");
  MatrixXC a = MatrixXC::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const MatrixXC ad = a.adjoint();
  const double s = std::sqrt(hbar / 2.0);
  TruncatedPair pr;
  pr.n = n;
  pr.hbar = hbar;
  pr.x = s * (a + ad);
  pr.p = kIm * s * (ad - a);
  return pr;
}

MatrixXC weyl_monomial(const TruncatedPair& pair, int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("weyl_monomial: negative power");
  const int d = a + b;
  if (d == 0) return MatrixXC::Identity(pair.n, pair.n);
  if (d > 20) throw std::invalid_argument("weyl_monomial: degree too large");
  MatrixXC sum = MatrixXC::Zero(pair.n, pair.n);
  int count = 0;
  // Each bitmask with exactly b set bits is one ordering; bit set = factor p.
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    if (std::popcount(mask) != b) continue;
    MatrixXC term = MatrixXC::Identity(pair.n, pair.n);
    for (int f = 0; f < d; ++f) term = term * (((mask >> f) & 1u) ? pair.p : pair.x);
    sum += term;
    ++count;
  }
  return sum / static_cast<double>(count);
}

double low_subspace_residual(const MatrixXC& M, int low) {
  double r = 0.0;
  for (int k = 0; k < low; ++k) r = std::max(r, M.col(k).norm());
  return r;
}

double low_subspace_residual(const SparseC& M, const std::vector<int>& cols) {
  double r = 0.0;
  for (int c : cols) r = std::max(r, M.col(c).norm());
  return r;
}

double weyl_commutator_check(const TruncatedPair& pair, int a, int b, CommutatorSide side) {
  const MatrixXC W = weyl_monomial(pair, a, b);
  MatrixXC M;
  if (side == CommutatorSide::X) {
    const MatrixXC dW = b > 0 ? MatrixXC(static_cast<double>(b) * weyl_monomial(pair, a, b - 1))
                              : MatrixXC::Zero(pair.n, pair.n);
    M = pair.x * W - W * pair.x - kIm * pair.hbar * dW;
  } else {
    const MatrixXC dW = a > 0 ? MatrixXC(static_cast<double>(a) * weyl_monomial(pair, a - 1, b))
                              : MatrixXC::Zero(pair.n, pair.n);
    M = pair.p * W - W * pair.p + kIm * pair.hbar * dW;
  }
  return low_subspace_residual(M, pair.n / 2);
}

ExtendedQuad build_extended_quad(int n, double kappa, double hbar) {
  if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("build_extended_quad: kappa must lie in [0, 1]");
  const TruncatedPair pr = build_truncated_pair(n, 1.0);
  const SparseC x = to_sparse(pr.x), p = to_sparse(pr.p), I = identity(n);
  ExtendedQuad q;
  q.n = n;
  q.kappa = kappa;
  q.hbar = hbar;
  q.X = Eigen::kroneckerProduct(x, I);
  q.Lambda = -SparseC(Eigen::kroneckerProduct(p, I));
  q.P = Eigen::kroneckerProduct(I, x);
  q.Theta = -SparseC(Eigen::kroneckerProduct(I, p));
  for (int i = 0; i < n / 2; ++i)
    for (int j = 0; j < n / 2; ++j) q.low_columns.push_back(i * n + j);
  return q;
}

std::vector<ReportRow> extended_algebra_check(const ExtendedQuad& q) {
  const int dim = q.n * q.n;
  const SparseC I = identity(dim);
  const double h = 0.5 * q.hbar * q.kappa;
  const SparseC x = q.X - h * q.Theta;
  const SparseC p = q.P + h * q.Lambda;
  const SparseC xm = x + 2.0 * h * q.Theta;
  const SparseC pm = p - 2.0 * h * q.Lambda;
  const auto res = [&](const SparseC& c, std::complex<double> target) {
    return low_subspace_residual(SparseC(c - target * I), q.low_columns);
  };
  std::vector<ReportRow> rows;
  const auto add = [&](const char* name, double r) { rows.push_back({name, q.kappa, 1, r}); };
  add("comm_X_P_zero", res(commutator(q.X, q.P), 0.0));
  add("comm_X_Lambda", res(commutator(q.X, q.Lambda), -kIm));
  add("comm_P_Theta", res(commutator(q.P, q.Theta), -kIm));
  add("comm_Lambda_Theta_zero", res(commutator(q.Lambda, q.Theta), 0.0));
  add("comm_x_p", res(commutator(x, p), -kIm * q.hbar * q.kappa));
  add("comm_x_Lambda", res(commutator(x, q.Lambda), -kIm));
  add("comm_p_Theta", res(commutator(p, q.Theta), -kIm));
  add("mirror_comm_xm_pm", res(commutator(xm, pm), kIm * q.hbar * q.kappa));
  add("mirror_cross_xm_x", res(commutator(xm, x), 0.0));
  add("mirror_cross_xm_p", res(commutator(xm, p), 0.0));
  add("mirror_cross_pm_x", res(commutator(pm, x), 0.0));
  add("mirror_cross_pm_p", res(commutator(pm, p), 0.0));
  return rows;
}

std::vector<ReportRow> operator_report(int n, double hbar, int max_degree, const std::vector<double>& kappas) {
  if (max_degree < 1 || max_degree > 8) throw std::invalid_argument("operator_report: degree must be 1..8");
  const TruncatedPair pr = build_truncated_pair(n, hbar);
  std::vector<ReportRow> rows;
  for (int d = 1; d <= max_degree; ++d)
    for (int a = d; a >= 0; --a) {
      const int b = d - a;
      const std::string mono = "x" + std::to_string(a) + "p" + std::to_string(b);
      rows.push_back({"weyl_x_" + mono, 1.0, d, weyl_commutator_check(pr, a, b, CommutatorSide::X)});
      rows.push_back({"weyl_p_" + mono, 1.0, d, weyl_commutator_check(pr, a, b, CommutatorSide::P)});
    }
  for (double kap : kappas) {
    const auto ext = extended_algebra_check(build_extended_quad(n, kap));
    rows.insert(rows.end(), ext.begin(), ext.end());
  }
  return rows;
}

}  // namespace relwig
