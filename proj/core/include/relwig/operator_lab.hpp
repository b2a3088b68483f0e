#pragma once

// Finite-dimensional checks of phase-space operator identities.
//
// Truncated oscillator: a|n> = sqrt(n)|n-1>, x = sqrt(hbar/2)(a + a^dagger),
// p = i sqrt(hbar/2)(a^dagger - a). Then [x, p] = i hbar on every basis state
// except the top one, where it equals -i hbar (N - 1). Residuals are measured
// only on basis states with index < N/2 (the "low subspace").

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace relwig {

using MatrixXC = Eigen::MatrixXcd;
using SparseC = Eigen::SparseMatrix<std::complex<double>>;

struct TruncatedPair {
  int n = 0;
  double hbar = 1.0;
  MatrixXC x, p;
};

/// Throws std::invalid_argument for N < 8 or hbar <= 0.
TruncatedPair build_truncated_pair(int n, double hbar = 1.0);

/// Weyl-symmetrised monomial: the average of all distinct orderings of a
/// factors of x and b factors of p.
MatrixXC weyl_monomial(const TruncatedPair& pair, int a, int b);

/// max over low basis vectors e_k of |M e_k|.
double low_subspace_residual(const MatrixXC& M, int low);
double low_subspace_residual(const SparseC& M, const std::vector<int>& low_columns);

enum class CommutatorSide { X, P };

/// X side: |([x, W(a,b)] - i hbar dW/dp) v|; P side: |([p, W(a,b)] + i hbar dW/dx) v|,
/// where dW/dp = b W(a, b-1) and dW/dx = a W(a-1, b).
double weyl_commutator_check(const TruncatedPair& pair, int a, int b, CommutatorSide side);

/// X = x(x)1, Lambda = -p(x)1, P = 1(x)x, Theta = -1(x)p on two truncated pairs with hbar = 1.
struct ExtendedQuad {
  int n = 0;
  double kappa = 0.0;
  double hbar = 1.0;
  SparseC X, P, Lambda, Theta;
  /// Flattened indices i * n + j with i, j < n/2.
  std::vector<int> low_columns;
};

ExtendedQuad build_extended_quad(int n, double kappa, double hbar = 1.0);

struct ReportRow {
  std::string check;
  double kappa;
  int degree;
  double residual;
};

/// [X, P] = 0, [X, Lambda] = -i, [P, Theta] = -i, [Lambda, Theta] = 0,
/// x = X - (hbar kappa/2) Theta, p = P + (hbar kappa/2) Lambda with [x, p] = -i hbar kappa,
/// mirror x' = x + hbar kappa Theta, p' = p - hbar kappa Lambda with [x', p'] = +i hbar kappa,
/// and the vanishing cross-commutators [x', x], [x', p], [p', x], [p', p].
std::vector<ReportRow> extended_algebra_check(const ExtendedQuad& quad);

/// Every monomial with 1 <= a + b <= max_degree on both sides, then the
/// extended algebra for each kappa.
std::vector<ReportRow> operator_report(int n, double hbar, int max_degree, const std::vector<double>& kappas);

}  // namespace relwig
