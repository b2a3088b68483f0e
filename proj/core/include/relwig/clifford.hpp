#pragma once

// Gamma-matrix algebra for the mostly-minus Minkowski metric (+,-,-,-).
//
// Conventions used throughout the library:
//   * gamma(rep, mu) returns gamma^mu (upper index); gamma_lower() returns
//     gamma_mu = g_{mu mu} gamma^mu.
//   * slash(v) = v^mu gamma_mu, unslash(M)^mu = Tr(M gamma^mu) / 4.
//   * sigma^{mu nu} = [gamma^mu, gamma^nu] / 2.

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace relwig {

using Complex = std::complex<double>;
using Matrix4C = Eigen::Matrix<Complex, 4, 4>;
using Spinor = Eigen::Matrix<Complex, 4, 1>;

inline constexpr Complex kI{0.0, 1.0};

struct MetricSignature {
  static constexpr std::array<double, 4> diag{1.0, -1.0, -1.0, -1.0};
  static constexpr double g(int mu) { return diag[static_cast<std::size_t>(mu)]; }
};

enum class Variance { Upper, Lower };

/// Real four-component vector that remembers whether its index is up or down.
/// All metric raising/lowering in the library goes through this type.
class FourVector {
 public:
  FourVector() = default;
  explicit FourVector(const std::array<double, 4>& components, Variance variance = Variance::Upper)
      : c_(components), variance_(variance) {}

  static FourVector upper(double v0, double v1, double v2, double v3) {
    return FourVector({v0, v1, v2, v3}, Variance::Upper);
  }
  static FourVector lower(double v0, double v1, double v2, double v3) {
    return FourVector({v0, v1, v2, v3}, Variance::Lower);
  }

  double operator[](int mu) const { return c_[static_cast<std::size_t>(mu)]; }
  double& operator[](int mu) { return c_[static_cast<std::size_t>(mu)]; }

  Variance variance() const { return variance_; }
  const std::array<double, 4>& components() const { return c_; }

  FourVector raised() const;
  FourVector lowered() const;
  /// Same vector expressed with the requested index position.
  FourVector as(Variance v) const { return v == Variance::Upper ? raised() : lowered(); }

  /// Minkowski contraction v.w, valid for any combination of variances.
  double dot(const FourVector& other) const;
  double squared() const { return dot(*this); }

  FourVector operator+(const FourVector& other) const;
  FourVector operator-(const FourVector& other) const;
  FourVector operator*(double s) const;
  friend FourVector operator*(double s, const FourVector& v) { return v * s; }

  /// Largest absolute component difference; both operands compared in upper form.
  double max_abs_diff(const FourVector& other) const;

 private:
  std::array<double, 4> c_{0.0, 0.0, 0.0, 0.0};
  Variance variance_ = Variance::Upper;
};

enum class GammaRep { Dirac, Weyl };

const char* to_string(GammaRep rep);
GammaRep gamma_rep_from_string(const std::string& name);

/// gamma^mu in the requested representation. Throws std::out_of_range for mu outside 0..3.
const Matrix4C& gamma(GammaRep rep, int mu);
/// gamma_mu = g_{mu mu} gamma^mu.
Matrix4C gamma_lower(GammaRep rep, int mu);
/// sigma^{mu nu} = (gamma^mu gamma^nu - gamma^nu gamma^mu) / 2.
Matrix4C sigma(GammaRep rep, int mu, int nu);
/// alpha^k = gamma^0 gamma^k (Hermitian).
Matrix4C alpha(GammaRep rep, int k);

Matrix4C slash(const FourVector& v, GammaRep rep = GammaRep::Dirac);

/// Inverse of slash(). Throws NotAVectorError when M has a component outside
/// span{gamma_mu} larger than 1e-10 relative to |M|.
FourVector unslash(const Matrix4C& M, GammaRep rep = GammaRep::Dirac);

/// Component extraction Tr(M gamma^mu)/4 with no span check.
FourVector trace_components(const Matrix4C& M, GammaRep rep = GammaRep::Dirac);

/// <A>_H = (A + A^dagger) / 2.
Matrix4C hermitian_part(const Matrix4C& M);

/// Antisymmetric electromagnetic tensor F_{mu nu} (both indices down).
class FieldTensor {
 public:
  FieldTensor() : f_(Eigen::Matrix4d::Zero()) {}
  /// Throws std::invalid_argument unless |F + F^T| <= tol * max(1, |F|).
  static FieldTensor from_matrix(const Eigen::Matrix4d& f, double tol = 1e-12);

  double operator()(int mu, int nu) const { return f_(mu, nu); }
  const Eigen::Matrix4d& matrix() const { return f_; }

 private:
  explicit FieldTensor(const Eigen::Matrix4d& f) : f_(f) {}
  Eigen::Matrix4d f_;
};

/// F-slash = sigma^{mu nu} F_{mu nu} / 2.
Matrix4C field_slash(const FieldTensor& F, GammaRep rep = GammaRep::Dirac);

/// exp(-i t H) for Hermitian H via a self-adjoint eigendecomposition.
/// Throws std::invalid_argument when |H - H^dagger| exceeds 1e-12 * max(1, |H|).
Matrix4C exp_hermitian(const Matrix4C& H, double t);

/// Frobenius norm of M^dagger M - 1.
double unitarity_defect(const Matrix4C& M);

}  // namespace relwig
