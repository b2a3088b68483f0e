#include "relwig/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "relwig/errors.hpp"

namespace relwig {

namespace {

using Matrix2C = Eigen::Matrix<Complex, 2, 2>;

Matrix4C kron(const Matrix2C& a, const Matrix2C& b) {
  Matrix4C out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

std::array<Matrix2C, 4> pauli() {
  std::array<Matrix2C, 4> s;
  s[0] << 1, 0, 0, 1;
  s[1] << 0, 1, 1, 0;
  s[2] << 0, -kI, kI, 0;
  s[3] << 1, 0, 0, -1;
  return s;
}

std::array<Matrix4C, 4> build(GammaRep rep) {
  const auto s = pauli();
  std::array<Matrix4C, 4> g;
  g[0] = rep == GammaRep::Dirac ? kron(s[3], s[0]) : kron(s[1], s[0]);
  const Matrix2C i_sigma2 = kI * s[2];
  for (int j = 1; j < 4; ++j) g[static_cast<std::size_t>(j)] = kron(i_sigma2, s[static_cast<std::size_t>(j)]);
  return g;
}

const std::array<Matrix4C, 4>& table(GammaRep rep) {
  static const std::array<Matrix4C, 4> dirac = build(GammaRep::Dirac);
  static const std::array<Matrix4C, 4> weyl = build(GammaRep::Weyl);
  return rep == GammaRep::Dirac ? dirac : weyl;
}

void check_index(int mu) {
  if (mu < 0 || mu > 3) throw std::out_of_range("gamma index out of range: " + std::to_string(mu));
}

}  // namespace

FourVector FourVector::raised() const {
  if (variance_ == Variance::Upper) return *this;
  FourVector out = *this;
  for (int mu = 0; mu < 4; ++mu) out[mu] *= MetricSignature::g(mu);
  out.variance_ = Variance::Upper;
  return out;
}

FourVector FourVector::lowered() const {
  if (variance_ == Variance::Lower) return *this;
  FourVector out = *this;
  for (int mu = 0; mu < 4; ++mu) out[mu] *= MetricSignature::g(mu);
  out.variance_ = Variance::Lower;
  return out;
}

double FourVector::dot(const FourVector& other) const {
  const FourVector& a = *this;
  const FourVector b = other.variance_ == variance_ ? other.as(variance_ == Variance::Upper ? Variance::Lower : Variance::Upper)
                                                    : other;
  double sum = 0.0;
  for (int mu = 0; mu < 4; ++mu) sum += a[mu] * b[mu];
  return sum;
}

FourVector FourVector::operator+(const FourVector& other) const {
  const FourVector b = other.as(variance_);
  FourVector out = *this;
  for (int mu = 0; mu < 4; ++mu) out[mu] += b[mu];
  return out;
}

FourVector FourVector::operator-(const FourVector& other) const { return *this + other * -1.0; }

FourVector FourVector::operator*(double s) const {
  FourVector out = *this;
  for (int mu = 0; mu < 4; ++mu) out[mu] *= s;
  return out;
}

double FourVector::max_abs_diff(const FourVector& other) const {
  const FourVector a = raised();
  const FourVector b = other.raised();
  double m = 0.0;
  for (int mu = 0; mu < 4; ++mu) m = std::max(m, std::abs(a[mu] - b[mu]));
  return m;
}

const char* to_string(GammaRep rep) { return rep == GammaRep::Dirac ? "dirac" : "weyl"; }

GammaRep gamma_rep_from_string(const std::string& name) {
  if (name == "dirac") return GammaRep::Dirac;
  if (name == "weyl") return GammaRep::Weyl;
  throw std::invalid_argument("unknown gamma representation '" + name + "' (expected dirac or weyl)");
}

const Matrix4C& gamma(GammaRep rep, int mu) {
  check_index(mu);
  return table(rep)[static_cast<std::size_t>(mu)];
}

Matrix4C gamma_lower(GammaRep rep, int mu) { return MetricSignature::g(mu) * gamma(rep, mu); }

Matrix4C sigma(GammaRep rep, int mu, int nu) {
  const Matrix4C& a = gamma(rep, mu);
  const Matrix4C& b = gamma(rep, nu);
  return 0.5 * (a * b - b * a);
}

Matrix4C alpha(GammaRep rep, int k) { return gamma(rep, 0) * gamma(rep, k); }

Matrix4C slash(const FourVector& v, GammaRep rep) {
  const FourVector up = v.raised();
  Matrix4C out = Matrix4C::Zero();
  for (int mu = 0; mu < 4; ++mu) out += up[mu] * gamma_lower(rep, mu);
  return out;
}

FourVector trace_components(const Matrix4C& M, GammaRep rep) {
  FourVector v;
  for (int mu = 0; mu < 4; ++mu) v[mu] = 0.25 * (M * gamma(rep, mu)).trace().real();
  return v;
}

FourVector unslash(const Matrix4C& M, GammaRep rep) {
  FourVector v;
  for (int mu = 0; mu < 4; ++mu) {
    const Complex t = 0.25 * (M * gamma(rep, mu)).trace();
    v[mu] = t.real();
  }
  const double scale = M.norm();
  const double residual = (M - slash(v, rep)).norm();
  if (residual > 1e-10 * scale) {
    throw NotAVectorError("not-a-vector: matrix has a component outside span{gamma_mu} (residual " +
                          std::to_string(residual) + ")");
  }
  return v;
}

Matrix4C hermitian_part(const Matrix4C& M) { return 0.5 * (M + M.adjoint()); }

FieldTensor FieldTensor::from_matrix(const Eigen::Matrix4d& f, double tol) {
  const double asym = (f + f.transpose()).norm();
  if (asym > tol * std::max(1.0, f.norm())) {
    throw std::invalid_argument("field tensor is not antisymmetric (|F + F^T| = " + std::to_string(asym) + ")");
  }
  return FieldTensor(0.5 * (f - f.transpose()));
}

Matrix4C field_slash(const FieldTensor& F, GammaRep rep) {
  Matrix4C out = Matrix4C::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      if (F(mu, nu) != 0.0) out += 0.5 * F(mu, nu) * sigma(rep, mu, nu);
  return out;
}

Matrix4C exp_hermitian(const Matrix4C& H, double t) {
  const double asym = (H - H.adjoint()).norm();
  if (asym > 1e-12 * std::max(1.0, H.norm())) {
    throw std::invalid_argument("exp_hermitian: matrix is not Hermitian (|H - H^dagger| = " + std::to_string(asym) +
                                ")");
  }
  const Matrix4C h = hermitian_part(H);
  Eigen::SelfAdjointEigenSolver<Matrix4C> es(h);
  const auto& w = es.eigenvalues();
  const auto& V = es.eigenvectors();
  Eigen::Matrix<Complex, 4, 1> phase;
  for (int i = 0; i < 4; ++i) phase(i) = std::exp(-kI * (t * w(i)));
  return V * phase.asDiagonal() * V.adjoint();
}

double unitarity_defect(const Matrix4C& M) { return (M.adjoint() * M - Matrix4C::Identity()).norm(); }

}  // namespace relwig
