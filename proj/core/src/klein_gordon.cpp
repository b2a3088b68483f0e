#include <cmath>
#include <numbers>
#include <stdexcept>

#include "relwig/scalar.hpp"
#include "relwig/spectral.hpp"

namespace relwig {

namespace {

/// i hbar d/dx along one axis of an X^0-major (n0 x n1) array.
std::vector<Complex> momentum_apply(const std::vector<Complex>& f, int n0, int n1, int axis, double length,
                                    double hbar) {
  std::vector<Complex> buf = f;
  const int n = axis == 0 ? n0 : n1;
  const FftPlan fwd(n, axis == 0 ? n1 : n0, axis == 0 ? n1 : 1, axis == 0 ? 1 : n1, FftDirection::Forward);
  const FftPlan bwd(n, axis == 0 ? n1 : n0, axis == 0 ? n1 : 1, axis == 0 ? 1 : n1, FftDirection::Backward);
  fwd.execute(buf.data());
  const auto k = fft_wavenumbers(n, length);
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b) {
      const double km = k[static_cast<std::size_t>(axis == 0 ? a : b)];
      buf[static_cast<std::size_t>(a) * n1 + b] *= -hbar * km / n;
    }
  bwd.execute(buf.data());
  return buf;
}

}  // namespace

KleinGordonField::KleinGordonField(int n0_, double l0_, int n1_, double l1_)
    : n0(n0_), n1(n1_), l0(l0_), l1(l1_), values(static_cast<std::size_t>(n0_) * static_cast<std::size_t>(n1_)) {
  if (!is_power_of_two(n0) || !is_power_of_two(n1) || n0 < 2 || n1 < 2)
    throw std::invalid_argument("KleinGordonField: sizes must be powers of two");
  if (!(l0 > 0.0) || !(l1 > 0.0)) throw std::invalid_argument("KleinGordonField: lengths must be positive");
}

double KleinGordonField::norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * (l0 / n0) * (l1 / n1);
}

KleinGordonField kg_plane_wave(int n0, double l0, int n1, double l1, int m0, int m1, double hbar) {
  KleinGordonField f(n0, l0, n1, l1);
  const double p0 = hbar * 2.0 * std::numbers::pi * m0 / l0;
  const double p1 = hbar * 2.0 * std::numbers::pi * m1 / l1;
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b) f(a, b) = std::exp(Complex(0.0, -(p0 * f.x0(a) + p1 * f.x1(b)) / hbar));
  return f;
}

double kg_eigenvalue(double p0, double p1, const PhysicalConstants& k) {
  return (p0 * p0 - p1 * p1 - k.m * k.m * k.c * k.c) / (2.0 * k.m);
}

KleinGordonField klein_gordon_apply(const KleinGordonField& phi, const PotentialSpec& A, const PhysicalConstants& k) {
  const int n0 = phi.n0, n1 = phi.n1;
  const std::size_t n = phi.values.size();
  std::vector<std::array<double, 4>> a(static_cast<std::size_t>(n1));
  for (int b = 0; b < n1; ++b) a[static_cast<std::size_t>(b)] = A.at_x1(phi.x1(b));
  const auto at = [&](std::size_t q, int mu) { return a[q % static_cast<std::size_t>(n1)][static_cast<std::size_t>(mu)]; };

  KleinGordonField out(n0, phi.l0, n1, phi.l1);
  for (std::size_t q = 0; q < n; ++q) out.values[q] = -0.5 * k.m * k.c * k.c * phi.values[q];

  for (int mu = 0; mu < 2; ++mu) {
    const double g = mu == 0 ? 1.0 : -1.0;
    const double len = mu == 0 ? phi.l0 : phi.l1;
    auto chi = momentum_apply(phi.values, n0, n1, mu, len, k.hbar);
    for (std::size_t q = 0; q < n; ++q) chi[q] -= k.e * at(q, mu) * phi.values[q];
    auto second = momentum_apply(chi, n0, n1, mu, len, k.hbar);
    for (std::size_t q = 0; q < n; ++q)
      out.values[q] += g / (2.0 * k.m) * (second[q] - k.e * at(q, mu) * chi[q]);
  }
  // Transverse components enter only through (e A_k)^2.
  for (int mu = 2; mu < 4; ++mu)
    for (std::size_t q = 0; q < n; ++q) {
      const double ea = k.e * at(q, mu);
      out.values[q] -= ea * ea / (2.0 * k.m) * phi.values[q];
    }
  return out;
}

KleinGordonField klein_gordon_propagate(const KleinGordonField& phi, double s, const PhysicalConstants& k) {
  KleinGordonField out = phi;
  const int n0 = phi.n0, n1 = phi.n1;
  FftPlan(n0, n1, n1, 1, FftDirection::Forward).execute(out.values.data());
  FftPlan(n1, n0, 1, n1, FftDirection::Forward).execute(out.values.data());
  const auto k0 = fft_wavenumbers(n0, phi.l0);
  const auto k1 = fft_wavenumbers(n1, phi.l1);
  const double scale = 1.0 / (static_cast<double>(n0) * n1);
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b) {
      const double lam = kg_eigenvalue(-k.hbar * k0[static_cast<std::size_t>(a)], -k.hbar * k1[static_cast<std::size_t>(b)], k);
      out(a, b) *= scale * std::exp(Complex(0.0, lam * s / k.hbar));
    }
  FftPlan(n0, n1, n1, 1, FftDirection::Backward).execute(out.values.data());
  FftPlan(n1, n0, 1, n1, FftDirection::Backward).execute(out.values.data());
  return out;
}

}  // namespace relwig
