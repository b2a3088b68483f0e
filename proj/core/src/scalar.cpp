#include "relwig/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "relwig/csv.hpp"
#include "relwig/errors.hpp"
#include "relwig/parallel.hpp"
#include "relwig/spectral.hpp"

namespace relwig {

namespace {

void check_grid(int n, double length, const char* what) {
  if (!is_power_of_two(n) || n < 8) throw std::invalid_argument(std::string(what) + ": size must be a power of two >= 8");
  if (!(length > 0.0)) throw std::invalid_argument(std::string(what) + ": length must be positive");
}

/// d/dx of a periodic real series, computed spectrally along one axis of an X-major (n1 x n2) array.
std::vector<double> spectral_derivative(const std::vector<double>& f, int n1, int n2, int axis, double length) {
  std::vector<Complex> buf(f.begin(), f.end());
  const int n = axis == 0 ? n1 : n2;
  const int howmany = axis == 0 ? n2 : n1;
  const int stride = axis == 0 ? n2 : 1;
  const int dist = axis == 0 ? 1 : n2;
  const FftPlan fwd(n, howmany, stride, dist, FftDirection::Forward);
  const FftPlan bwd(n, howmany, stride, dist, FftDirection::Backward);
  fwd.execute(buf.data());
  const auto k = fft_wavenumbers(n, length);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) {
      const int m = axis == 0 ? a : b;
      // The Nyquist mode has no well-defined derivative for real data.
      const double km = (m == n / 2) ? 0.0 : k[static_cast<std::size_t>(m)];
      buf[static_cast<std::size_t>(a) * n2 + b] *= Complex(0.0, km / n);
    }
  bwd.execute(buf.data());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = buf[i].real();
  return out;
}

}  // namespace

double ScalarPotential::U(double x) const {
  double acc = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
  return acc + sine_amplitude * std::sin(sine_wavenumber * x);
}

double ScalarPotential::dU(double x) const {
  double acc = 0.0;
  for (std::size_t n = poly.size(); n-- > 1;) acc = acc * x + static_cast<double>(n) * poly[n];
  return acc + sine_amplitude * sine_wavenumber * std::cos(sine_wavenumber * x);
}

bool ScalarPotential::is_zero() const {
  return sine_amplitude == 0.0 && std::all_of(poly.begin(), poly.end(), [](double v) { return v == 0.0; });
}

double ScalarHamiltonian::V(double p) const {
  const auto& k = constants;
  if (kinetic == KineticForm::Newtonian) return p * p / (2.0 * k.m);
  return std::hypot(k.c * p, k.m * k.c * k.c);
}

double ScalarHamiltonian::dV(double p) const {
  const auto& k = constants;
  if (kinetic == KineticForm::Newtonian) return p / k.m;
  return k.c * k.c * p / V(p);
}

Wavefunction1D::Wavefunction1D(int n_, double x_min_, double length_)
    : n(n_), x_min(x_min_), length(length_), values(static_cast<std::size_t>(n_)) {
  check_grid(n, length, "Wavefunction1D");
}

double Wavefunction1D::norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * dx();
}

void Wavefunction1D::normalize() {
  const double s = 1.0 / std::sqrt(norm());
  for (auto& v : values) v *= s;
}

Wavefunction1D gaussian_wavefunction(int n, double x_min, double length, double xc, double sx, double p,
                                     double hbar) {
  Wavefunction1D psi(n, x_min, length);
  for (int i = 0; i < n; ++i) {
    const double x = psi.x(i);
    psi.values[static_cast<std::size_t>(i)] = std::exp(Complex(-(x - xc) * (x - xc) / (4.0 * sx * sx), p * x / hbar));
  }
  psi.normalize();
  return psi;
}

ScalarObservables scalar_observables(const Wavefunction1D& psi, const ScalarHamiltonian& H, double t) {
  ScalarObservables o{};
  o.t = t;
  double w = 0.0, sx = 0.0, su = 0.0;
  for (int i = 0; i < psi.n; ++i) {
    const double d = std::norm(psi.values[static_cast<std::size_t>(i)]);
    w += d;
    sx += psi.x(i) * d;
    su += H.U(psi.x(i)) * d;
  }
  o.norm = w * psi.dx();
  const auto hat = fft(psi.values);
  const auto k = fft_wavenumbers(psi.n, psi.length);
  const double hbar = H.constants.hbar;
  double wk = 0.0, sp = 0.0, sv = 0.0;
  for (int i = 0; i < psi.n; ++i) {
    const double d = std::norm(hat[static_cast<std::size_t>(i)]);
    const double p = hbar * k[static_cast<std::size_t>(i)];
    wk += d;
    sp += p * d;
    sv += H.V(p) * d;
  }
  o.mean_x = w > 0.0 ? sx / w : 0.0;
  o.mean_p = wk > 0.0 ? sp / wk : 0.0;
  o.energy = (wk > 0.0 ? sv / wk : 0.0) + (w > 0.0 ? su / w : 0.0);
  return o;
}

void write_scalar_header(std::ostream& os) { os << "t,norm,meanX,meanP,energy\n"; }

void write_scalar_row(std::ostream& os, const ScalarObservables& o) {
  os << format_double(o.t) << ',' << format_double(o.norm) << ',' << format_double(o.mean_x) << ','
     << format_double(o.mean_p) << ',' << format_double(o.energy) << '\n';
}

struct SalpeterPropagator::Impl {
  int n;
  std::vector<Complex> half_u, kinetic;
  FftPlan fwd, bwd;
  Impl(int n_) : n(n_), fwd(n_, 1, 1, 0, FftDirection::Forward), bwd(n_, 1, 1, 0, FftDirection::Backward) {}
};

SalpeterPropagator::SalpeterPropagator(const ScalarHamiltonian& H, int n, double x_min, double length, double dt) {
  check_grid(n, length, "SalpeterPropagator");
  H.constants.validate();
  impl_ = std::make_unique<Impl>(n);
  const double hbar = H.constants.hbar;
  const double dx = length / n;
  impl_->half_u.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    impl_->half_u[static_cast<std::size_t>(i)] = std::exp(Complex(0.0, -H.U(x_min + i * dx) * dt / (2.0 * hbar)));
  const auto k = fft_wavenumbers(n, length);
  impl_->kinetic.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    impl_->kinetic[static_cast<std::size_t>(i)] =
        std::exp(Complex(0.0, -H.V(hbar * k[static_cast<std::size_t>(i)]) * dt / hbar)) / static_cast<double>(n);
}

SalpeterPropagator::~SalpeterPropagator() = default;

void SalpeterPropagator::step(Wavefunction1D& psi) {
  if (psi.n != impl_->n) throw std::invalid_argument("SalpeterPropagator::step: grid mismatch");
  const double before = psi.norm();
  auto& v = psi.values;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= impl_->half_u[i];
  impl_->fwd.execute(v.data());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= impl_->kinetic[i];
  impl_->bwd.execute(v.data());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= impl_->half_u[i];
  const double after = psi.norm();
  if (!std::isfinite(after)) throw NumericalAbort("salpeter step: non-finite values");
  const double drift = before > 0.0 ? std::abs(after - before) / before : after;
  if (drift > norm_tolerance) throw NumericalAbort("salpeter step: relative norm drift " + std::to_string(drift));
  if (!leak_warned_ && after > 0.0) {
    const double edge = (std::norm(v.front()) + std::norm(v.back())) * psi.dx();
    if (edge > leak_tolerance * after) {
      warnings_.push_back("boundary leak: edge density fraction " + std::to_string(edge / after));
      leak_warned_ = true;
    }
  }
}

Wavefunction1D salpeter_step(const Wavefunction1D& psi, const ScalarHamiltonian& H, double dt, int n) {
  Wavefunction1D out = psi;
  if (n <= 0) return out;
  SalpeterPropagator prop(H, psi.n, psi.x_min, psi.length, dt);
  for (int s = 0; s < n; ++s) prop.step(out);
  return out;
}

double mean_group_velocity(const Wavefunction1D& psi, const ScalarHamiltonian& H) {
  const auto hat = fft(psi.values);
  const auto k = fft_wavenumbers(psi.n, psi.length);
  double w = 0.0, s = 0.0;
  for (int i = 0; i < psi.n; ++i) {
    const double d = std::norm(hat[static_cast<std::size_t>(i)]);
    w += d;
    s += H.dV(H.constants.hbar * k[static_cast<std::size_t>(i)]) * d;
  }
  return s / w;
}

PhaseSpaceField::PhaseSpaceField(int nx_, double x_min_, double lx_, int np_, double p_min_, double lp_)
    : nx(nx_), np(np_), x_min(x_min_), lx(lx_), p_min(p_min_), lp(lp_),
      values(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(np_)) {
  check_grid(nx, lx, "PhaseSpaceField X");
  check_grid(np, lp, "PhaseSpaceField P");
}

double PhaseSpaceField::norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * dx() * dp();
}

std::vector<double> PhaseSpaceField::density() const {
  std::vector<double> r(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) r[i] = std::norm(values[i]);
  return r;
}

PhaseSpaceField gaussian_phase_space(int nx, double x_min, double lx, int np, double p_min, double lp, double xc,
                                     double pc, double sx, double sp) {
  PhaseSpaceField f(nx, x_min, lx, np, p_min, lp);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < np; ++j) {
      const double u = (f.x(i) - xc) / sx, w = (f.p(j) - pc) / sp;
      f(i, j) = std::exp(-0.25 * (u * u + w * w));
    }
  const double s = 1.0 / std::sqrt(f.norm());
  for (auto& v : f.values) v *= s;
  return f;
}

struct KvnPropagator::Impl {
  int nx, np;
  std::vector<Complex> half_x;  // per (kx, P_j)
  std::vector<Complex> full_p;  // per (X_i, kp)
  std::vector<Complex> phase;   // per (X_i, P_j), empty when f = 0
  FftPlan fx, bx, fp, bp;
  Impl(int nx_, int np_)
      : nx(nx_), np(np_),
        fx(nx_, np_, np_, 1, FftDirection::Forward), bx(nx_, np_, np_, 1, FftDirection::Backward),
        fp(np_, nx_, 1, np_, FftDirection::Forward), bp(np_, nx_, 1, np_, FftDirection::Backward) {}
};

KvnPropagator::KvnPropagator(const ScalarHamiltonian& H, const PhaseSpaceField& g, double dt, const KvnOptions& opts) {
  H.constants.validate();
  impl_ = std::make_unique<Impl>(g.nx, g.np);
  const auto kx = fft_wavenumbers(g.nx, g.lx);
  const auto kp = fft_wavenumbers(g.np, g.lp);
  const std::size_t n = static_cast<std::size_t>(g.nx) * g.np;
  impl_->half_x.resize(n);
  impl_->full_p.resize(n);
  double max_x_shift = 0.0, max_p_shift = 0.0;
  for (int j = 0; j < g.np; ++j) max_x_shift = std::max(max_x_shift, std::abs(H.dV(g.p(j)) * dt));
  for (int i = 0; i < g.nx; ++i) max_p_shift = std::max(max_p_shift, std::abs(H.dU(g.x(i)) * dt));
  for (int a = 0; a < g.nx; ++a)
    for (int j = 0; j < g.np; ++j)
      impl_->half_x[static_cast<std::size_t>(a) * g.np + j] =
          std::exp(Complex(0.0, -kx[static_cast<std::size_t>(a)] * H.dV(g.p(j)) * 0.5 * dt)) / static_cast<double>(g.nx);
  for (int i = 0; i < g.nx; ++i)
    for (int b = 0; b < g.np; ++b)
      impl_->full_p[static_cast<std::size_t>(i) * g.np + b] =
          std::exp(Complex(0.0, kp[static_cast<std::size_t>(b)] * H.dU(g.x(i)) * dt)) / static_cast<double>(g.np);
  if (opts.phase) {
    impl_->phase.resize(n);
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.np; ++j)
        impl_->phase[static_cast<std::size_t>(i) * g.np + j] = std::exp(Complex(0.0, -opts.phase(g.x(i), g.p(j)) * dt));
  }
  if (max_x_shift > 0.5 * g.lx)
    warnings_.push_back("aliasing: X shift per step " + std::to_string(max_x_shift) + " exceeds half the box");
  if (max_p_shift > 0.5 * g.lp)
    warnings_.push_back("aliasing: P shift per step " + std::to_string(max_p_shift) + " exceeds half the box");
}

KvnPropagator::~KvnPropagator() = default;

void KvnPropagator::step(PhaseSpaceField& psi) {
  if (psi.nx != impl_->nx || psi.np != impl_->np) throw std::invalid_argument("KvnPropagator::step: grid mismatch");
  auto& v = psi.values;
  const auto multiply = [&](const std::vector<Complex>& m) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= m[i];
  };
  impl_->fx.execute(v.data());
  multiply(impl_->half_x);
  impl_->bx.execute(v.data());
  if (!impl_->phase.empty()) multiply(impl_->phase);
  impl_->fp.execute(v.data());
  multiply(impl_->full_p);
  impl_->bp.execute(v.data());
  impl_->fx.execute(v.data());
  multiply(impl_->half_x);
  impl_->bx.execute(v.data());
}

PhaseSpaceField kvn_step(const PhaseSpaceField& psi, const ScalarHamiltonian& H, double dt, int n,
                         const KvnOptions& opts) {
  PhaseSpaceField out = psi;
  if (n <= 0 || dt == 0.0) return out;
  KvnPropagator prop(H, psi, dt, opts);
  for (int s = 0; s < n; ++s) prop.step(out);
  return out;
}

TrigInterpolator::TrigInterpolator(const PhaseSpaceField& psi)
    : nx_(psi.nx), np_(psi.np), x_min_(psi.x_min), lx_(psi.lx), p_min_(psi.p_min), lp_(psi.lp), coeffs_(psi.values) {
  FftPlan(nx_, np_, np_, 1, FftDirection::Forward).execute(coeffs_.data());
  FftPlan(np_, nx_, 1, np_, FftDirection::Forward).execute(coeffs_.data());
  const double s = 1.0 / (static_cast<double>(nx_) * np_);
  for (auto& c : coeffs_) c *= s;
}

Complex TrigInterpolator::operator()(double x, double p) const {
  const auto basis = [](int n, double length, double u) {
    std::vector<Complex> e(static_cast<std::size_t>(n));
    const double dk = 2.0 * std::numbers::pi / length;
    for (int a = 0; a < n; ++a) {
      const int m = a < n / 2 ? a : a - n;
      e[static_cast<std::size_t>(a)] = a == n / 2 ? Complex(std::cos(dk * m * u), 0.0) : std::exp(Complex(0.0, dk * m * u));
    }
    return e;
  };
  const auto ex = basis(nx_, lx_, x - x_min_);
  const auto ep = basis(np_, lp_, p - p_min_);
  Complex total = 0.0;
  for (int a = 0; a < nx_; ++a) {
    Complex row = 0.0;
    const Complex* c = &coeffs_[static_cast<std::size_t>(a) * np_];
    for (int b = 0; b < np_; ++b) row += c[b] * ep[static_cast<std::size_t>(b)];
    total += row * ex[static_cast<std::size_t>(a)];
  }
  return total;
}

std::vector<std::pair<double, double>> characteristics_oracle(const std::vector<std::pair<double, double>>& samples,
                                                              const ScalarHamiltonian& H, double dt, int n) {
  std::vector<std::pair<double, double>> out = samples;
  parallel_for(static_cast<int>(out.size()), [&](int b, int e) {
    for (int s = b; s < e; ++s) {
      double x = out[static_cast<std::size_t>(s)].first, p = out[static_cast<std::size_t>(s)].second;
      for (int i = 0; i < n; ++i) {
        const double k1x = H.dV(p), k1p = -H.dU(x);
        const double k2x = H.dV(p + 0.5 * dt * k1p), k2p = -H.dU(x + 0.5 * dt * k1x);
        const double k3x = H.dV(p + 0.5 * dt * k2p), k3p = -H.dU(x + 0.5 * dt * k2x);
        const double k4x = H.dV(p + dt * k3p), k4p = -H.dU(x + dt * k3x);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      }
      out[static_cast<std::size_t>(s)] = {x, p};
    }
  });
  return out;
}

double kvn_l1_error(const PhaseSpaceField& evolved, const std::function<double(double, double)>& rho0,
                    const ScalarHamiltonian& H, double total_time, int samples, std::uint64_t seed,
                    int oracle_steps) {
  if (samples < 1 || oracle_steps < 1) throw std::invalid_argument("kvn_l1_error: samples and steps must be positive");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(samples));
  for (auto& pt : pts) {
    // Explicit affine map of the raw 53-bit draws keeps the sample set identical across standard libraries.
    const double ux = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double up = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    pt = {evolved.x_min + ux * evolved.lx, evolved.p_min + up * evolved.lp};
  }
  const auto origin = characteristics_oracle(pts, H, -total_time / oracle_steps, oracle_steps);
  const TrigInterpolator interp(evolved);
  std::vector<double> diff(pts.size());
  parallel_for(samples, [&](int b, int e) {
    for (int s = b; s < e; ++s) {
      const auto q = static_cast<std::size_t>(s);
      const double num = std::norm(interp(pts[q].first, pts[q].second));
      diff[q] = std::abs(num - rho0(origin[q].first, origin[q].second));
    }
  });
  double sum = 0.0;
  for (double d : diff) sum += d;
  return evolved.lx * evolved.lp * sum / samples;
}

std::vector<double> liouville_residual(const std::vector<PhaseSpaceField>& traj, const ScalarHamiltonian& H,
                                       double dt) {
  if (traj.size() < 3) throw std::invalid_argument("liouville_residual: need at least 3 states");
  const auto& g = traj.front();
  std::vector<double> out;
  for (std::size_t n = 1; n + 1 < traj.size(); ++n) {
    const auto rp = traj[n + 1].density();
    const auto rm = traj[n - 1].density();
    const auto rho = traj[n].density();
    const auto drx = spectral_derivative(rho, g.nx, g.np, 0, g.lx);
    const auto drp = spectral_derivative(rho, g.nx, g.np, 1, g.lp);
    double s = 0.0;
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.np; ++j) {
        const std::size_t q = static_cast<std::size_t>(i) * g.np + j;
        const double lhs = (rp[q] - rm[q]) / (2.0 * dt);
        const double bracket = H.dU(g.x(i)) * drp[q] - H.dV(g.p(j)) * drx[q];
        s += (lhs - bracket) * (lhs - bracket);
      }
    out.push_back(std::sqrt(s / static_cast<double>(rho.size())));
  }
  return out;
}

}  // namespace relwig
