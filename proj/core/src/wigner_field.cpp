#include "relwig/wigner_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "relwig/convergence.hpp"
#include "relwig/csv.hpp"
#include "relwig/errors.hpp"
#include "relwig/parallel.hpp"
#include "relwig/spectral.hpp"

namespace relwig {

namespace {

using Buffer = std::vector<Complex>;

Spinor load(const Complex* p) { return Eigen::Map<const Spinor>(p); }
void store(Complex* p, const Spinor& v) {
  Eigen::Map<Spinor> m(p);
  m = v;
}

/// Applies the pointwise potential matrix field plus the spectral kinetic term.
SpinorField apply_hamiltonian(const SpinorField& psi, const std::function<PotentialComponents(double, double)>& D) {
  const auto& g = psi.grid();
  const auto& k = psi.constants();
  const GammaRep rep = psi.rep();
  SpinorField out(g, k, rep);
  out.kappa = psi.kappa;
  out.x0 = psi.x0;

  const auto kx = fft_wavenumbers(g.nx, g.lx);
  const FftPlan fwd(g.nx, 4, 4, 1, FftDirection::Forward);
  const FftPlan bwd(g.nx, 4, 4, 1, FftDirection::Backward);
  std::vector<Matrix4C> kin(static_cast<std::size_t>(g.nx));
  for (int i = 0; i < g.nx; ++i) kin[static_cast<std::size_t>(i)] = kinetic_matrix(kx[static_cast<std::size_t>(i)], g.k0, k, rep);

  Buffer buf(static_cast<std::size_t>(g.nx) * 4);
  for (int j = 0; j < g.ntheta; ++j) {
    for (int i = 0; i < g.nx; ++i) store(&buf[static_cast<std::size_t>(i) * 4], psi.at(i, j));
    fwd.execute(buf.data());
    for (int i = 0; i < g.nx; ++i) {
      Complex* p = &buf[static_cast<std::size_t>(i) * 4];
      store(p, kin[static_cast<std::size_t>(i)] * load(p));
    }
    bwd.execute(buf.data());
    for (int i = 0; i < g.nx; ++i) {
      const Spinor v = load(&buf[static_cast<std::size_t>(i) * 4]) / static_cast<double>(g.nx);
      const Matrix4C V = potential_matrix(D(g.x(i), g.theta(j)), k, rep);
      out.set(i, j, v + V * psi.at(i, j));
    }
  }
  return out;
}

}  // namespace

void XThetaGrid::validate() const {
  if (!is_power_of_two(nx) || nx < 8) throw std::invalid_argument("grid nx must be a power of two >= 8");
  if (!is_power_of_two(ntheta) || ntheta < 8) throw std::invalid_argument("grid ntheta must be a power of two >= 8");
  if (!(lx > 0.0) || !std::isfinite(lx)) throw std::invalid_argument("grid lx must be positive");
  if (!(ltheta > 0.0) || !std::isfinite(ltheta)) throw std::invalid_argument("grid ltheta must be positive");
  if (!std::isfinite(x_min) || !std::isfinite(k0)) throw std::invalid_argument("grid x_min and k0 must be finite");
}

SpinorField::SpinorField(const XThetaGrid& grid, const PhysicalConstants& k, GammaRep rep)
    : grid_(grid), k_(k), rep_(rep), data_(grid.nodes() * 4, Complex(0.0, 0.0)) {
  grid_.validate();
}

Spinor SpinorField::at(int i, int j) const { return load(&data_[index(i, j)]); }
void SpinorField::set(int i, int j, const Spinor& v) { store(&data_[index(i, j)], v); }

double SpinorField::norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return s * grid_.dx() * grid_.dtheta();
}

bool SpinorField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

void SpinorField::scale(double s) {
  for (auto& v : data_) v *= s;
}

double l2_distance(const SpinorField& a, const SpinorField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("l2_distance: grids differ");
  double s = 0.0;
  for (std::size_t n = 0; n < a.data().size(); ++n) s += std::norm(a.data()[n] - b.data()[n]);
  return std::sqrt(s * a.grid().dx() * a.grid().dtheta());
}

void PropagationMode::validate() const {
  if (!kvnd && !(kappa > 0.0 && kappa <= 1.0))
    throw std::invalid_argument("kappa must lie in (0, 1] (use kvnd mode for kappa = 0)");
}

PotentialComponents potential_difference(const PotentialSpec& A, double X, double theta, double kappa,
                                         const PhysicalConstants& k) {
  if (!(kappa > 0.0)) throw std::invalid_argument("potential_difference: kappa must be positive; use kvnd_difference");
  auto d = A.symmetric_difference(X, 0.5 * k.hbar * kappa * theta);
  for (auto& v : d) v /= kappa;
  return d;
}

PotentialComponents kvnd_difference(const PotentialSpec& A, double X, double theta, const PhysicalConstants& k) {
  auto d = A.derivative_x1(X);
  for (auto& v : d) v *= k.hbar * theta;
  return d;
}

Matrix4C potential_matrix(const PotentialComponents& D, const PhysicalConstants& k, GammaRep rep) {
  Matrix4C V = (-k.e * k.c * D[0]) * Matrix4C::Identity();
  for (int j = 1; j < 4; ++j)
    if (D[static_cast<std::size_t>(j)] != 0.0) V += (-k.e * k.c * D[static_cast<std::size_t>(j)]) * alpha(rep, j);
  return V;
}

Matrix4C kinetic_matrix(double k1, double k0, const PhysicalConstants& k, GammaRep rep) {
  return (k.c * k.hbar * k1) * alpha(rep, 1) + (k.m * k.c * k.c) * gamma(rep, 0) -
         (k.c * k.hbar * k0) * Matrix4C::Identity();
}

SpinorField wigner_hamiltonian_apply(const SpinorField& psi, const PotentialSpec& A, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("wigner_hamiltonian_apply: kappa must be positive");
  const auto k = psi.constants();
  return apply_hamiltonian(psi, [&](double X, double th) { return potential_difference(A, X, th, kappa, k); });
}

SpinorField kvnd_apply(const SpinorField& psi, const PotentialSpec& A) {
  const auto k = psi.constants();
  return apply_hamiltonian(psi, [&](double X, double th) { return kvnd_difference(A, X, th, k); });
}

struct WignerPropagator::Impl {
  XThetaGrid grid;
  std::vector<Matrix4C> half_potential;  // per node, empty when A = 0
  std::vector<Matrix4C> kinetic;         // per X mode
  FftPlan fwd, bwd;

  Impl(const XThetaGrid& g)
      : grid(g), fwd(g.nx, 4, 4, 1, FftDirection::Forward), bwd(g.nx, 4, 4, 1, FftDirection::Backward) {}

  void apply_potential(SpinorField& psi) const {
    if (half_potential.empty()) return;
    auto& d = psi.data();
    parallel_for(grid.nx, [&](int b, int e) {
      for (int i = b; i < e; ++i)
        for (int j = 0; j < grid.ntheta; ++j) {
          const std::size_t n = static_cast<std::size_t>(i) * grid.ntheta + j;
          Complex* p = &d[n * 4];
          store(p, half_potential[n] * load(p));
        }
    });
  }

  void apply_kinetic(SpinorField& psi) const {
    auto& d = psi.data();
    const double inv = 1.0 / grid.nx;
    parallel_for(grid.ntheta, [&](int b, int e) {
      Buffer buf(static_cast<std::size_t>(grid.nx) * 4);
      for (int j = b; j < e; ++j) {
        for (int i = 0; i < grid.nx; ++i)
          for (int c = 0; c < 4; ++c) buf[static_cast<std::size_t>(i) * 4 + c] = d[psi.index(i, j) + c];
        fwd.execute(buf.data());
        for (int i = 0; i < grid.nx; ++i) {
          Complex* p = &buf[static_cast<std::size_t>(i) * 4];
          store(p, kinetic[static_cast<std::size_t>(i)] * load(p));
        }
        bwd.execute(buf.data());
        for (int i = 0; i < grid.nx; ++i)
          for (int c = 0; c < 4; ++c) d[psi.index(i, j) + c] = buf[static_cast<std::size_t>(i) * 4 + c] * inv;
      }
    });
  }
};

WignerPropagator::WignerPropagator(const XThetaGrid& grid, const PotentialSpec& A, const PropagationMode& mode,
                                   const PhysicalConstants& k, GammaRep rep, double dx0)
    : dx0_(dx0) {
  grid.validate();
  k.validate();
  mode.validate();
  if (!std::isfinite(dx0)) throw std::invalid_argument("WignerPropagator: dX0 must be finite");
  impl_ = std::make_unique<Impl>(grid);
  const double tau = dx0 / (k.hbar * k.c);
  if (!A.is_zero()) {
    impl_->half_potential.resize(grid.nodes());
    parallel_for(grid.nx, [&](int b, int e) {
      for (int i = b; i < e; ++i)
        for (int j = 0; j < grid.ntheta; ++j) {
          const double X = grid.x(i), th = grid.theta(j);
          const auto D = mode.kvnd ? kvnd_difference(A, X, th, k) : potential_difference(A, X, th, mode.kappa, k);
          impl_->half_potential[static_cast<std::size_t>(i) * grid.ntheta + j] =
              exp_hermitian(potential_matrix(D, k, rep), 0.5 * tau);
        }
    });
  }
  const auto kx = fft_wavenumbers(grid.nx, grid.lx);
  impl_->kinetic.resize(static_cast<std::size_t>(grid.nx));
  for (int i = 0; i < grid.nx; ++i)
    impl_->kinetic[static_cast<std::size_t>(i)] =
        exp_hermitian(kinetic_matrix(kx[static_cast<std::size_t>(i)], grid.k0, k, rep), tau);
}

WignerPropagator::~WignerPropagator() = default;

void WignerPropagator::step(SpinorField& psi) {
  if (!(psi.grid() == impl_->grid)) throw std::invalid_argument("WignerPropagator::step: grid mismatch");
  const double before = psi.norm();
  impl_->apply_potential(psi);
  impl_->apply_kinetic(psi);
  impl_->apply_potential(psi);
  psi.x0 += dx0_;
  if (!psi.all_finite()) throw NumericalAbort("wigner step: non-finite values at X0 = " + std::to_string(psi.x0));
  const double after = psi.norm();
  const double drift = before > 0.0 ? std::abs(after - before) / before : std::abs(after);
  if (drift > norm_tolerance)
    throw NumericalAbort("wigner step: relative norm drift " + std::to_string(drift) + " at X0 = " +
                         std::to_string(psi.x0) + " exceeds " + std::to_string(norm_tolerance));
  if (!leak_warned_ && after > 0.0) {
    const auto& g = impl_->grid;
    double edge = 0.0;
    for (int i : {0, g.nx - 1})
      for (int j = 0; j < g.ntheta; ++j) edge += psi.at(i, j).squaredNorm();
    edge *= g.dx() * g.dtheta();
    if (edge > leak_tolerance * after) {
      warnings_.push_back("boundary leak: X-boundary density fraction " + std::to_string(edge / after) +
                          " at X0 = " + std::to_string(psi.x0));
      leak_warned_ = true;
    }
  }
}

PropagationResult propagate(const SpinorField& psi0, const PotentialSpec& A, const PropagationMode& mode, double dx0,
                            int n, int stride, const std::function<void(int, const SpinorField&)>& observer) {
  if (n < 0) throw std::invalid_argument("propagate: step count must be non-negative");
  PropagationResult r;
  r.final = psi0;
  r.final.kappa = mode.kvnd ? 0.0 : mode.kappa;
  r.stored.push_back(r.final);
  if (observer) observer(0, r.final);
  if (n == 0) return r;
  WignerPropagator prop(psi0.grid(), A, mode, psi0.constants(), psi0.rep(), dx0);
  for (int s = 1; s <= n; ++s) {
    prop.step(r.final);
    if (stride > 0 && s % stride == 0) r.stored.push_back(r.final);
    if (observer) observer(s, r.final);
  }
  r.warnings = prop.warnings();
  return r;
}

ClassicalLimitReport classical_limit_deviation(const SpinorField& psi0, const PotentialSpec& A,
                                               const std::vector<double>& kappas, double dx0, int n) {
  ClassicalLimitReport rep;
  const SpinorField ref = propagate(psi0, A, PropagationMode::koopman(), dx0, n).final;
  for (double kap : kappas) {
    const SpinorField q = propagate(psi0, A, PropagationMode::quantum(kap), dx0, n).final;
    rep.points.push_back({kap, l2_distance(q, ref)});
  }
  for (std::size_t i = 1; i < rep.points.size(); ++i)
    if (!(rep.points[i].kappa < rep.points[i - 1].kappa && rep.points[i].deviation < rep.points[i - 1].deviation))
      rep.monotone = false;
  if (rep.monotone && rep.points.size() >= 2 && rep.points.back().deviation > 0.0) {
    std::vector<double> x, y;
    for (const auto& p : rep.points) {
      x.push_back(p.kappa);
      y.push_back(p.deviation);
    }
    rep.slope = fit_loglog(x, y).slope;
  }
  return rep;
}

std::vector<double> strang_errors(const SpinorField& psi0, const PotentialSpec& A, const PropagationMode& mode,
                                  double total, const std::vector<double>& dts) {
  if (dts.empty()) throw std::invalid_argument("strang_errors: no step sizes");
  const auto steps_for = [&](double dt) {
    const double r = total / dt;
    const int n = static_cast<int>(std::lround(r));
    if (n < 1 || std::abs(r - n) > 1e-9 * r) throw std::invalid_argument("strang_errors: step does not divide total time");
    return n;
  };
  const double dt_ref = *std::min_element(dts.begin(), dts.end()) / 4.0;
  const SpinorField ref = propagate(psi0, A, mode, dt_ref, steps_for(dt_ref)).final;
  std::vector<double> err;
  for (double dt : dts) err.push_back(l2_distance(propagate(psi0, A, mode, dt, steps_for(dt)).final, ref));
  return err;
}

CurrentGrid::CurrentGrid(int nx, int ncols, bool momentum_space)
    : nx_(nx),
      ncols_(ncols),
      momentum_(momentum_space),
      comps_(static_cast<std::size_t>(nx) * ncols * 4),
      mats_(static_cast<std::size_t>(nx) * ncols, Matrix4C::Zero()) {}

CurrentGrid current_xtheta(const SpinorField& psi) {
  const auto& g = psi.grid();
  CurrentGrid J(g.nx, g.ntheta, false);
  const Matrix4C& g0 = gamma(psi.rep(), 0);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ntheta; ++j) {
      const Spinor v = psi.at(i, j);
      J.matrix(i, j) = v * v.adjoint() * g0;
      for (int mu = 0; mu < 4; ++mu) J.component(i, j, mu) = (v.adjoint() * g0 * gamma(psi.rep(), mu) * v)(0, 0);
    }
  return J;
}

double momentum_of_column(const XThetaGrid& g, int j) {
  return (j - g.ntheta / 2) * 2.0 * std::numbers::pi / g.ltheta;
}

CurrentGrid current_xp(const SpinorField& psi) {
  const auto& g = psi.grid();
  const CurrentGrid Jt = current_xtheta(psi);
  CurrentGrid Jp(g.nx, g.ntheta, true);
  const int N = g.ntheta;
  const double dth = g.dtheta();
  // 16 matrix entries plus 4 components per Theta sample, transformed together.
  const FftPlan plan(N, 20, 20, 1, FftDirection::Forward);
  Buffer buf(static_cast<std::size_t>(N) * 20);
  for (int i = 0; i < g.nx; ++i) {
    for (int l = 0; l < N; ++l) {
      const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
      Complex* row = &buf[static_cast<std::size_t>(l) * 20];
      const Matrix4C& M = Jt.matrix(i, l);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) row[r * 4 + c] = sgn * M(r, c);
      for (int mu = 0; mu < 4; ++mu) row[16 + mu] = sgn * Jt.component(i, l, mu);
    }
    plan.execute(buf.data());
    for (int j = 0; j < N; ++j) {
      // (-1)^(j + N/2) from centring both grids.
      const double sgn = ((j + N / 2) % 2 == 0) ? dth : -dth;
      const Complex* row = &buf[static_cast<std::size_t>(j) * 20];
      Matrix4C& M = Jp.matrix(i, j);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) M(r, c) = sgn * row[r * 4 + c];
      for (int mu = 0; mu < 4; ++mu) Jp.component(i, j, mu) = sgn * row[16 + mu];
    }
  }
  return Jp;
}

std::vector<std::string> validate_regime(double width, double potential_gradient, const PhysicalConstants& k) {
  std::vector<std::string> w;
  const double compton = k.compton_length();
  if (width < compton)
    w.push_back("localization: packet width " + std::to_string(width) + " is below the Compton wavelength " +
                std::to_string(compton));
  const double limit = 2.0 * k.rest_energy() / compton;
  if (std::abs(potential_gradient) >= limit)
    w.push_back("pair-creation: potential gradient " + std::to_string(potential_gradient) +
                " reaches the threshold 2mc^2/(hbar/mc) = " + std::to_string(limit));
  return w;
}

Observables observables(const SpinorField& psi) {
  const auto& g = psi.grid();
  Observables o{};
  o.x0 = psi.x0;
  double total = 0.0, sx = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    double row = 0.0;
    for (int j = 0; j < g.ntheta; ++j) row += psi.at(i, j).squaredNorm();
    total += row;
    sx += g.x(i) * row;
  }
  o.norm = total * g.dx() * g.dtheta();
  o.mean_x = total > 0.0 ? sx / total : 0.0;

  const auto kt = fft_wavenumbers(g.ntheta, g.ltheta);
  const FftPlan plan(g.ntheta, 4, 4, 1, FftDirection::Forward);
  Buffer buf(static_cast<std::size_t>(g.ntheta) * 4);
  double sp = 0.0, sw = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    std::copy_n(&psi.data()[psi.index(i, 0)], buf.size(), buf.begin());
    plan.execute(buf.data());
    for (int j = 0; j < g.ntheta; ++j)
      for (int c = 0; c < 4; ++c) {
        const double w = std::norm(buf[static_cast<std::size_t>(j) * 4 + c]);
        sp += kt[static_cast<std::size_t>(j)] * w;
        sw += w;
      }
  }
  o.mean_p = sw > 0.0 ? sp / sw : 0.0;

  const int j0 = g.theta_zero_index();
  double jsum = 0.0;
  for (int i = 0; i < g.nx; ++i) jsum += psi.at(i, j0).squaredNorm();
  o.j0_integral = jsum * g.dx();
  return o;
}

double mean_alpha1(const SpinorField& psi) {
  const auto& g = psi.grid();
  const Matrix4C a1 = alpha(psi.rep(), 1);
  double s = 0.0, n = 0.0;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ntheta; ++j) {
      const Spinor v = psi.at(i, j);
      s += (v.adjoint() * a1 * v)(0, 0).real();
      n += v.squaredNorm();
    }
  return n > 0.0 ? s / n : 0.0;
}

void write_observables_header(std::ostream& os) { os << "X0,norm,meanX,meanP,J0_integral\n"; }

void write_observables_row(std::ostream& os, const Observables& o) {
  os << format_double(o.x0) << ',' << format_double(o.norm) << ',' << format_double(o.mean_x) << ','
     << format_double(o.mean_p) << ',' << format_double(o.j0_integral) << '\n';
}

std::vector<double> ehrenfest_check(const std::vector<SpinorField>& states, double dx0) {
  if (states.size() < 3) throw std::invalid_argument("ehrenfest_check: need at least 3 states");
  std::vector<double> mx;
  for (const auto& s : states) mx.push_back(observables(s).mean_x);
  std::vector<double> r;
  for (std::size_t n = 1; n + 1 < states.size(); ++n)
    r.push_back(std::abs((mx[n + 1] - mx[n - 1]) / (2.0 * dx0) - mean_alpha1(states[n])));
  return r;
}

double continuity_residual(const SpinorField& prev, const SpinorField& cur, const SpinorField& next, double dx0) {
  const auto& g = cur.grid();
  const int j0 = g.theta_zero_index();
  const Matrix4C a1 = alpha(cur.rep(), 1);
  std::vector<double> j1(static_cast<std::size_t>(g.nx));
  for (int i = 0; i < g.nx; ++i) {
    const Spinor v = cur.at(i, j0);
    j1[static_cast<std::size_t>(i)] = (v.adjoint() * a1 * v)(0, 0).real();
  }
  double s = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const double dt = (next.at(i, j0).squaredNorm() - prev.at(i, j0).squaredNorm()) / (2.0 * dx0);
    const int ip = (i + 1) % g.nx, im = (i + g.nx - 1) % g.nx;
    const double dxj = (j1[static_cast<std::size_t>(ip)] - j1[static_cast<std::size_t>(im)]) / (2.0 * g.dx());
    s += (dt + dxj) * (dt + dxj);
  }
  return std::sqrt(s / g.nx);
}

SpinorField gaussian_packet(const XThetaGrid& grid, const PhysicalConstants& k, GammaRep rep, double xc, double sx,
                            double p, double theta_sigma) {
  if (!(sx > 0.0)) throw std::invalid_argument("gaussian_packet: width must be positive");
  SpinorField psi(grid, k, rep);
  const Spinor w = free_amplitude(Branch::PlusUp, on_shell_momentum(Branch::PlusUp, p, 0.0, 0.0, k), k, rep);
  for (int i = 0; i < grid.nx; ++i) {
    const double X = grid.x(i);
    const Complex fx = std::exp(Complex(-(X - xc) * (X - xc) / (4.0 * sx * sx), p * X / k.hbar));
    for (int j = 0; j < grid.ntheta; ++j) {
      const double th = grid.theta(j);
      const double ft = theta_sigma > 0.0 ? std::exp(-th * th / (4.0 * theta_sigma * theta_sigma)) : 1.0;
      psi.set(i, j, (fx * ft) * w);
    }
  }
  psi.scale(1.0 / std::sqrt(psi.norm()));
  return psi;
}

PlaneWaveSuperposition PlaneWaveSuperposition::gaussian(const XThetaGrid& grid, const PhysicalConstants& k,
                                                        double xc, double p, double sp, int nmax) {
  PlaneWaveSuperposition s;
  double norm = 0.0;
  for (int n = -nmax; n <= nmax; ++n) {
    const double kn = 2.0 * std::numbers::pi * n / grid.lx;
    const double dp = k.hbar * kn - p;
    const Complex c = std::exp(Complex(-dp * dp / (4.0 * sp * sp), -kn * xc));
    const Spinor w = free_amplitude(s.branch, on_shell_momentum(s.branch, k.hbar * kn, 0.0, 0.0, k), k);
    s.modes.push_back(n);
    s.coefficients.push_back(c);
    norm += std::norm(c) * w.squaredNorm();
  }
  const double scale = 1.0 / std::sqrt(norm * grid.lx * grid.ltheta);
  for (auto& c : s.coefficients) c *= scale;
  return s;
}

SpinorField PlaneWaveSuperposition::evaluate(const XThetaGrid& grid, const PhysicalConstants& k, GammaRep rep,
                                             double x0) const {
  SpinorField psi(grid, k, rep);
  psi.x0 = x0;
  const Complex spectator = std::exp(Complex(0.0, grid.k0 * x0));
  std::vector<FourVector> momenta;
  for (int n : modes)
    momenta.push_back(on_shell_momentum(branch, k.hbar * 2.0 * std::numbers::pi * n / grid.lx, 0.0, 0.0, k));
  for (int i = 0; i < grid.nx; ++i) {
    const FourVector x = FourVector::upper(x0, grid.x(i), 0.0, 0.0);
    Spinor v = Spinor::Zero();
    for (std::size_t m = 0; m < modes.size(); ++m)
      v += coefficients[m] * free_spinor(branch, momenta[m], x, k, rep);
    v *= spectator;
    for (int j = 0; j < grid.ntheta; ++j) psi.set(i, j, v);
  }
  return psi;
}

}  // namespace relwig
