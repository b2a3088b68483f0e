#include <benchmark/benchmark.h>

#include <random>

#include "relwig/clifford.hpp"
#include "relwig/dynamics.hpp"
#include "relwig/operator_lab.hpp"
#include "relwig/scalar.hpp"
#include "relwig/wigner_field.hpp"

using namespace relwig;

namespace {

void BM_ExpHermitian(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  Matrix4C a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = Complex(n(rng), n(rng));
  const Matrix4C h = (a + a.adjoint()) * 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(exp_hermitian(h, 0.01));
}
BENCHMARK(BM_ExpHermitian);

void BM_RotorTrajectory(benchmark::State& state) {
  const PhysicalConstants k{};
  const auto A = PotentialSpec::constant_b(1.0);
  RotorState r0;
  r0.L = boost_from_velocity(FourVector::upper(std::sqrt(1.25), 0.5, 0.0, 0.0), k);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_rotor(r0, A, k, 1e-3, 1000));
}
BENCHMARK(BM_RotorTrajectory)->Unit(benchmark::kMillisecond);

/// One Strang step on an N x N/2 (X, Theta) grid.
void BM_WignerStrangStep(benchmark::State& state) {
  const PhysicalConstants k{};
  XThetaGrid g;
  g.nx = static_cast<int>(state.range(0));
  g.ntheta = g.nx / 2;
  const auto A = PotentialSpec::sine(0.5, 0.3, 0);
  auto psi = gaussian_packet(g, k, GammaRep::Dirac, 0.0, 2.0, 0.5, 1.0);
  WignerPropagator prop(g, A, PropagationMode::quantum(1.0), k, GammaRep::Dirac, 0.01);
  for (auto _ : state) prop.step(psi);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.nodes()));
}
BENCHMARK(BM_WignerStrangStep)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_KvnStep(benchmark::State& state) {
  const PhysicalConstants k{};
  const int n = static_cast<int>(state.range(0));
  const ScalarHamiltonian H{ScalarPotential::harmonic(1.0, 1.0), k, KineticForm::Salpeter};
  auto psi = gaussian_phase_space(n, -6.0, 12.0, n, -6.0, 12.0, 1.0, 0.0, 0.6, 0.6);
  KvnPropagator prop(H, psi, 0.005);
  for (auto _ : state) prop.step(psi);
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_KvnStep)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_SalpeterStep(benchmark::State& state) {
  const PhysicalConstants k{};
  const int n = static_cast<int>(state.range(0));
  const ScalarHamiltonian H{ScalarPotential::none(), k, KineticForm::Salpeter};
  auto psi = gaussian_wavefunction(n, -40.0, 80.0, 0.0, 2.0, 1.0, 1.0);
  SalpeterPropagator prop(H, n, -40.0, 80.0, 0.01);
  for (auto _ : state) prop.step(psi);
}
BENCHMARK(BM_SalpeterStep)->Arg(512)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_OperatorReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(operator_report(32, 1.0, 4, {0.0, 0.5, 1.0}));
}
BENCHMARK(BM_OperatorReport)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
