#include "relwig/spectral.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace relwig {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct FftPlan::Impl {
  fftw_plan plan = nullptr;
};

FftPlan::FftPlan(int n, int howmany, int stride, int dist, FftDirection dir) : impl_(std::make_unique<Impl>()), n_(n) {
  if (n < 1 || howmany < 1 || stride < 1 || dist < 0) throw std::invalid_argument("FftPlan: invalid layout");
  const std::size_t extent = static_cast<std::size_t>((n - 1) * stride + (howmany - 1) * dist + 1);
  std::vector<std::complex<double>> scratch(extent);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  const int sign = dir == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->plan = fftw_plan_many_dft(1, &n, howmany, p, nullptr, stride, dist, p, nullptr, stride, dist, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!impl_->plan) throw std::runtime_error("FftPlan: FFTW failed to create a plan");
}

FftPlan::~FftPlan() {
  if (impl_ && impl_->plan) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(impl_->plan);
  }
}

FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::execute(std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(impl_->plan, reinterpret_cast<fftw_complex*>(in), reinterpret_cast<fftw_complex*>(out));
}

std::vector<double> fft_wavenumbers(int n, double length) {
  std::vector<double> k(static_cast<std::size_t>(n));
  const double dk = 2.0 * std::numbers::pi / length;
  for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(j)] = dk * (j < n / 2 ? j : j - n);
  return k;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x) {
  std::vector<std::complex<double>> y = x;
  if (y.empty()) return y;
  FftPlan(static_cast<int>(y.size()), 1, 1, 0, FftDirection::Forward).execute(y.data());
  return y;
}

std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x) {
  std::vector<std::complex<double>> y = x;
  if (y.empty()) return y;
  FftPlan(static_cast<int>(y.size()), 1, 1, 0, FftDirection::Backward).execute(y.data());
  const double s = 1.0 / static_cast<double>(y.size());
  for (auto& v : y) v *= s;
  return y;
}

}  // namespace relwig
