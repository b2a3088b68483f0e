#pragma once

// Thin RAII layer over FFTW plus wavenumber helpers.
//
// Forward transforms use the kernel exp(-i k x); inverse transforms are not
// normalised by FFTW, so callers divide by n.

#include <complex>
#include <memory>
#include <vector>

namespace relwig {

enum class FftDirection { Forward, Backward };

/// Batched 1D complex transform of length n over `howmany` interleaved series:
/// element t of series b lives at offset t * stride + b * dist.
/// Plans are created with FFTW_ESTIMATE | FFTW_UNALIGNED, so one plan can be
/// executed on any buffer with the same layout from any thread.
class FftPlan {
 public:
  FftPlan(int n, int howmany, int stride, int dist, FftDirection dir);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  /// In-place when in == out.
  void execute(std::complex<double>* in, std::complex<double>* out) const;
  void execute(std::complex<double>* data) const { execute(data, data); }

  int size() const { return n_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_ = 0;
};

/// Angular wavenumbers of an n-point periodic grid of length L in FFT order:
/// 2 pi / L * (0, 1, ..., n/2 - 1, -n/2, ..., -1).
std::vector<double> fft_wavenumbers(int n, double length);

bool is_power_of_two(int n);

/// Unnormalised forward / normalised inverse transforms of a single series.
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x);
std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x);

}  // namespace relwig
