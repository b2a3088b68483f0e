#include <doctest.h>

#include <cmath>
#include <sstream>

#include "relwig/convergence.hpp"
#include "relwig/csv.hpp"
#include "relwig/parallel.hpp"
#include "relwig/spectral.hpp"

#include "oracles/oracles.hpp"

using namespace relwig;

TEST_CASE("log-log fit recovers power laws") {
  const std::vector<double> h = {0.4, 0.2, 0.1, 0.05};
  std::vector<double> e;
  for (double v : h) e.push_back(3.0 * v * v * v);
  const auto fit = fit_loglog(h, e);
  CHECK(fit.slope == doctest::Approx(3.0));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)));
  CHECK(fit.r2 == doctest::Approx(1.0));
  CHECK_THROWS(fit_loglog({1.0}, {1.0}));
}

TEST_CASE("convergence classification") {
  const std::vector<double> h = {0.4, 0.2, 0.1, 0.05};
  std::vector<double> alg, spec;
  for (double v : h) {
    alg.push_back(v * v * (1.0 + 0.1 * v));
    spec.push_back(std::exp(-1.0 / v));
  }
  const auto a = analyze_convergence(h, alg);
  CHECK(a.classification == "algebraic");
  REQUIRE(a.fit.has_value());
  CHECK(a.fit->slope == doctest::Approx(2.0).epsilon(0.05));
  CHECK(a.local_slopes.size() == 3);

  CHECK(analyze_convergence(h, spec).classification == "spectral");

  const auto u = analyze_convergence(h, {1e-3, 1e-4, 2e-4, 1e-5});
  CHECK(u.classification == "undefined");
  CHECK_FALSE(u.fit.has_value());
}

TEST_CASE("FFT agrees with a direct DFT") {
  std::vector<std::complex<double>> x;
  for (int i = 0; i < 32; ++i) x.emplace_back(std::sin(0.3 * i), std::cos(1.1 * i * i));
  const auto a = fft(x);
  const auto b = oracle::dft(x);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
  const auto back = ifft(a);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(back[i] - x[i]) < 1e-14);
  const auto k = fft_wavenumbers(8, 4.0);
  CHECK(k[1] == doctest::Approx(std::numbers::pi / 2));
  CHECK(k[4] == doctest::Approx(-2.0 * std::numbers::pi));
  CHECK(is_power_of_two(64));
  CHECK_FALSE(is_power_of_two(48));
}

TEST_CASE("parallel_for covers the range exactly once") {
  std::vector<int> hits(1000, 0);
  parallel_for(1000, [&](int b, int e) {
    for (int i = b; i < e; ++i) ++hits[static_cast<std::size_t>(i)];
  });
  for (int h : hits) CHECK(h == 1);
  CHECK(worker_count() >= 1);
}

TEST_CASE("CSV numbers round-trip") {
  std::ostringstream os;
  CsvWriter w(os, {"a", "b"});
  w.row({0.1, 1.0 / 3.0});
  CHECK(os.str() == "a,b\n0.10000000000000001,0.33333333333333331\n");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK_THROWS(w.row({1.0}));
}
