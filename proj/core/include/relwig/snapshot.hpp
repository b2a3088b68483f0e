#pragma once

// WIGGRID1 binary snapshots.
//
//   8 bytes   "WIGGRID1"
//   u32 x3    n1, n2, components        (little-endian)
//   f64 x5    d1, d2, kappa, k0, x0     (little-endian IEEE-754)
//   f64 pairs (re, im) for n1 * n2 * components values,
//             n1-major, n2-minor, component-innermost
//
// Spinor fields use components = 4 over (X, Theta); phase-space fields use
// components = 1 over (X, P).

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "relwig/wigner_field.hpp"

namespace relwig {

struct SnapshotHeader {
  std::uint32_t n1 = 0, n2 = 0, components = 0;
  double d1 = 0.0, d2 = 0.0, kappa = 0.0, k0 = 0.0, x0 = 0.0;
  bool operator==(const SnapshotHeader&) const = default;
};

struct Snapshot {
  SnapshotHeader header;
  std::vector<std::complex<double>> values;
};

void write_snapshot(std::ostream& os, const SnapshotHeader& h, const std::vector<std::complex<double>>& values);
/// Throws std::runtime_error on bad magic, truncation or size mismatch.
Snapshot read_snapshot(std::istream& is);

void write_snapshot(std::ostream& os, const SpinorField& psi);
void write_snapshot_file(const std::string& path, const SpinorField& psi);
Snapshot read_snapshot_file(const std::string& path);

}  // namespace relwig
