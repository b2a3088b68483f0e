#pragma once

namespace relwig {

/// hbar, c, m must be strictly positive; the charge e may take either sign.
struct PhysicalConstants {
  double hbar = 1.0;
  double c = 1.0;
  double m = 1.0;
  double e = 1.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  double compton_length() const { return hbar / (m * c); }
  double rest_energy() const { return m * c * c; }

  bool operator==(const PhysicalConstants&) const = default;
};

}  // namespace relwig
