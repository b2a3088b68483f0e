#pragma once

// Analytic four-potentials A_mu(X) (lower index) with closed-form derivatives.
//
// Every member of the family depends on the spatial coordinate X^1 only, so
// all of them are static and usable by the XTheta propagator.
//
//   ConstantE(E0)          A_0 = -E0 X^1          -> F_01 = E0
//   ConstantB(B0)          A_2 =  B0 X^1          -> F_12 = B0
//   Sine(a, b, mu)         A_mu = a sin(b X^1)
//   Polynomial(c[mu][n])   A_mu = sum_n c[mu][n] (X^1)^n

#include <array>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "relwig/clifford.hpp"

namespace relwig {

struct ConstantE {
  double strength = 0.0;
  bool operator==(const ConstantE&) const = default;
};

struct ConstantB {
  double strength = 0.0;
  bool operator==(const ConstantB&) const = default;
};

struct SineA {
  double amplitude = 0.0;
  double wavenumber = 1.0;
  int component = 0;
  bool operator==(const SineA&) const = default;
};

struct PolynomialA {
  /// coefficients[mu][n] multiplies (X^1)^n in A_mu.
  std::array<std::vector<double>, 4> coefficients;
  bool operator==(const PolynomialA&) const = default;
};

using PotentialComponents = std::array<double, 4>;

class PotentialSpec {
 public:
  using Variant = std::variant<PolynomialA, ConstantE, ConstantB, SineA>;

  PotentialSpec() = default;  // A = 0
  PotentialSpec(Variant v);   // NOLINT(google-explicit-constructor)

  static PotentialSpec none() { return PotentialSpec(); }
  static PotentialSpec constant_e(double e0) { return PotentialSpec(ConstantE{e0}); }
  static PotentialSpec constant_b(double b0) { return PotentialSpec(ConstantB{b0}); }
  static PotentialSpec sine(double amplitude, double wavenumber, int component);
  /// Single-component polynomial A_mu = sum_n coeffs[n] (X^1)^n.
  static PotentialSpec polynomial(int component, std::vector<double> coeffs);

  const Variant& variant() const { return v_; }
  bool is_zero() const;

  /// A_mu at a spacetime point (only X^1 is read).
  PotentialComponents at(const FourVector& x) const { return at_x1(x.raised()[1]); }
  PotentialComponents at_x1(double x1) const;
  /// dA_mu / dX^1.
  PotentialComponents derivative_x1(double x1) const;
  /// Matrix G with G(nu, mu) = d_nu A_mu = dA_mu / dX^nu.
  Eigen::Matrix4d gradient(const FourVector& x) const;
  /// A_mu(X^1 + h) - A_mu(X^1 - h), evaluated in a form free of
  /// cancellation so that the result stays accurate as h -> 0.
  PotentialComponents symmetric_difference(double x1, double h) const;

  std::string describe() const;

  bool operator==(const PotentialSpec&) const = default;

 private:
  Variant v_{PolynomialA{}};
};

}  // namespace relwig
