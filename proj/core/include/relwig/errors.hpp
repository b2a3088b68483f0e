#pragma once

#include <stdexcept>
#include <string>

namespace relwig {

/// A matrix handed to unslash() has a component outside span{gamma_mu}.
class NotAVectorError : public std::domain_error {
 public:
  explicit NotAVectorError(const std::string& what) : std::domain_error(what) {}
};

/// A propagator or integrator left its admissible state (non-finite values,
/// norm drift, constraint drift). Carries a human-readable diagnostic.
class NumericalAbort : public std::runtime_error {
 public:
  explicit NumericalAbort(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace relwig
