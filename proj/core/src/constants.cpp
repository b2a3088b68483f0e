#include "relwig/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace relwig {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0)
    throw std::invalid_argument(std::string(name) + " must be a positive finite number (got " + std::to_string(v) + ")");
}

}  // namespace

void PhysicalConstants::validate() const {
  require_positive(hbar, "hbar");
  require_positive(c, "c");
  require_positive(m, "m");
  if (!std::isfinite(e)) throw std::invalid_argument("e must be finite");
}

}  // namespace relwig
