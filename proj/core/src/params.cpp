#include "rtmix/params.hpp"

#include <cmath>

namespace rtmix {

double PhysicalParams::T0() const { return std::sqrt(3.0 * L / gA()); }

void PhysicalParams::validate() const {
  if (!(g > 0.0)) throw std::invalid_argument("g must be positive");
  if (!(A > 0.0 && A <= 1.0)) throw std::invalid_argument("A must lie in (0, 1]");
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
  if (n < 2) throw std::invalid_argument("n must be >= 2");
}

}  // namespace rtmix
