#include "trifuzz/rng.hpp"

#include <cmath>

namespace trifuzz {

double Rng::gauss() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = unit();
  } while (u1 <= 0.0);
  double u2 = unit();
  double mag = std::sqrt(-2.0 * std::log(u1));
  double two_pi = 6.283185307179586476925286766559;
  spare_ = mag * std::sin(two_pi * u2);
  has_spare_ = true;
  return mag * std::cos(two_pi * u2);
}

}  // namespace trifuzz
