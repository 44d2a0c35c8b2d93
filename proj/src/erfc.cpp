#include <cmath>
#include <numbers>

#include "drumcorners/specfun.hpp"

namespace drumcorners {

double erfc(double x) { return std::erfc(x); }

double erfcx(double x) {
  if (x < 0) return 2.0 * std::exp(x * x) - erfcx(-x);
  if (x < 4.0) return std::exp(x * x) * std::erfc(x);
  // Continued fraction 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), evaluated bottom-up.
  double f = x;
  for (int k = 80; k >= 1; --k) f = x + 0.5 * k / f;
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

}  // namespace drumcorners
