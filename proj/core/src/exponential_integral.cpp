#include "resonance/exponential_integral.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "resonance/errors.hpp"

namespace resonance {

namespace {

using C = std::complex<double>;

constexpr double kSeriesRadius = 2.0;

// E1(z) = -gamma - ln z - sum_{k>=1} (-z)^k / (k k!)
C series(C z) {
  C sum{0.0, 0.0};
  C term{1.0, 0.0};
  for (int k = 1; k < 2000; ++k) {
    term *= -z / static_cast<double>(k);
    const C add = term / static_cast<double>(k);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return -std::numbers::egamma - std::log(z) - sum;
}

// The continued fraction crawls next to the cut, where the series terms
// barely cancel and stay usable out to large |z|.
bool use_series(C z) {
  if (std::abs(z) <= kSeriesRadius) return true;
  return z.real() < 0.0 && std::abs(z.imag()) < 4.0 && std::abs(z) < 600.0;
}

// e^z E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...))), modified Lentz.
C continued_fraction(C z) {
  constexpr double tiny = 1e-300;
  C b = z + 1.0;
  C c = 1.0 / tiny;
  C d = 1.0 / b;
  C h = d;
  for (int i = 1; i < 20000; ++i) {
    const double a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    const C delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return h;
  }
  throw NumericalError("E1 continued fraction did not converge");
}

}  // namespace

std::complex<double> expint_e1(std::complex<double> z) {
  if (z == C{0.0, 0.0}) throw ValidationError("E1 is singular at z = 0");
  if (use_series(z)) return series(z);
  return std::exp(-z) * continued_fraction(z);
}

std::complex<double> expint_e1_scaled(std::complex<double> z) {
  if (z == C{0.0, 0.0}) throw ValidationError("E1 is singular at z = 0");
  if (use_series(z)) return std::exp(z) * series(z);
  return continued_fraction(z);
}

}  // namespace resonance
