#pragma once

#include <complex>

namespace resonance {

/// Principal-branch exponential integral E1(z) = int_z^inf e^{-u}/u du,
/// branch cut on the negative real axis. Throws ValidationError at z = 0.
std::complex<double> expint_e1(std::complex<double> z);

/// e^{z} E1(z), evaluated without forming the two factors separately when
/// |z| is large. Preferred whenever Re z is large in magnitude.
std::complex<double> expint_e1_scaled(std::complex<double> z);

}  // namespace resonance
