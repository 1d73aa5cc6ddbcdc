#pragma once

#include <Eigen/Dense>

namespace resonance {

/// exp(A) for a dense complex matrix: degree-13 Pade approximant with
/// scaling and squaring. Throws NumericalError if the result overflows.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

}  // namespace resonance
