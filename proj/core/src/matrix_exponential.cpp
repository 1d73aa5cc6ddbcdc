#include "resonance/matrix_exponential.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "resonance/errors.hpp"

namespace resonance {

namespace {

// Pade(13,13) coefficients and the 1-norm bound below which no scaling is
// needed for double precision.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

double one_norm(const Eigen::MatrixXcd& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw NumericalError("matrix exponential needs a square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  if (!a.allFinite()) throw NumericalError("matrix exponential of a non-finite matrix");

  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > kTheta13) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
  }
  const Eigen::MatrixXcd scaled = a / std::ldexp(1.0, squarings);

  const auto& b = kPade13;
  const Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd a2 = scaled * scaled;
  const Eigen::MatrixXcd a4 = a2 * a2;
  const Eigen::MatrixXcd a6 = a4 * a2;

  const Eigen::MatrixXcd u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                                   b[5] * a4 + b[3] * a2 + b[1] * ident;
  const Eigen::MatrixXcd u = scaled * u_inner;
  const Eigen::MatrixXcd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                             b[2] * a2 + b[0] * ident;

  Eigen::MatrixXcd result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) result = result * result;

  if (!result.allFinite()) throw NumericalError("matrix exponential overflowed");
  return result;
}

}  // namespace resonance
