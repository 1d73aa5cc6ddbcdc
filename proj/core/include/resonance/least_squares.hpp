#pragma once

// Damped nonlinear least squares (Levenberg-Marquardt with Marquardt's
// diagonal scaling) over whitened residuals r_i(p) = (y_i - f_i(p)) / err_i.

#include <Eigen/Dense>

#include <functional>
#include <string_view>

namespace resonance {

enum class FitStatus {
  Converged,
  MaxIterations,
  SingularNormalMatrix,
};

std::string_view label(FitStatus status);

struct LeastSquaresOptions {
  int max_iter = 200;
  double damping_init = 1e-3;
  double damping_up = 10.0;
  double damping_down = 10.0;
  /// Central-difference step, relative to |p_j| (or absolute when p_j == 0).
  double fd_relative_step = 1e-6;
  /// Converged when (chi2_old - chi2_new) / chi2_old drops below this.
  double chi2_rel_tol = 1e-10;
  /// Converged when |delta| / (|p| + step_tol) drops below this.
  double step_tol = 1e-12;
};

/// Fills `residuals` (pre-sized) for parameters `p`. Returns false when `p`
/// lies outside the model's domain; the step is then rejected.
using ResidualFunction =
    std::function<bool(const Eigen::VectorXd& p, Eigen::VectorXd& residuals)>;

struct LeastSquaresResult {
  Eigen::VectorXd params;
  double chi2 = 0.0;
  /// Inverse of J^T J at the optimum (undamped); empty when singular.
  Eigen::MatrixXd covariance;
  int iterations = 0;
  FitStatus status = FitStatus::MaxIterations;
};

/// Central-difference Jacobian of the residual vector.
/// Throws NumericalError if a perturbed point leaves the model domain on both sides.
Eigen::MatrixXd numeric_jacobian(const ResidualFunction& residuals, const Eigen::VectorXd& p,
                                 Eigen::Index num_residuals, double relative_step);

/// Throws ValidationError if the initial point is outside the model domain.
LeastSquaresResult levenberg_marquardt(const ResidualFunction& residuals,
                                       Eigen::Index num_residuals,
                                       const Eigen::VectorXd& initial,
                                       const LeastSquaresOptions& options = {});

}  // namespace resonance
