#include "resonance/least_squares.hpp"

#include <cmath>
#include <limits>

#include "resonance/errors.hpp"

namespace resonance {

std::string_view label(FitStatus status) {
  switch (status) {
    case FitStatus::Converged:
      return "converged";
    case FitStatus::MaxIterations:
      return "max_iterations";
    case FitStatus::SingularNormalMatrix:
      return "singular_normal_matrix";
  }
  return "unknown";
}

namespace {

double step_size(double value, double relative) {
  return relative * (value != 0.0 ? std::abs(value) : 1.0);
}

// Inverse of a symmetric positive semi-definite normal matrix, computed on the
// unit-diagonal rescaling so parameters of very different magnitude do not
// masquerade as rank deficiency. Returns false if numerically singular.
bool invert_normal_matrix(const Eigen::MatrixXd& normal, Eigen::MatrixXd& inverse) {
  const Eigen::Index n = normal.rows();
  Eigen::VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(normal(i, i) > 0.0) || !std::isfinite(normal(i, i))) return false;
    scale(i) = 1.0 / std::sqrt(normal(i, i));
  }
  const Eigen::MatrixXd scaled = scale.asDiagonal() * normal * scale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled);
  if (eig.info() != Eigen::Success) return false;
  const double max_ev = eig.eigenvalues().maxCoeff();
  const double min_ev = eig.eigenvalues().minCoeff();
  if (!(max_ev > 0.0) || min_ev <= 1e-14 * max_ev) return false;
  const Eigen::MatrixXd scaled_inv = eig.eigenvectors() *
                                     eig.eigenvalues().cwiseInverse().asDiagonal() *
                                     eig.eigenvectors().transpose();
  inverse = scale.asDiagonal() * scaled_inv * scale.asDiagonal();
  inverse = 0.5 * (inverse + inverse.transpose());
  return true;
}

}  // namespace

Eigen::MatrixXd numeric_jacobian(const ResidualFunction& residuals, const Eigen::VectorXd& p,
                                 Eigen::Index num_residuals, double relative_step) {
  const Eigen::Index n = p.size();
  Eigen::MatrixXd jac(num_residuals, n);
  Eigen::VectorXd plus(num_residuals);
  Eigen::VectorXd minus(num_residuals);
  Eigen::VectorXd center(num_residuals);
  Eigen::VectorXd q = p;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double h = step_size(p(j), relative_step);
    q(j) = p(j) + h;
    const bool ok_plus = residuals(q, plus);
    q(j) = p(j) - h;
    const bool ok_minus = residuals(q, minus);
    q(j) = p(j);
    if (ok_plus && ok_minus) {
      jac.col(j) = (plus - minus) / (2.0 * h);
    } else if (ok_plus || ok_minus) {
      // one-sided fallback at a domain edge
      if (!residuals(p, center)) throw NumericalError("Jacobian evaluated outside model domain");
      jac.col(j) = ok_plus ? (plus - center) / h : (center - minus) / h;
    } else {
      throw NumericalError("Jacobian evaluated outside model domain");
    }
  }
  return jac;
}

LeastSquaresResult levenberg_marquardt(const ResidualFunction& residuals,
                                       Eigen::Index num_residuals,
                                       const Eigen::VectorXd& initial,
                                       const LeastSquaresOptions& options) {
  const Eigen::Index n = initial.size();
  Eigen::VectorXd r(num_residuals);
  if (!residuals(initial, r)) {
    throw ValidationError("initial parameters are outside the model domain");
  }

  LeastSquaresResult result;
  result.params = initial;
  result.chi2 = r.squaredNorm();
  result.status = FitStatus::MaxIterations;

  double damping = options.damping_init;
  Eigen::VectorXd trial_r(num_residuals);
  bool converged = false;

  for (int iter = 1; iter <= options.max_iter && !converged; ++iter) {
    result.iterations = iter;
    if (result.chi2 == 0.0) {
      converged = true;
      break;
    }
    // r = (y - f)/err, so d r / d p = -J_f/err; the Gauss-Newton step solves
    // (J^T J) delta = -J_r^T r.
    const Eigen::MatrixXd jac =
        numeric_jacobian(residuals, result.params, num_residuals, options.fd_relative_step);
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd gradient = -(jac.transpose() * r);

    while (true) {
      Eigen::MatrixXd damped = normal;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d = normal(i, i) > 0.0 ? normal(i, i) : 1.0;
        damped(i, i) += damping * d;
      }
      const Eigen::VectorXd delta = damped.ldlt().solve(gradient);
      const double rel_step = delta.norm() / (result.params.norm() + options.step_tol);
      if (!delta.allFinite()) {
        damping *= options.damping_up;
        if (damping > 1e30) break;
        continue;
      }
      const Eigen::VectorXd trial = result.params + delta;
      const bool valid = residuals(trial, trial_r);
      const double trial_chi2 = valid ? trial_r.squaredNorm() : std::numeric_limits<double>::infinity();
      if (valid && trial_chi2 <= result.chi2) {
        const double decrease = (result.chi2 - trial_chi2) / result.chi2;
        result.params = trial;
        result.chi2 = trial_chi2;
        r = trial_r;
        damping /= options.damping_down;
        if (decrease < options.chi2_rel_tol || rel_step < options.step_tol) converged = true;
        break;
      }
      // Rejected: no descent is possible once the damped step has collapsed.
      if (rel_step < options.step_tol) {
        converged = true;
        break;
      }
      damping *= options.damping_up;
    }
  }

  const Eigen::MatrixXd jac =
      numeric_jacobian(residuals, result.params, num_residuals, options.fd_relative_step);
  Eigen::MatrixXd covariance;
  if (!invert_normal_matrix(jac.transpose() * jac, covariance)) {
    result.status = FitStatus::SingularNormalMatrix;
    return result;
  }
  result.covariance = std::move(covariance);
  result.status = converged ? FitStatus::Converged : FitStatus::MaxIterations;
  return result;
}

}  // namespace resonance
