#include "resonance/jordan_evolution.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "resonance/errors.hpp"
#include "resonance/matrix_exponential.hpp"

namespace resonance {

namespace {

void check_time(double t, TimeDomain domain) {
  if (!std::isfinite(t)) throw ValidationError("time must be finite");
  if (t < 0.0 && domain != TimeDomain::AllowNegative) {
    throw ValidationError("semigroup evolution is defined for t >= 0 only");
  }
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

// Polynomial part P with exp(-iHt) = e^{-izt} P; P(k-nu, k) = (-i Gamma t)^nu / nu!.
Eigen::MatrixXcd polynomial_factor(int order, double width, double t) {
  const Complex step{0.0, -width * t};
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(order, order);
  for (int k = 0; k < order; ++k) {
    Complex term{1.0, 0.0};
    for (int nu = 0; nu <= k; ++nu) {
      if (nu > 0) term *= step / static_cast<double>(nu);
      p(k - nu, k) = term;
    }
  }
  return p;
}

}  // namespace

JordanBlock::JordanBlock(Complex z, int order) : z_(z), order_(order) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ValidationError("pole position must be finite");
  }
  if (!(z.imag() < 0.0)) throw ValidationError("Jordan block needs Im(z) < 0");
  if (order < 1) throw ValidationError("Jordan block order must be >= 1");
}

Eigen::MatrixXcd hamiltonian_matrix(const JordanBlock& block) {
  const int n = block.order();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    h(k, k) = block.z();
    if (k > 0) h(k - 1, k) = block.width();
  }
  return h;
}

KetCoefficients evolve_ket(const JordanBlock& block, int k, double t, TimeDomain domain) {
  if (k < 0 || k >= block.order()) {
    throw ValidationError("ket index " + std::to_string(k) + " outside block of order " +
                          std::to_string(block.order()));
  }
  check_time(t, domain);
  const Complex phase = std::exp(Complex{0.0, -1.0} * block.z() * t);
  const Complex step{0.0, -block.width() * t};
  KetCoefficients out{Eigen::VectorXcd::Zero(block.order())};
  Complex term = phase;
  for (int nu = 0; nu <= k; ++nu) {
    if (nu > 0) term *= step / static_cast<double>(nu);
    out.coeffs(k - nu) = term;
  }
  return out;
}

Eigen::MatrixXcd analytic_evolution(const JordanBlock& block, double t, TimeDomain domain) {
  check_time(t, domain);
  const Complex phase = std::exp(Complex{0.0, -1.0} * block.z() * t);
  return phase * polynomial_factor(block.order(), block.width(), t);
}

Eigen::MatrixXcd numeric_evolution(const JordanBlock& block, double t) {
  if (!std::isfinite(t)) throw ValidationError("time must be finite");
  const Eigen::MatrixXcd generator = Complex{0.0, -t} * hamiltonian_matrix(block);
  return matrix_exponential(generator);
}

StateOperator w_n(const JordanBlock& block, int n) {
  if (n < 0 || n >= block.order()) {
    throw ValidationError("W^(n) index " + std::to_string(n) + " outside block of order " +
                          std::to_string(block.order()));
  }
  StateOperator w{block, Eigen::MatrixXcd::Zero(block.order(), block.order())};
  for (int k = 0; k <= n; ++k) w.matrix(k, n - k) = 1.0;
  return w;
}

StateOperator w_pt(const JordanBlock& block) {
  const int order = block.order();
  StateOperator w{block, Eigen::MatrixXcd::Zero(order, order)};
  Complex minus_i_pow{1.0, 0.0};
  for (int n = 0; n < order; ++n) {
    w.matrix += binomial(order, n + 1) * minus_i_pow * w_n(block, n).matrix;
    minus_i_pow *= Complex{0.0, -1.0};
  }
  w.matrix *= 2.0 * std::numbers::pi * block.width();
  return w;
}

StateOperator evolve_operator(const StateOperator& w, double t, TimeDomain domain) {
  const int order = w.block.order();
  if (w.matrix.rows() != order || w.matrix.cols() != order) {
    throw ValidationError("state operator dimensions do not match its block");
  }
  check_time(t, domain);
  // Ket side: P(t) e^{-izt}. Bra side: the adjoint, whose polynomial runs in
  // +i Gamma t and whose phase is e^{iz* t}; together the phases give e^{-Gamma t}.
  const Eigen::MatrixXcd p = polynomial_factor(order, w.block.width(), t);
  const double decay = std::exp(-w.block.width() * t);
  return {w.block, decay * (p * w.matrix * p.adjoint())};
}

Complex detection_probability(const Eigen::MatrixXcd& observable, const StateOperator& w,
                              double t) {
  const int order = w.block.order();
  if (observable.rows() != order || observable.cols() != order) {
    throw ValidationError("observable dimension does not match the state operator");
  }
  const double scale = std::max(1.0, observable.cwiseAbs().maxCoeff());
  if ((observable - observable.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidationError("observable must be Hermitian");
  }
  return (observable * evolve_operator(w, t).matrix).trace();
}

double semigroup_check(const JordanBlock& block, double t1, double t2) {
  if (t1 < 0.0 || t2 < 0.0) throw ValidationError("semigroup check needs t1, t2 >= 0");
  const Eigen::MatrixXcd lhs = analytic_evolution(block, t1) * analytic_evolution(block, t2);
  const Eigen::MatrixXcd rhs = analytic_evolution(block, t1 + t2);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double catastrophe_demo(const JordanBlock& block, double t, TimeDomain domain) {
  if (domain != TimeDomain::AllowNegative) {
    throw ValidationError("catastrophe demo requires TimeDomain::AllowNegative");
  }
  if (!(t < 0.0)) throw ValidationError("catastrophe demo is about t < 0");
  return std::norm(evolve_ket(block, 0, t, domain).coeffs(0));
}

}  // namespace resonance
