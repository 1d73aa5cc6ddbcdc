#pragma once

// Finite-dimensional Jordan-Gamow sector of an order-N S-matrix pole.
//
// Basis index k = 0..N-1 is the degree-(k+1) Jordan-Gamow ket. The Hamiltonian
// acts as H e_k = z e_k + Gamma e_{k-1}, so the stored matrix has z on the
// diagonal and Gamma on the superdiagonal (column k, row k-1). A StateOperator
// entry M(k, l) is the coefficient of the dyad |k><l|.
//
// Time evolution is a semigroup: t < 0 is rejected unless the caller opts in
// with TimeDomain::AllowNegative.

#include <Eigen/Dense>

#include "resonance/pole_param.hpp"

namespace resonance {

class JordanBlock {
 public:
  /// Throws ValidationError unless Im(z) < 0 and order >= 1.
  JordanBlock(Complex z, int order);

  Complex z() const noexcept { return z_; }
  int order() const noexcept { return order_; }
  /// Gamma = -2 Im(z) > 0.
  double width() const noexcept { return -2.0 * z_.imag(); }

 private:
  Complex z_;
  int order_;
};

enum class TimeDomain { SemigroupOnly, AllowNegative };

struct KetCoefficients {
  Eigen::VectorXcd coeffs;
};

struct StateOperator {
  JordanBlock block;
  Eigen::MatrixXcd matrix;
};

Eigen::MatrixXcd hamiltonian_matrix(const JordanBlock& block);

/// Coefficients of exp(-iHt)|k>: e^{-izt} sum_nu (Gamma^nu/nu!) (-it)^nu at index k - nu.
KetCoefficients evolve_ket(const JordanBlock& block, int k, double t,
                           TimeDomain domain = TimeDomain::SemigroupOnly);

/// exp(-iHt) assembled from the closed-form ket evolution (column k = evolve_ket(k)).
Eigen::MatrixXcd analytic_evolution(const JordanBlock& block, double t,
                                    TimeDomain domain = TimeDomain::SemigroupOnly);

/// exp(-iHt) by Pade scaling-and-squaring; independent of the closed form.
Eigen::MatrixXcd numeric_evolution(const JordanBlock& block, double t);

/// W^(n) = sum_{k=0}^{n} |k><n-k|.
StateOperator w_n(const JordanBlock& block, int n);

/// W_PT = 2 pi Gamma sum_{n=0}^{N-1} C(N, n+1) (-i)^n W^(n).
StateOperator w_pt(const JordanBlock& block);

/// W(t) = exp(-iHt) W exp(iHt): kets evolve with z, bras with z* and +it.
StateOperator evolve_operator(const StateOperator& w, double t,
                              TimeDomain domain = TimeDomain::SemigroupOnly);

/// Tr(Lambda W(t)). Complex in general since W_PT is not Hermitian in this
/// basis; for W^(n) and W_PT it equals e^{-Gamma t} Tr(Lambda W).
/// Throws ValidationError on dimension mismatch or non-Hermitian Lambda.
Complex detection_probability(const Eigen::MatrixXcd& observable, const StateOperator& w,
                              double t);

/// max |E(t1) E(t2) - E(t1 + t2)| over the closed-form evolution matrices.
double semigroup_check(const JordanBlock& block, double t1, double t2);

/// Gamow survival factor e^{-Gamma t} for t < 0: grows without bound, which is
/// why the default evolution domain is t >= 0. Requires AllowNegative.
double catastrophe_demo(const JordanBlock& block, double t, TimeDomain domain);

}  // namespace resonance
