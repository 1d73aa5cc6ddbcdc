#pragma once

// Survival amplitude of a Breit-Wigner energy distribution restricted to the
// semi-bounded spectrum [0, inf):
//
//   A(t) = int_0^inf rho(E) e^{-iEt} dE,
//   rho(E) = norm (Gamma/2pi) / ((E - E_R)^2 + Gamma^2/4).
//
// Deforming the contour onto the negative imaginary axis picks up the pole at
// z_R = E_R - i Gamma/2, which contributes exactly the Gamow term
// norm e^{-i z_R t}; the remainder is a damped integral from E = 0 that carries
// the late-time power-law tail.

#include <span>
#include <vector>

#include "resonance/pole_param.hpp"

namespace resonance {

class TruncatedBWState {
 public:
  /// Throws ValidationError unless energy > 0 and width > 0.
  TruncatedBWState(double energy, double width);

  double energy() const noexcept { return energy_; }
  double width() const noexcept { return width_; }
  /// 1 / (1/2 + atan(2 E_R / Gamma) / pi)
  double norm() const noexcept { return norm_; }
  Complex pole() const noexcept { return {energy_, -0.5 * width_}; }

  /// Normalized density; zero for E < 0.
  double density(double e) const;
  /// Analytic continuation of the density to complex energy.
  Complex density(Complex e) const;

 private:
  double energy_;
  double width_;
  double norm_;
};

enum class SurvivalMethod {
  ContourRotation,     ///< pole residue + quadrature along E = -iy
  ExponentialIntegral, ///< closed form in complex E1
};

/// Throws ValidationError for t < 0. A(0) = 1.
Complex survival_amplitude(const TruncatedBWState& state, double t,
                           SurvivalMethod method = SurvivalMethod::ContourRotation);

/// Part of A(t) not accounted for by the Gamow pole term norm e^{-i z_R t}.
Complex background_amplitude(const TruncatedBWState& state, double t,
                             SurvivalMethod method = SurvivalMethod::ContourRotation);

/// e^{-Gamma t}, t >= 0.
double gamow_reference(double width, double t);

struct DeviationRow {
  double t = 0.0;
  double survival = 0.0;     ///< |A(t)|^2
  double exponential = 0.0;  ///< e^{-Gamma t}
  double ratio = 0.0;        ///< survival / exponential
};

/// Rows for a non-empty, sorted, non-negative time grid (GeV^-1).
std::vector<DeviationRow> deviation_curve(const TruncatedBWState& state,
                                          std::span<const double> t_grid,
                                          SurvivalMethod method = SurvivalMethod::ContourRotation);

}  // namespace resonance
