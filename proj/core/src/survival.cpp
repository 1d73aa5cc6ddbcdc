#include "resonance/survival.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <numbers>

#include "resonance/errors.hpp"
#include "resonance/exponential_integral.hpp"

namespace resonance {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_time(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw ValidationError("survival amplitude is defined for t >= 0 only");
  }
}

// -i int_0^inf rho(-iy) e^{-yt} dy
Complex rotated_ray_integral(const TruncatedBWState& state, double t) {
  boost::math::quadrature::exp_sinh<double> integrator;
  const double tol = 1e-14;
  // Scale y by the resonance width so the integrator sees O(1) features.
  const double scale = state.width();
  auto integrand = [&](double u) {
    const double y = u * scale;
    return state.density(Complex{0.0, -y}) * std::exp(-y * t) * scale;
  };
  const double re = integrator.integrate([&](double u) { return integrand(u).real(); }, tol);
  const double im = integrator.integrate([&](double u) { return integrand(u).imag(); }, tol);
  return -kI * Complex{re, im};
}

// norm (i/2pi) [G(-i z t) - G(-i z* t)] with G(w) = e^w E1(w)
Complex exponential_integral_background(const TruncatedBWState& state, double t) {
  const Complex z = state.pole();
  const Complex g_lower = expint_e1_scaled(-kI * z * t);
  const Complex g_upper = expint_e1_scaled(-kI * std::conj(z) * t);
  return state.norm() * kI / (2.0 * std::numbers::pi) * (g_lower - g_upper);
}

}  // namespace

TruncatedBWState::TruncatedBWState(double energy, double width) : energy_(energy), width_(width) {
  if (!std::isfinite(energy) || energy <= 0.0) {
    throw ValidationError("resonance energy must be positive");
  }
  if (!std::isfinite(width) || width <= 0.0) {
    throw ValidationError("resonance width must be positive");
  }
  norm_ = 1.0 / (0.5 + std::atan(2.0 * energy / width) / std::numbers::pi);
}

double TruncatedBWState::density(double e) const {
  if (e < 0.0) return 0.0;
  const double d = e - energy_;
  return norm_ * (width_ / (2.0 * std::numbers::pi)) / (d * d + 0.25 * width_ * width_);
}

Complex TruncatedBWState::density(Complex e) const {
  const Complex d = e - energy_;
  return norm_ * (width_ / (2.0 * std::numbers::pi)) / (d * d + 0.25 * width_ * width_);
}

Complex background_amplitude(const TruncatedBWState& state, double t, SurvivalMethod method) {
  check_time(t);
  if (t == 0.0) return Complex{1.0 - state.norm(), 0.0};
  switch (method) {
    case SurvivalMethod::ContourRotation:
      return rotated_ray_integral(state, t);
    case SurvivalMethod::ExponentialIntegral:
      return exponential_integral_background(state, t);
  }
  throw ValidationError("unknown survival method");
}

Complex survival_amplitude(const TruncatedBWState& state, double t, SurvivalMethod method) {
  check_time(t);
  if (t == 0.0) return Complex{1.0, 0.0};
  const Complex pole_term = state.norm() * std::exp(-kI * state.pole() * t);
  return pole_term + background_amplitude(state, t, method);
}

double gamow_reference(double width, double t) {
  if (!std::isfinite(t) || t < 0.0) throw ValidationError("gamow_reference needs t >= 0");
  if (!std::isfinite(width) || width <= 0.0) throw ValidationError("width must be positive");
  return std::exp(-width * t);
}

std::vector<DeviationRow> deviation_curve(const TruncatedBWState& state,
                                          std::span<const double> t_grid,
                                          SurvivalMethod method) {
  if (t_grid.empty()) throw ValidationError("time grid is empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!std::isfinite(t_grid[i]) || t_grid[i] < 0.0) {
      throw ValidationError("time grid must be non-negative");
    }
    if (i > 0 && t_grid[i] < t_grid[i - 1]) throw ValidationError("time grid must be sorted");
  }
  std::vector<DeviationRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    DeviationRow row;
    row.t = t;
    row.survival = t == 0.0 ? 1.0 : std::norm(survival_amplitude(state, t, method));
    row.exponential = gamow_reference(state.width(), t);
    row.ratio = row.survival / row.exponential;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace resonance
