#pragma once

// S-matrix pole positions and the real (M, Gamma) encodings used for them.
//
// Units: energies in GeV, s in GeV^2, time in GeV^-1 (hbar = 1). Seconds only
// appear in lifetime_from_width / width_from_lifetime.

#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace resonance {

using Complex = std::complex<double>;

/// hbar in GeV*s (CODATA 2018).
inline constexpr double kHbarGeVSeconds = 6.582119569e-25;

/// Real two-parameter encodings of one complex pole s_R.
enum class Convention {
  PoleSqrt,  ///< s_R = (M - i Gamma/2)^2
  BarMass,   ///< s_R = M^2 - i M Gamma
  OnShell,   ///< s_R = M^2 / (1 + i Gamma/M)
};

std::string_view label(Convention c);
/// Case-insensitive; accepts "polesqrt", "barmass", "onshell".
std::optional<Convention> parse_convention(std::string_view text);

/// Pole of the S-matrix in s = p^mu p_mu. Re(s) > 0 and Im(s) <= 0 are
/// enforced on construction.
class ComplexPole {
 public:
  explicit ComplexPole(Complex s);

  Complex s() const noexcept { return s_; }
  /// Principal square root, sqrt(s_R) = M_R - i Gamma_R / 2.
  Complex sqrt_s() const { return std::sqrt(s_); }

 private:
  Complex s_;
};

struct ResonanceParams {
  Convention convention = Convention::PoleSqrt;
  double mass = 0.0;   ///< GeV
  double width = 0.0;  ///< GeV

  /// Throws ValidationError unless mass > 0 and width >= 0 (both finite).
  void validate() const;
};

/// Non-relativistic resonance at z_R = E_R - i Gamma/2.
struct NonRelResonance {
  double energy = 0.0;  ///< E_R, GeV
  double width = 0.0;   ///< Gamma, GeV

  void validate() const;
  Complex pole() const noexcept { return {energy, -0.5 * width}; }
};

ComplexPole pole_from_params(const ResonanceParams& params);
ResonanceParams params_from_pole(const ComplexPole& pole, Convention convention);
/// Re-express params in another convention through the shared pole.
ResonanceParams convert(const ResonanceParams& params, Convention target);

/// tau = hbar / Gamma, Gamma in GeV, result in seconds.
double lifetime_from_width(double width_gev);
/// Inverse of lifetime_from_width.
double width_from_lifetime(double lifetime_seconds);

}  // namespace resonance
