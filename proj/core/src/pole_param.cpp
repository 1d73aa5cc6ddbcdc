#include "resonance/pole_param.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "resonance/errors.hpp"

namespace resonance {

std::string_view label(Convention c) {
  switch (c) {
    case Convention::PoleSqrt:
      return "polesqrt";
    case Convention::BarMass:
      return "barmass";
    case Convention::OnShell:
      return "onshell";
  }
  return "unknown";
}

std::optional<Convention> parse_convention(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "polesqrt") return Convention::PoleSqrt;
  if (lower == "barmass") return Convention::BarMass;
  if (lower == "onshell") return Convention::OnShell;
  return std::nullopt;
}

ComplexPole::ComplexPole(Complex s) : s_(s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw ValidationError("pole position must be finite");
  }
  if (s.real() <= 0.0) {
    throw ValidationError("pole position must have Re(s_R) > 0");
  }
  if (s.imag() > 0.0) {
    throw ValidationError("pole position must have Im(s_R) <= 0 (decaying state)");
  }
}

void ResonanceParams::validate() const {
  if (!std::isfinite(mass) || mass <= 0.0) {
    throw ValidationError("resonance mass must be positive, got " + std::to_string(mass));
  }
  if (!std::isfinite(width) || width < 0.0) {
    throw ValidationError("resonance width must be non-negative, got " + std::to_string(width));
  }
}

void NonRelResonance::validate() const {
  if (!std::isfinite(energy) || energy <= 0.0) {
    throw ValidationError("resonance energy must be positive");
  }
  if (!std::isfinite(width) || width <= 0.0) {
    throw ValidationError("resonance width must be positive");
  }
}

ComplexPole pole_from_params(const ResonanceParams& params) {
  params.validate();
  const double m = params.mass;
  const double g = params.width;
  switch (params.convention) {
    case Convention::PoleSqrt: {
      const Complex root{m, -0.5 * g};
      return ComplexPole(root * root);
    }
    case Convention::BarMass:
      return ComplexPole(Complex{m * m, -m * g});
    case Convention::OnShell:
      return ComplexPole(m * m / Complex{1.0, g / m});
  }
  throw ValidationError("unknown convention");
}

ResonanceParams params_from_pole(const ComplexPole& pole, Convention convention) {
  const Complex s = pole.s();
  ResonanceParams out;
  out.convention = convention;
  switch (convention) {
    case Convention::PoleSqrt: {
      const Complex root = pole.sqrt_s();
      out.mass = root.real();
      out.width = -2.0 * root.imag();
      break;
    }
    case Convention::BarMass:
      out.mass = std::sqrt(s.real());
      out.width = -s.imag() / out.mass;
      break;
    case Convention::OnShell: {
      // 1/s_R = 1/M^2 + i Gamma/M^3
      const Complex inv = 1.0 / s;
      out.mass = 1.0 / std::sqrt(inv.real());
      out.width = out.mass * out.mass * out.mass * inv.imag();
      break;
    }
  }
  // -0.0 from a real pole
  out.width = std::max(out.width, 0.0);
  return out;
}

ResonanceParams convert(const ResonanceParams& params, Convention target) {
  if (params.convention == target) {
    params.validate();
    return params;
  }
  return params_from_pole(pole_from_params(params), target);
}

double lifetime_from_width(double width_gev) {
  if (!std::isfinite(width_gev) || width_gev <= 0.0) {
    throw ValidationError("lifetime requires a positive width");
  }
  return kHbarGeVSeconds / width_gev;
}

double width_from_lifetime(double lifetime_seconds) {
  if (!std::isfinite(lifetime_seconds) || lifetime_seconds <= 0.0) {
    throw ValidationError("width requires a positive lifetime");
  }
  return kHbarGeVSeconds / lifetime_seconds;
}

}  // namespace resonance
