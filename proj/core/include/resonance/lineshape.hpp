#pragma once

// Resonance lineshapes: pole-plus-background amplitudes, their cross sections,
// synthetic data generation and damped least-squares fits.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "resonance/least_squares.hpp"
#include "resonance/pole_param.hpp"

namespace resonance {

enum class LineshapeKind {
  NonRelBW,   ///< r / (E - z_R), abscissa E
  RelBW,      ///< r / (s - s_R), abscissa sqrt(s)
  OnShellBW,  ///< R / (s - M^2 + i (s/M) Gamma), abscissa sqrt(s)
};

std::string_view label(LineshapeKind kind);
std::optional<LineshapeKind> parse_lineshape_kind(std::string_view text);

enum class BackgroundMode {
  Amplitude,     ///< sigma = |a_res + B|^2
  CrossSection,  ///< sigma = |a_res|^2 + B
};

inline constexpr std::size_t kMaxBackgroundDegree = 4;

struct LineshapeModel {
  LineshapeKind kind = LineshapeKind::RelBW;
  /// NonRelResonance for NonRelBW, ResonanceParams otherwise. OnShellBW reads
  /// its (M, Gamma) in the OnShell convention, converting if necessary.
  std::variant<NonRelResonance, ResonanceParams> resonance = ResonanceParams{};
  Complex residue{1.0, 0.0};
  /// Real polynomial coefficients c_0 + c_1 x + ... in the abscissa x.
  std::vector<double> background;
  BackgroundMode background_mode = BackgroundMode::Amplitude;
  std::optional<std::string> channel_label;

  static LineshapeModel non_relativistic(NonRelResonance res, Complex residue);
  static LineshapeModel relativistic(ResonanceParams params, Complex residue);
  static LineshapeModel on_shell(double mass, double width, Complex residue);

  void validate() const;

  /// E_R or M in the model's own convention.
  double mass() const;
  double width() const;
};

/// Resonant part only.
Complex resonant_amplitude(const LineshapeModel& model, double x);
/// Background polynomial B(x).
double background_value(const LineshapeModel& model, double x);
/// a(x) = a_res(x) + B(x). Throws ValidationError for x < 0.
Complex amplitude(const LineshapeModel& model, double x);
/// |a_res + B|^2, or |a_res|^2 + B in CrossSection background mode.
double cross_section(const LineshapeModel& model, double x);

struct DataPoint {
  double x = 0.0;
  double sigma = 0.0;
  double sigma_err = 0.0;

  friend bool operator==(const DataPoint&, const DataPoint&) = default;
};

/// Points with strictly increasing x, sigma >= 0 and sigma_err > 0.
class CrossSectionDataset {
 public:
  CrossSectionDataset() = default;
  /// Throws ValidationError naming the offending index.
  explicit CrossSectionDataset(std::vector<DataPoint> points);

  std::span<const DataPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const DataPoint& operator[](std::size_t i) const { return points_[i]; }

  friend bool operator==(const CrossSectionDataset&, const CrossSectionDataset&) = default;

 private:
  std::vector<DataPoint> points_;
};

/// sigma_i = cross_section(x_i) (1 + noise_rel g_i), g_i ~ N(0,1) from a
/// mt19937_64 seeded with `seed`; sigma_err_i = max(noise_rel cross_section(x_i), 1e-12).
CrossSectionDataset synthesize(const LineshapeModel& model, std::span<const double> grid,
                               double noise_rel, std::uint64_t seed);

/// n evenly spaced points on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

struct FitOptions {
  LeastSquaresOptions solver;
  /// Fit the background coefficients present in the initial model.
  bool fit_background = true;
};

struct FitResult {
  LineshapeModel model;
  double chi2 = 0.0;
  int dof = 0;
  std::vector<std::string> parameter_names;
  std::vector<double> parameters;
  Eigen::MatrixXd covariance;
  bool converged = false;
  FitStatus status = FitStatus::MaxIterations;
  int iterations = 0;

  double chi2_per_dof() const { return dof > 0 ? chi2 / dof : 0.0; }
  /// Square roots of the covariance diagonal (empty when singular).
  std::vector<double> standard_errors() const;
};

/// Minimizes sum ((sigma_i - model(x_i)) / sigma_err_i)^2 over mass, width,
/// residue and (optionally) background coefficients. The residue phase is
/// fixed to zero unless an amplitude-level background can interfere with it.
/// Points need not be ordered.
FitResult fit(std::span<const DataPoint> data, LineshapeKind kind, const LineshapeModel& init,
              const FitOptions& options = {});
FitResult fit(const CrossSectionDataset& data, LineshapeKind kind, const LineshapeModel& init,
              const FitOptions& options = {});

}  // namespace resonance
