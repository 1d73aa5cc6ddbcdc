#pragma once

// Per-run configuration. Serialized as a TOML document: top-level keys for
// run-wide settings and one section per subcommand whose keys match the
// subcommand's long flag names, e.g.
//
//   seed = 42
//   [survival]
//   er-over-gamma = 50
//   t-max = 40

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "resonance/lineshape.hpp"
#include "resonance/survival.hpp"

namespace resonance {

std::string_view label(SurvivalMethod method);
std::optional<SurvivalMethod> parse_survival_method(std::string_view text);

struct ConvertSpec {
  Convention from = Convention::OnShell;
  double mass = 91.1875;
  double width = 2.4939;
  Convention to = Convention::PoleSqrt;

  friend bool operator==(const ConvertSpec&, const ConvertSpec&) = default;
};

/// Model description shared by synth (truth) and fit (starting point).
struct ModelSpec {
  LineshapeKind kind = LineshapeKind::RelBW;
  Convention convention = Convention::PoleSqrt;
  double mass = 91.1611;
  double width = 2.4943;
  double residue_re = 1.0;
  double residue_im = 0.0;
  std::vector<double> background;
  bool cross_section_background = false;

  /// Throws ValidationError for invalid combinations.
  LineshapeModel to_model() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

struct SynthSpec {
  ModelSpec model;
  double x_min = 88.0;
  double x_max = 94.0;
  int points = 200;
  double noise = 0.01;
  std::string out = "synth.csv";

  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

struct FitSpec {
  ModelSpec model;
  std::string data = "synth.csv";
  int max_iter = 200;
  std::string out = "fit_report.toml";

  friend bool operator==(const FitSpec&, const FitSpec&) = default;
};

struct EvolveSpec {
  double z_real = 91.1611;
  double gamma = 2.4943;
  int order = 2;
  double t_max = 5.0;  ///< units of 1/Gamma
  int steps = 100;
  std::string out = "evolve.csv";

  friend bool operator==(const EvolveSpec&, const EvolveSpec&) = default;
};

struct SurvivalSpec {
  double er_over_gamma = 50.0;
  double gamma = 1.0;
  double t_max = 40.0;  ///< units of 1/Gamma
  int steps = 400;
  SurvivalMethod method = SurvivalMethod::ContourRotation;
  std::string out = "survival.csv";

  friend bool operator==(const SurvivalSpec&, const SurvivalSpec&) = default;
};

struct RunConfig {
  std::uint64_t seed = 42;
  /// Base directory for relative output paths; empty means the
  /// RESONANCE_OUTPUT_DIR environment variable, then the working directory.
  std::string output_dir;
  ConvertSpec convert;
  SynthSpec synth;
  FitSpec fit;
  EvolveSpec evolve;
  SurvivalSpec survival;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string serialize_run_config(const RunConfig& config);
/// Keys absent from `text` keep their values from `base`. Unknown keys and
/// malformed values raise ValidationError.
RunConfig parse_run_config(std::string_view text, const RunConfig& base = {});
RunConfig load_run_config(const std::filesystem::path& path, const RunConfig& base = {});

}  // namespace resonance
