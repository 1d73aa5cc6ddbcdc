#include "resonance/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "resonance/errors.hpp"
#include "resonance/io.hpp"
#include "resonance/jordan_evolution.hpp"
#include "resonance/lineshape.hpp"
#include "resonance/pole_param.hpp"
#include "resonance/run_config.hpp"
#include "resonance/survival.hpp"

namespace resonance::cli {

namespace {

constexpr const char* kOutputDirEnv = "RESONANCE_OUTPUT_DIR";

const std::map<std::string, Convention> kConventions = {
    {"polesqrt", Convention::PoleSqrt},
    {"barmass", Convention::BarMass},
    {"onshell", Convention::OnShell},
};

const std::map<std::string, LineshapeKind> kKinds = {
    {"nonrelbw", LineshapeKind::NonRelBW},
    {"relbw", LineshapeKind::RelBW},
    {"onshellbw", LineshapeKind::OnShellBW},
};

const std::map<std::string, SurvivalMethod> kMethods = {
    {"contour", SurvivalMethod::ContourRotation},
    {"expint", SurvivalMethod::ExponentialIntegral},
};

// Returns the --config argument if present.
std::string find_config_path(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return {};
}

std::filesystem::path resolve_output(const RunConfig& config, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  std::string dir = config.output_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv(kOutputDirEnv)) dir = env;
  }
  return dir.empty() ? p : std::filesystem::path(dir) / p;
}

void add_model_options(CLI::App* cmd, ModelSpec& m) {
  cmd->add_option("--kind", m.kind, "Lineshape: nonrelbw, relbw, onshellbw")
      ->transform(CLI::CheckedTransformer(kKinds, CLI::ignore_case));
  cmd->add_option("--convention", m.convention, "Mass/width convention for relbw")
      ->transform(CLI::CheckedTransformer(kConventions, CLI::ignore_case));
  cmd->add_option("--m", m.mass, "Mass or E_R in GeV");
  cmd->add_option("--gamma", m.width, "Width in GeV");
  cmd->add_option("--residue-re", m.residue_re, "Residue, real part");
  cmd->add_option("--residue-im", m.residue_im, "Residue, imaginary part");
  cmd->add_option("--background", m.background, "Background polynomial coefficients c0 c1 ...");
  cmd->add_flag("--cross-section-background", m.cross_section_background,
                "Add the background to sigma instead of the amplitude");
}

int run_convert(const RunConfig& config, std::ostream& out) {
  const ConvertSpec& spec = config.convert;
  const ResonanceParams input{spec.from, spec.mass, spec.width};
  const ResonanceParams result = convert(input, spec.to);
  const Complex s = pole_from_params(input).s();
  out << "convention = " << label(result.convention) << "\n";
  out << "mass = " << format_double(result.mass) << "\n";
  out << "width = " << format_double(result.width) << "\n";
  out << "pole_re = " << format_double(s.real()) << "\n";
  out << "pole_im = " << format_double(s.imag()) << "\n";
  if (result.width > 0.0) {
    out << "lifetime_s = " << format_double(lifetime_from_width(result.width)) << "\n";
  }
  return kOk;
}

int run_synth(const RunConfig& config, std::ostream& out) {
  const SynthSpec& spec = config.synth;
  if (spec.points < 1) throw ValidationError("--points must be >= 1");
  const LineshapeModel model = spec.model.to_model();
  const auto grid = linear_grid(spec.x_min, spec.x_max, static_cast<std::size_t>(spec.points));
  const CrossSectionDataset data = synthesize(model, grid, spec.noise, config.seed);
  const auto path = resolve_output(config, spec.out);
  save_dataset(data, path);
  out << "wrote " << data.size() << " points to " << path.string() << "\n";
  return kOk;
}

int run_fit(const RunConfig& config, std::ostream& out) {
  const FitSpec& spec = config.fit;
  const CrossSectionDataset data = load_dataset(spec.data);
  const LineshapeModel init = spec.model.to_model();
  FitOptions options;
  options.solver.max_iter = spec.max_iter;
  const FitResult result = fit(data, spec.model.kind, init, options);
  const auto path = resolve_output(config, spec.out);
  save_fit_report(result, path);

  const auto errors = result.standard_errors();
  out << "status = " << label(result.status) << "\n";
  out << "mass = " << format_double(result.model.mass());
  if (!errors.empty()) out << " +/- " << format_double(errors[0]);
  out << "\nwidth = " << format_double(result.model.width());
  if (errors.size() > 1) out << " +/- " << format_double(errors[1]);
  out << "\nchi2_per_dof = " << format_double(result.chi2_per_dof()) << "\n";
  out << "report = " << path.string() << "\n";
  return result.converged ? kOk : kNumericalFailure;
}

int run_evolve(const RunConfig& config, std::ostream& out) {
  const EvolveSpec& spec = config.evolve;
  if (spec.steps < 1) throw ValidationError("--steps must be >= 1");
  if (!(spec.t_max >= 0.0)) throw ValidationError("--t-max must be >= 0");
  if (!(spec.gamma > 0.0)) throw ValidationError("--gamma must be > 0");
  const JordanBlock block({spec.z_real, -0.5 * spec.gamma}, spec.order);
  const int order = block.order();

  std::vector<StateOperator> operators;
  std::vector<double> initial_norms;
  for (int n = 0; n < order; ++n) operators.push_back(w_n(block, n));
  operators.push_back(w_pt(block));
  for (const auto& w : operators) initial_norms.push_back(w.matrix.norm());

  Table table;
  table.columns = {"t", "gamma_t", "exponential"};
  for (int n = 0; n < order; ++n) table.columns.push_back("w" + std::to_string(n) + "_norm");
  table.columns.emplace_back("wpt_norm");
  for (int k = 0; k < order; ++k) table.columns.push_back("ket" + std::to_string(k) + "_norm");

  for (int i = 0; i <= spec.steps; ++i) {
    const double gamma_t = spec.t_max * static_cast<double>(i) / static_cast<double>(spec.steps);
    const double t = gamma_t / spec.gamma;
    std::vector<double> row{t, gamma_t, gamow_reference(spec.gamma, t)};
    for (std::size_t j = 0; j < operators.size(); ++j) {
      row.push_back(evolve_operator(operators[j], t).matrix.norm() / initial_norms[j]);
    }
    for (int k = 0; k < order; ++k) row.push_back(evolve_ket(block, k, t).coeffs.squaredNorm());
    table.rows.push_back(std::move(row));
  }
  const auto path = resolve_output(config, spec.out);
  save_table(table, path);
  out << "wrote " << table.rows.size() << " rows to " << path.string() << "\n";
  return kOk;
}

int run_survival(const RunConfig& config, std::ostream& out) {
  const SurvivalSpec& spec = config.survival;
  if (spec.steps < 1) throw ValidationError("--steps must be >= 1");
  if (!(spec.t_max >= 0.0)) throw ValidationError("--t-max must be >= 0");
  const TruncatedBWState state(spec.er_over_gamma * spec.gamma, spec.gamma);
  std::vector<double> grid;
  for (int i = 0; i <= spec.steps; ++i) {
    grid.push_back(spec.t_max * static_cast<double>(i) / static_cast<double>(spec.steps) /
                   spec.gamma);
  }
  const auto rows = deviation_curve(state, grid, spec.method);
  const auto path = resolve_output(config, spec.out);
  save_curve(rows, path);
  out << "wrote " << rows.size() << " rows to " << path.string() << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Resonance pole conversions, lineshape fits, Jordan-Gamow evolution and survival curves",
               "resonance"};
  try {
    const std::string config_path = find_config_path(argc, argv);
    if (!config_path.empty()) config = load_run_config(config_path);

    std::string config_flag;
    app.add_option("--config", config_flag, "TOML run configuration; flags override it");
    app.add_option("--output-dir", config.output_dir,
                   "Base directory for outputs (default: $RESONANCE_OUTPUT_DIR)");
    app.require_subcommand(1);

    auto* convert_cmd = app.add_subcommand("convert", "Convert (M, Gamma) between conventions");
    convert_cmd->add_option("--from", config.convert.from, "Input convention")
        ->transform(CLI::CheckedTransformer(kConventions, CLI::ignore_case));
    convert_cmd->add_option("--m", config.convert.mass, "Mass in GeV");
    convert_cmd->add_option("--gamma", config.convert.width, "Width in GeV");
    convert_cmd->add_option("--to", config.convert.to, "Target convention")
        ->transform(CLI::CheckedTransformer(kConventions, CLI::ignore_case));

    auto* synth_cmd = app.add_subcommand("synth", "Synthesize a noisy cross-section dataset");
    add_model_options(synth_cmd, config.synth.model);
    synth_cmd->add_option("--x-min", config.synth.x_min, "Lowest abscissa (GeV)");
    synth_cmd->add_option("--x-max", config.synth.x_max, "Highest abscissa (GeV)");
    synth_cmd->add_option("--points", config.synth.points, "Number of grid points");
    synth_cmd->add_option("--noise", config.synth.noise, "Relative Gaussian noise");
    synth_cmd->add_option("--seed", config.seed, "Random seed");
    synth_cmd->add_option("--out", config.synth.out, "Output CSV");

    auto* fit_cmd = app.add_subcommand("fit", "Fit a lineshape model to a dataset");
    add_model_options(fit_cmd, config.fit.model);
    fit_cmd->add_option("--data", config.fit.data, "Input CSV (x,sigma,sigma_err)");
    fit_cmd->add_option("--max-iter", config.fit.max_iter, "Iteration limit");
    fit_cmd->add_option("--out", config.fit.out, "Fit report path");

    auto* evolve_cmd = app.add_subcommand("evolve", "Jordan-Gamow operator decay curves");
    evolve_cmd->add_option("--z-real", config.evolve.z_real, "Re z in GeV");
    evolve_cmd->add_option("--gamma", config.evolve.gamma, "Width Gamma = -2 Im z in GeV");
    evolve_cmd->add_option("--order", config.evolve.order, "Pole order N");
    evolve_cmd->add_option("--t-max", config.evolve.t_max, "Final time in units of 1/Gamma");
    evolve_cmd->add_option("--steps", config.evolve.steps, "Number of time steps");
    evolve_cmd->add_option("--out", config.evolve.out, "Output CSV");

    auto* survival_cmd = app.add_subcommand("survival", "Survival probability deviation curve");
    survival_cmd->add_option("--er-over-gamma", config.survival.er_over_gamma, "E_R / Gamma");
    survival_cmd->add_option("--gamma", config.survival.gamma, "Width in GeV");
    survival_cmd->add_option("--t-max", config.survival.t_max, "Final time in units of 1/Gamma");
    survival_cmd->add_option("--steps", config.survival.steps, "Number of time steps");
    survival_cmd->add_option("--method", config.survival.method, "contour or expint")
        ->transform(CLI::CheckedTransformer(kMethods, CLI::ignore_case));
    survival_cmd->add_option("--out", config.survival.out, "Output CSV");

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n\n" << app.help();
      return kValidationError;
    }

    if (convert_cmd->parsed()) return run_convert(config, out);
    if (synth_cmd->parsed()) return run_synth(config, out);
    if (fit_cmd->parsed()) return run_fit(config, out);
    if (evolve_cmd->parsed()) return run_evolve(config, out);
    if (survival_cmd->parsed()) return run_survival(config, out);
    err << app.help();
    return kValidationError;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace resonance::cli
