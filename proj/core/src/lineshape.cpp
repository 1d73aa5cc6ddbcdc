#include "resonance/lineshape.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <string>

#include "resonance/errors.hpp"

namespace resonance {

std::string_view label(LineshapeKind kind) {
  switch (kind) {
    case LineshapeKind::NonRelBW:
      return "nonrelbw";
    case LineshapeKind::RelBW:
      return "relbw";
    case LineshapeKind::OnShellBW:
      return "onshellbw";
  }
  return "unknown";
}

std::optional<LineshapeKind> parse_lineshape_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "nonrelbw") return LineshapeKind::NonRelBW;
  if (lower == "relbw") return LineshapeKind::RelBW;
  if (lower == "onshellbw") return LineshapeKind::OnShellBW;
  return std::nullopt;
}

LineshapeModel LineshapeModel::non_relativistic(NonRelResonance res, Complex residue) {
  LineshapeModel m;
  m.kind = LineshapeKind::NonRelBW;
  m.resonance = res;
  m.residue = residue;
  return m;
}

LineshapeModel LineshapeModel::relativistic(ResonanceParams params, Complex residue) {
  LineshapeModel m;
  m.kind = LineshapeKind::RelBW;
  m.resonance = params;
  m.residue = residue;
  return m;
}

LineshapeModel LineshapeModel::on_shell(double mass, double width, Complex residue) {
  LineshapeModel m;
  m.kind = LineshapeKind::OnShellBW;
  m.resonance = ResonanceParams{Convention::OnShell, mass, width};
  m.residue = residue;
  return m;
}

void LineshapeModel::validate() const {
  if (kind == LineshapeKind::NonRelBW) {
    const auto* res = std::get_if<NonRelResonance>(&resonance);
    if (res == nullptr) throw ValidationError("NonRelBW model needs a NonRelResonance");
    res->validate();
  } else {
    const auto* res = std::get_if<ResonanceParams>(&resonance);
    if (res == nullptr) throw ValidationError("relativistic model needs ResonanceParams");
    res->validate();
  }
  if (residue == Complex{0.0, 0.0} || !std::isfinite(residue.real()) ||
      !std::isfinite(residue.imag())) {
    throw ValidationError("residue must be finite and non-zero");
  }
  if (background.size() > kMaxBackgroundDegree + 1) {
    throw ValidationError("background polynomial degree must be <= 4");
  }
  for (double c : background) {
    if (!std::isfinite(c)) throw ValidationError("background coefficients must be finite");
  }
}

double LineshapeModel::mass() const {
  if (const auto* res = std::get_if<NonRelResonance>(&resonance)) return res->energy;
  return std::get<ResonanceParams>(resonance).mass;
}

double LineshapeModel::width() const {
  if (const auto* res = std::get_if<NonRelResonance>(&resonance)) return res->width;
  return std::get<ResonanceParams>(resonance).width;
}

Complex resonant_amplitude(const LineshapeModel& model, double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw ValidationError("abscissa must be finite and >= 0, got " + std::to_string(x));
  }
  switch (model.kind) {
    case LineshapeKind::NonRelBW: {
      const auto& res = std::get<NonRelResonance>(model.resonance);
      return model.residue / (x - res.pole());
    }
    case LineshapeKind::RelBW: {
      const auto& params = std::get<ResonanceParams>(model.resonance);
      const Complex s_pole = pole_from_params(params).s();
      return model.residue / (x * x - s_pole);
    }
    case LineshapeKind::OnShellBW: {
      const ResonanceParams p =
          convert(std::get<ResonanceParams>(model.resonance), Convention::OnShell);
      const double s = x * x;
      return model.residue / Complex{s - p.mass * p.mass, s / p.mass * p.width};
    }
  }
  throw ValidationError("unknown lineshape kind");
}

double background_value(const LineshapeModel& model, double x) {
  double acc = 0.0;
  for (auto it = model.background.rbegin(); it != model.background.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

Complex amplitude(const LineshapeModel& model, double x) {
  return resonant_amplitude(model, x) + background_value(model, x);
}

double cross_section(const LineshapeModel& model, double x) {
  if (model.background_mode == BackgroundMode::CrossSection) {
    return std::norm(resonant_amplitude(model, x)) + background_value(model, x);
  }
  return std::norm(amplitude(model, x));
}

CrossSectionDataset::CrossSectionDataset(std::vector<DataPoint> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const DataPoint& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.sigma) || !std::isfinite(p.sigma_err)) {
      throw ValidationError("point " + std::to_string(i) + ": non-finite value");
    }
    if (p.sigma < 0.0) {
      throw ValidationError("point " + std::to_string(i) + ": sigma must be >= 0");
    }
    if (p.sigma_err <= 0.0) {
      throw ValidationError("point " + std::to_string(i) + ": sigma_err must be > 0");
    }
    if (i > 0 && !(p.x > points_[i - 1].x)) {
      throw ValidationError("point " + std::to_string(i) + ": x must be strictly increasing");
    }
  }
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n == 0) throw ValidationError("grid needs at least one point");
  if (n == 1) return {lo};
  if (!(hi > lo)) throw ValidationError("grid requires hi > lo");
  std::vector<double> grid(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

CrossSectionDataset synthesize(const LineshapeModel& model, std::span<const double> grid,
                               double noise_rel, std::uint64_t seed) {
  model.validate();
  if (grid.empty()) throw ValidationError("synthesis grid is empty");
  if (!std::isfinite(noise_rel) || noise_rel < 0.0) {
    throw ValidationError("noise_rel must be >= 0");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<DataPoint> points;
  points.reserve(grid.size());
  for (double x : grid) {
    const double truth = cross_section(model, x);
    // Always draw so the noise sequence does not depend on noise_rel.
    const double g = gauss(rng);
    const double sigma = noise_rel == 0.0 ? truth : std::max(0.0, truth * (1.0 + noise_rel * g));
    points.push_back({x, sigma, std::max(noise_rel * truth, 1e-12)});
  }
  return CrossSectionDataset(std::move(points));
}

std::vector<double> FitResult::standard_errors() const {
  std::vector<double> out;
  if (covariance.size() == 0) return out;
  out.reserve(static_cast<std::size_t>(covariance.rows()));
  for (Eigen::Index i = 0; i < covariance.rows(); ++i) {
    out.push_back(std::sqrt(std::max(covariance(i, i), 0.0)));
  }
  return out;
}

namespace {

// Maps between the free parameter vector and a LineshapeModel.
// Layout: [mass, width, residue_re, (residue_im), background...].
class ParameterMap {
 public:
  ParameterMap(LineshapeModel base, bool fit_background) : base_(std::move(base)) {
    const bool interferes =
        !base_.background.empty() && base_.background_mode == BackgroundMode::Amplitude;
    free_phase_ = interferes && fit_background;
    n_background_ = fit_background ? base_.background.size() : 0;
  }

  Eigen::VectorXd pack(const LineshapeModel& m) const {
    Eigen::VectorXd p(size());
    p(0) = m.mass();
    p(1) = m.width();
    if (free_phase_) {
      p(2) = m.residue.real();
      p(3) = m.residue.imag();
    } else {
      p(2) = std::abs(m.residue);
    }
    for (std::size_t i = 0; i < n_background_; ++i) p(background_offset() + i) = m.background[i];
    return p;
  }

  /// Returns false when p violates the model domain.
  bool unpack(const Eigen::VectorXd& p, LineshapeModel& m) const {
    if (!(p(0) > 0.0) || !(p(1) > 0.0) || !p.allFinite()) return false;
    m = base_;
    if (auto* res = std::get_if<NonRelResonance>(&m.resonance)) {
      res->energy = p(0);
      res->width = p(1);
    } else {
      auto& params = std::get<ResonanceParams>(m.resonance);
      params.mass = p(0);
      params.width = p(1);
    }
    m.residue = free_phase_ ? Complex{p(2), p(3)} : Complex{p(2), 0.0};
    if (m.residue == Complex{0.0, 0.0}) return false;
    for (std::size_t i = 0; i < n_background_; ++i) m.background[i] = p(background_offset() + i);
    return true;
  }

  Eigen::Index size() const {
    return static_cast<Eigen::Index>(background_offset() + n_background_);
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out{"mass", "width"};
    if (free_phase_) {
      out.emplace_back("residue_re");
      out.emplace_back("residue_im");
    } else {
      out.emplace_back("residue");
    }
    for (std::size_t i = 0; i < n_background_; ++i) out.push_back("background_" + std::to_string(i));
    return out;
  }

 private:
  std::size_t background_offset() const { return free_phase_ ? 4 : 3; }

  LineshapeModel base_;
  bool free_phase_ = false;
  std::size_t n_background_ = 0;
};

// Recasts the initial model into the requested kind.
LineshapeModel adapt_to_kind(const LineshapeModel& init, LineshapeKind kind) {
  init.validate();
  LineshapeModel m = init;
  if (init.kind == kind) {
    if (kind == LineshapeKind::OnShellBW) {
      m.resonance = convert(std::get<ResonanceParams>(init.resonance), Convention::OnShell);
    }
    return m;
  }
  m.kind = kind;
  if (kind == LineshapeKind::NonRelBW) {
    if (const auto* rel = std::get_if<ResonanceParams>(&init.resonance)) {
      m.resonance = NonRelResonance{rel->mass, std::max(rel->width, 1e-12)};
    }
    return m;
  }
  ResonanceParams params;
  if (const auto* nonrel = std::get_if<NonRelResonance>(&init.resonance)) {
    params = {Convention::PoleSqrt, nonrel->energy, nonrel->width};
  } else {
    params = std::get<ResonanceParams>(init.resonance);
  }
  if (kind == LineshapeKind::OnShellBW) params = convert(params, Convention::OnShell);
  m.resonance = params;
  return m;
}

}  // namespace

FitResult fit(std::span<const DataPoint> data, LineshapeKind kind, const LineshapeModel& init,
              const FitOptions& options) {
  const LineshapeModel start = adapt_to_kind(init, kind);
  const ParameterMap map(start, options.fit_background);
  const Eigen::Index n_params = map.size();
  const auto n_points = static_cast<Eigen::Index>(data.size());
  if (n_points < n_params + 1) {
    throw ValidationError("fit needs at least " + std::to_string(n_params + 1) +
                          " points, got " + std::to_string(n_points));
  }
  for (const DataPoint& p : data) {
    if (!(p.sigma_err > 0.0)) throw ValidationError("fit requires sigma_err > 0");
  }

  const ResidualFunction residuals = [&](const Eigen::VectorXd& p, Eigen::VectorXd& out) {
    LineshapeModel m;
    if (!map.unpack(p, m)) return false;
    for (Eigen::Index i = 0; i < n_points; ++i) {
      const DataPoint& d = data[static_cast<std::size_t>(i)];
      out(i) = (d.sigma - cross_section(m, d.x)) / d.sigma_err;
    }
    return out.allFinite();
  };

  const LeastSquaresResult ls =
      levenberg_marquardt(residuals, n_points, map.pack(start), options.solver);

  FitResult result;
  if (!map.unpack(ls.params, result.model)) result.model = start;
  result.chi2 = ls.chi2;
  result.dof = static_cast<int>(n_points - n_params);
  result.parameter_names = map.names();
  result.parameters.assign(ls.params.data(), ls.params.data() + ls.params.size());
  result.covariance = ls.covariance;
  result.status = ls.status;
  result.converged = ls.status == FitStatus::Converged;
  result.iterations = ls.iterations;
  return result;
}

FitResult fit(const CrossSectionDataset& data, LineshapeKind kind, const LineshapeModel& init,
              const FitOptions& options) {
  return fit(data.points(), kind, init, options);
}

}  // namespace resonance
