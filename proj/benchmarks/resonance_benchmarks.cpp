#include <benchmark/benchmark.h>

#include "resonance/jordan_evolution.hpp"
#include "resonance/lineshape.hpp"
#include "resonance/matrix_exponential.hpp"
#include "resonance/pole_param.hpp"
#include "resonance/survival.hpp"

namespace {

using namespace resonance;

void BM_Convert(benchmark::State& state) {
  const ResonanceParams p{Convention::OnShell, 91.1875, 2.4939};
  for (auto _ : state) benchmark::DoNotOptimize(convert(p, Convention::BarMass));
}
BENCHMARK(BM_Convert);

void BM_AnalyticEvolution(benchmark::State& state) {
  const JordanBlock b({91.1611, -1.24715}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analytic_evolution(b, 0.7));
}
BENCHMARK(BM_AnalyticEvolution)->DenseRange(1, 6);

void BM_MatrixExponential(benchmark::State& state) {
  const JordanBlock b({91.1611, -1.24715}, static_cast<int>(state.range(0)));
  const Eigen::MatrixXcd a = Complex{0.0, -4.0} * hamiltonian_matrix(b);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exponential(a));
}
BENCHMARK(BM_MatrixExponential)->DenseRange(1, 6);

void BM_EvolveOperator(benchmark::State& state) {
  const JordanBlock b({91.1611, -1.24715}, 6);
  const StateOperator w = w_pt(b);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_operator(w, 2.0));
}
BENCHMARK(BM_EvolveOperator);

void BM_Survival(benchmark::State& state) {
  const TruncatedBWState s(50.0, 1.0);
  const auto method = state.range(0) == 0 ? SurvivalMethod::ContourRotation : SurvivalMethod::ExponentialIntegral;
  for (auto _ : state) benchmark::DoNotOptimize(survival_amplitude(s, 30.0, method));
}
BENCHMARK(BM_Survival)->Arg(0)->Arg(1);

void BM_FitRelBW(benchmark::State& state) {
  const auto truth = LineshapeModel::relativistic({Convention::PoleSqrt, 91.1611, 2.4943}, {1.0, 0.0});
  const auto start = LineshapeModel::relativistic({Convention::PoleSqrt, 91.0, 2.3}, {0.8, 0.0});
  const auto data = synthesize(truth, linear_grid(88.0, 94.0, 200), 0.01, 42);
  for (auto _ : state) benchmark::DoNotOptimize(fit(data, LineshapeKind::RelBW, start));
}
BENCHMARK(BM_FitRelBW)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
