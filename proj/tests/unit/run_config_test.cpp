#include "resonance/run_config.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "resonance/errors.hpp"
#include "resonance/io.hpp"

namespace resonance {
namespace {

RunConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 200.0);
  std::uniform_int_distribution<int> small(1, 500);
  auto pick_convention = [&] { return static_cast<Convention>(rng() % 3); };
  auto random_model = [&] {
    ModelSpec m;
    m.kind = static_cast<LineshapeKind>(rng() % 3);
    m.convention = pick_convention();
    m.mass = u(rng);
    m.width = u(rng) / 10.0;
    m.residue_re = u(rng);
    m.residue_im = -u(rng);
    m.background.resize(rng() % 4);
    for (double& c : m.background) c = u(rng) - 100.0;
    m.cross_section_background = (rng() % 2) == 0;
    return m;
  };
  RunConfig c;
  c.seed = rng();
  c.output_dir = (rng() % 2) ? "" : "out dir/" + std::to_string(small(rng));
  c.convert = {pick_convention(), u(rng), u(rng) / 50.0, pick_convention()};
  c.synth.model = random_model();
  c.synth.x_min = u(rng);
  c.synth.x_max = c.synth.x_min + u(rng);
  c.synth.points = small(rng);
  c.synth.noise = u(rng) / 1000.0;
  c.synth.out = "synth_" + std::to_string(small(rng)) + ".csv";
  c.fit.model = random_model();
  c.fit.data = "data_" + std::to_string(small(rng)) + ".csv";
  c.fit.max_iter = small(rng);
  c.fit.out = "fit.toml";
  c.evolve = {u(rng), u(rng) / 10.0, 1 + small(rng) % 6, u(rng) / 10.0, small(rng), "e.csv"};
  c.survival = {u(rng), u(rng) / 10.0, u(rng) / 4.0, small(rng),
                (rng() % 2) ? SurvivalMethod::ContourRotation : SurvivalMethod::ExponentialIntegral,
                "s.csv"};
  return c;
}

TEST(RunConfig, DefaultsRoundTrip) {
  const RunConfig c;
  EXPECT_EQ(parse_run_config(serialize_run_config(c)), c);
  EXPECT_EQ(parse_run_config(""), c);
}

TEST(RunConfig, RandomConfigsRoundTrip) {
  std::mt19937_64 rng(2718);
  for (int i = 0; i < 300; ++i) {
    const RunConfig c = random_config(rng);
    const std::string text = serialize_run_config(c);
    const RunConfig back = parse_run_config(text);
    ASSERT_EQ(back, c) << text;
    ASSERT_EQ(serialize_run_config(back), text);
  }
}

TEST(RunConfig, PartialTextOverridesBase) {
  RunConfig base;
  base.fit.max_iter = 7;
  const RunConfig c = parse_run_config("seed = 9\n[survival]\nmethod = \"expint\"\nt-max = 12.5\n", base);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.survival.method, SurvivalMethod::ExponentialIntegral);
  EXPECT_EQ(c.survival.t_max, 12.5);
  EXPECT_EQ(c.fit.max_iter, 7);
  EXPECT_EQ(c.survival.steps, 400);
}

TEST(RunConfig, ListsAndCaseInsensitiveEnums) {
  const RunConfig c = parse_run_config("[synth]\nkind = \"OnShellBW\"\nbackground = [1.5, -2, 3e-2]\n");
  EXPECT_EQ(c.synth.model.kind, LineshapeKind::OnShellBW);
  EXPECT_EQ(c.synth.model.background, (std::vector<double>{1.5, -2.0, 3e-2}));
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_run_config("colour = 3\n"), ValidationError);
  EXPECT_THROW(parse_run_config("[fit]\nmaxiter = 3\n"), ValidationError);
  EXPECT_THROW(parse_run_config("[nosuch]\nm = 3\n"), ValidationError);
  EXPECT_THROW(parse_run_config("[fit]\nmax-iter = \"many\"\n"), ValidationError);
  EXPECT_THROW(parse_run_config("[convert]\nfrom = \"sideways\"\n"), ValidationError);
  EXPECT_THROW(parse_run_config("[survival]\nmethod = \"guess\"\n"), ValidationError);
}

TEST(RunConfig, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "resonance_run_config_test.toml";
  RunConfig c;
  c.evolve.order = 4;
  write_text_file(path, serialize_run_config(c));
  EXPECT_EQ(load_run_config(path), c);
  std::filesystem::remove(path);
  EXPECT_THROW(load_run_config(path), IoError);
}

TEST(ModelSpec, BuildsEachKind) {
  ModelSpec m;
  m.kind = LineshapeKind::NonRelBW;
  EXPECT_EQ(m.to_model().kind, LineshapeKind::NonRelBW);
  m.kind = LineshapeKind::OnShellBW;
  m.convention = Convention::PoleSqrt;
  EXPECT_EQ(m.to_model().kind, LineshapeKind::OnShellBW);
  m.width = -1.0;
  EXPECT_THROW(m.to_model(), ValidationError);
}

TEST(SurvivalMethodLabels, RoundTrip) {
  for (auto m : {SurvivalMethod::ContourRotation, SurvivalMethod::ExponentialIntegral}) {
    EXPECT_EQ(parse_survival_method(label(m)), m);
  }
  EXPECT_FALSE(parse_survival_method("other").has_value());
}

}  // namespace
}  // namespace resonance
