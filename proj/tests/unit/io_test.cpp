#include "resonance/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "resonance/errors.hpp"

namespace resonance {
namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("resonance_io_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(FormatDouble, RoundTripsExactly) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(mantissa(rng), exponent(rng));
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_EQ(format_double(91.1611), "91.161100000000005");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-0.5), "-0.5");
}

TEST(ParseDouble, IsStrict) {
  EXPECT_EQ(parse_double("2.5"), 2.5);
  EXPECT_EQ(parse_double("-1e-3"), -1e-3);
  EXPECT_THROW(parse_double(""), ValidationError);
  EXPECT_THROW(parse_double("1.0x"), ValidationError);
  EXPECT_THROW(parse_double("abc"), ValidationError);
  EXPECT_THROW(parse_double("1.0 2.0"), ValidationError);
}

TEST(Dataset, RoundTripsByteForByte) {
  const CrossSectionDataset data({{88.0, 1.5, 0.01}, {90.1, 2.25, 0.02}, {94.0, 1.0 / 3.0, 1e-12}});
  const std::string text = format_dataset(data);
  EXPECT_EQ(text.substr(0, text.find('\n')), "x,sigma,sigma_err");
  const CrossSectionDataset back = parse_dataset(text);
  EXPECT_EQ(back, data);
  EXPECT_EQ(format_dataset(back), text);
}

TEST(Dataset, SkipsCommentsAndBlankLines) {
  const auto data = parse_dataset("# produced by hand\nx,sigma,sigma_err\n\n1,2,0.5\n# mid\n2,3,0.5\n");
  ASSERT_EQ(data.size(), 2u);
  EXPECT_EQ(data.points()[1].sigma, 3.0);
}

TEST(Dataset, ErrorsNameTheLine) {
  try {
    parse_dataset("x,sigma,sigma_err\n1,2,0.5\n2,oops,0.5\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_dataset("x,sigma\n1,2\n"), ValidationError);
  EXPECT_THROW(parse_dataset("x,sigma,sigma_err\n1,2\n"), ValidationError);
  EXPECT_THROW(parse_dataset("x,sigma,sigma_err\n1,2,0\n"), ValidationError);
  EXPECT_THROW(parse_dataset("x,sigma,sigma_err\n2,2,1\n1,2,1\n"), ValidationError);
  EXPECT_THROW(parse_dataset(""), ValidationError);
}

TEST(Dataset, FileRoundTripAndMissingFile) {
  const auto dir = scratch_dir("dataset");
  const auto path = dir / "nested" / "data.csv";
  const CrossSectionDataset data({{1.0, 2.0, 0.1}, {2.0, 4.0, 0.2}});
  save_dataset(data, path);
  EXPECT_EQ(load_dataset(path), data);
  EXPECT_THROW(load_dataset(dir / "missing.csv"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(Curve, HeaderAndRows) {
  const std::vector<DeviationRow> rows{{0.0, 1.0, 1.0, 1.0}, {1.0, 0.5, 0.25, 2.0}};
  EXPECT_EQ(format_curve(rows), "t,survival,exponential,ratio\n0,1,1,1\n1,0.5,0.25,2\n");
}

TEST(TableFormat, ColumnCountIsChecked) {
  Table table{{"a", "b"}, {{1.0, 2.0}}};
  EXPECT_EQ(format_table(table), "a,b\n1,2\n");
  table.rows.push_back({1.0});
  EXPECT_THROW(format_table(table), ValidationError);
}

TEST(FitReport, ContainsParametersAndCovariance) {
  const auto model = LineshapeModel::relativistic({Convention::PoleSqrt, 91.1611, 2.4943}, {1.0, 0.0});
  const auto grid = linear_grid(88.0, 94.0, 60);
  const auto data = synthesize(model, grid, 0.01, 7);
  const FitResult result = fit(data, LineshapeKind::RelBW, model);
  const std::string report = format_fit_report(result);
  for (const char* key : {"kind = \"relbw\"", "convention = \"polesqrt\"", "status = \"converged\"",
                          "mass = ", "width = ", "chi2_per_dof = ", "[parameters]", "[covariance]",
                          "row_0 = "}) {
    EXPECT_NE(report.find(key), std::string::npos) << key << "\n" << report;
  }
  EXPECT_EQ(format_fit_report(result), report);
}

TEST(TextFiles, CreateParentsAndFailCleanly) {
  const auto dir = scratch_dir("text");
  write_text_file(dir / "a" / "b.txt", "hello\n");
  EXPECT_EQ(read_text_file(dir / "a" / "b.txt"), "hello\n");
  EXPECT_THROW(read_text_file(dir / "nope.txt"), IoError);
  // a regular file where a directory is needed
  EXPECT_THROW(write_text_file(dir / "a" / "b.txt" / "c.txt", "x"), IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace resonance
