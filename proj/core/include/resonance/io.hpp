#pragma once

// Flat-file formats. All floats are written with 17 significant digits in the
// C locale, so identical inputs give byte-identical files.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "resonance/lineshape.hpp"
#include "resonance/survival.hpp"

namespace resonance {

/// Shortest-form-free, locale-independent "%.17g" equivalent.
std::string format_double(double value);
/// Strict parse of a whole token; throws ValidationError on trailing junk.
double parse_double(std::string_view text);

/// Named columns of doubles, written as CSV with a header row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// CSV with header `x,sigma,sigma_err`. Blank lines and lines starting with
/// '#' are skipped. Malformed rows raise ValidationError naming the line;
/// an unreadable file raises IoError.
CrossSectionDataset load_dataset(const std::filesystem::path& path);
CrossSectionDataset parse_dataset(std::string_view text);
std::string format_dataset(const CrossSectionDataset& data);
void save_dataset(const CrossSectionDataset& data, const std::filesystem::path& path);

/// CSV with header `t,survival,exponential,ratio`.
std::string format_curve(std::span<const DeviationRow> rows);
void save_curve(std::span<const DeviationRow> rows, const std::filesystem::path& path);

std::string format_table(const Table& table);
void save_table(const Table& table, const std::filesystem::path& path);

/// Key/value report with the fitted model, chi2/dof, parameter errors and
/// covariance rows.
std::string format_fit_report(const FitResult& result);
void save_fit_report(const FitResult& result, const std::filesystem::path& path);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view content);
/// Throws IoError.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace resonance
