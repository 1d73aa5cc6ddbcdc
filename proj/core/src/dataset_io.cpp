#include "resonance/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "resonance/errors.hpp"

namespace resonance {

namespace {

constexpr std::string_view kDatasetHeader = "x,sigma,sigma_err";
constexpr std::string_view kCurveHeader = "t,survival,exponential,ratio";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::string join_csv(std::span<const double> values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) line += ',';
    line += format_double(values[i]);
  }
  return line;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ValidationError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

CrossSectionDataset parse_dataset(std::string_view text) {
  std::vector<DataPoint> points;
  bool seen_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!seen_header) {
      if (line != kDatasetHeader) {
        throw ValidationError(where + "expected header '" + std::string(kDatasetHeader) + "'");
      }
      seen_header = true;
      continue;
    }
    const auto fields = split_commas(line);
    if (fields.size() != 3) {
      throw ValidationError(where + "expected 3 columns, got " + std::to_string(fields.size()));
    }
    DataPoint p;
    try {
      p = {parse_double(fields[0]), parse_double(fields[1]), parse_double(fields[2])};
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
    if (!points.empty() && !(p.x > points.back().x)) {
      throw ValidationError(where + "x must be strictly increasing");
    }
    if (!(p.sigma_err > 0.0)) throw ValidationError(where + "sigma_err must be > 0");
    if (p.sigma < 0.0) throw ValidationError(where + "sigma must be >= 0");
    points.push_back(p);
  }
  if (!seen_header) throw ValidationError("dataset has no header row");
  return CrossSectionDataset(std::move(points));
}

CrossSectionDataset load_dataset(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_dataset(text);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string format_dataset(const CrossSectionDataset& data) {
  std::string out(kDatasetHeader);
  out += '\n';
  for (const DataPoint& p : data.points()) {
    const double values[] = {p.x, p.sigma, p.sigma_err};
    out += join_csv(values);
    out += '\n';
  }
  return out;
}

void save_dataset(const CrossSectionDataset& data, const std::filesystem::path& path) {
  write_text_file(path, format_dataset(data));
}

std::string format_curve(std::span<const DeviationRow> rows) {
  std::string out(kCurveHeader);
  out += '\n';
  for (const DeviationRow& r : rows) {
    const double values[] = {r.t, r.survival, r.exponential, r.ratio};
    out += join_csv(values);
    out += '\n';
  }
  return out;
}

void save_curve(std::span<const DeviationRow> rows, const std::filesystem::path& path) {
  write_text_file(path, format_curve(rows));
}

std::string format_table(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw ValidationError("table row width does not match header");
    }
    out += join_csv(row);
    out += '\n';
  }
  return out;
}

void save_table(const Table& table, const std::filesystem::path& path) {
  write_text_file(path, format_table(table));
}

std::string format_fit_report(const FitResult& result) {
  const LineshapeModel& m = result.model;
  std::ostringstream out;
  out << "# lineshape fit report\n";
  out << "kind = \"" << label(m.kind) << "\"\n";
  if (const auto* params = std::get_if<ResonanceParams>(&m.resonance)) {
    out << "convention = \"" << label(params->convention) << "\"\n";
  } else {
    out << "convention = \"nonrel\"\n";
  }
  if (m.channel_label) out << "channel = \"" << *m.channel_label << "\"\n";
  out << "status = \"" << label(result.status) << "\"\n";
  out << "converged = " << (result.converged ? "true" : "false") << "\n";
  out << "iterations = " << result.iterations << "\n";
  out << "mass = " << format_double(m.mass()) << "\n";
  out << "width = " << format_double(m.width()) << "\n";
  out << "residue_re = " << format_double(m.residue.real()) << "\n";
  out << "residue_im = " << format_double(m.residue.imag()) << "\n";
  out << "background = [";
  for (std::size_t i = 0; i < m.background.size(); ++i) {
    out << (i > 0 ? ", " : "") << format_double(m.background[i]);
  }
  out << "]\n";
  out << "chi2 = " << format_double(result.chi2) << "\n";
  out << "dof = " << result.dof << "\n";
  out << "chi2_per_dof = " << format_double(result.chi2_per_dof()) << "\n";

  const auto errors = result.standard_errors();
  out << "\n[parameters]\n";
  for (std::size_t i = 0; i < result.parameter_names.size(); ++i) {
    out << result.parameter_names[i] << " = " << format_double(result.parameters[i]);
    if (i < errors.size()) out << "  # +/- " << format_double(errors[i]);
    out << "\n";
  }
  out << "\n[covariance]\n";
  out << "order = [";
  for (std::size_t i = 0; i < result.parameter_names.size(); ++i) {
    out << (i > 0 ? ", " : "") << '"' << result.parameter_names[i] << '"';
  }
  out << "]\n";
  for (Eigen::Index r = 0; r < result.covariance.rows(); ++r) {
    out << "row_" << r << " = [";
    for (Eigen::Index c = 0; c < result.covariance.cols(); ++c) {
      out << (c > 0 ? ", " : "") << format_double(result.covariance(r, c));
    }
    out << "]\n";
  }
  return out.str();
}

void save_fit_report(const FitResult& result, const std::filesystem::path& path) {
  write_text_file(path, format_fit_report(result));
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(path.string() + ": cannot create directory: " + ec.message());
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(path.string() + ": cannot open for writing");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.flush();
  if (!file) throw IoError(path.string() + ": write failed");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError(path.string() + ": cannot open for reading");
  std::ostringstream buf;
  buf << file.rdbuf();
  if (file.bad()) throw IoError(path.string() + ": read failed");
  return buf.str();
}

}  // namespace resonance
