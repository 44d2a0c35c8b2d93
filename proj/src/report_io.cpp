#include "drumcorners/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "drumcorners/errors.hpp"

namespace drumcorners {

namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + number(row[i]);
    out += "\n";
  }
  return out;
}

std::string emit_plot_data(const LocalityReport& r) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.t_grid.size(); ++i)
    rows.push_back({r.t_grid[i], r.sup_diff[i], r.log_sup_diff[i], i < r.model_fit.size() ? r.model_fit[i] : NAN});
  return csv_text({"t", "sup_diff", "log_sup_diff", "model_fit"}, rows);
}

std::string emit_plot_data(const TraceFit& f) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < f.t_grid.size(); ++i) rows.push_back({f.t_grid[i], f.trace[i], f.fitted[i], f.residuals[i]});
  return csv_text({"t", "trace", "fitted", "residual"}, rows);
}

std::string emit_plot_data(const Spectrum& s) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < s.size(); ++i) rows.push_back({double(i + 1), s.eigenvalues[i]});
  return csv_text({"index", "eigenvalue"}, rows);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  if (ec) fail(ErrorKind::IoError, "cannot create directory " + parent.string() + ": " + ec.message());
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::IoError, "cannot open " + path + " for writing");
  os << text;
  if (!os) fail(ErrorKind::IoError, "write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Spectrum read_spectrum_csv(const std::string& path) {
  std::istringstream is(read_text_file(path));
  std::vector<double> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find_last_of(',');
    const std::string field = comma == std::string::npos ? line : line.substr(comma + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(field, &used);
      vals.push_back(v);
    } catch (const std::exception&) {
      if (lineno == 1) continue;  // header
      fail(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  if (vals.empty()) fail(ErrorKind::ValidationError, path + " holds no eigenvalues");
  return make_spectrum(std::move(vals), SpectrumSource::External);
}

}  // namespace drumcorners
