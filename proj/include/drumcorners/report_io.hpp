#pragma once

#include <string>
#include <vector>

#include "drumcorners/locality.hpp"
#include "drumcorners/spectrum.hpp"
#include "drumcorners/trace.hpp"

namespace drumcorners {

/// Flat CSV: header line plus one line per row; numbers use 17 significant digits.
std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Columns t, sup_diff, log_sup_diff, model_fit.
std::string emit_plot_data(const LocalityReport& report);
/// Columns t, trace, fitted, residual.
std::string emit_plot_data(const TraceFit& fit);
/// Columns index, eigenvalue.
std::string emit_plot_data(const Spectrum& spec);

/// Creates parent directories as needed. Throws IoError.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// Reads a one-column (or index,eigenvalue) CSV of eigenvalues; a header line is skipped.
Spectrum read_spectrum_csv(const std::string& path);

}  // namespace drumcorners
