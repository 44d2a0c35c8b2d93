#pragma once

#include <string>
#include <vector>

namespace drumcorners {

enum class SpectrumSource { ClosedForm, RootFinding, FEM, External };

std::string to_string(SpectrumSource s);

/// Sorted non-negative eigenvalues; every eigenvalue <= cutoff is present.
struct Spectrum {
  std::vector<double> eigenvalues;
  double cutoff = 0.0;
  SpectrumSource source = SpectrumSource::External;

  std::size_t size() const { return eigenvalues.size(); }
  bool empty() const { return eigenvalues.empty(); }
};

/// Sorts, validates non-negativity (tiny negative FEM roundoff is clamped) and takes the
/// largest eigenvalue as the cutoff unless one is given.
Spectrum make_spectrum(std::vector<double> eigenvalues, SpectrumSource source, double cutoff = -1.0);

/// Truncates a sorted list to `count` entries and sets the cutoff below any split multiplicity.
Spectrum take_first(std::vector<double> sorted_eigenvalues, std::size_t count, SpectrumSource source);

}  // namespace drumcorners
