#include "drumcorners/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "drumcorners/errors.hpp"

namespace drumcorners {

std::string to_string(SpectrumSource s) {
  switch (s) {
    case SpectrumSource::ClosedForm: return "closed_form";
    case SpectrumSource::RootFinding: return "root_finding";
    case SpectrumSource::FEM: return "fem";
    case SpectrumSource::External: return "external";
  }
  return "unknown";
}

Spectrum make_spectrum(std::vector<double> ev, SpectrumSource source, double cutoff) {
  std::sort(ev.begin(), ev.end());
  for (double& v : ev) {
    if (!std::isfinite(v)) fail(ErrorKind::ValidationError, "non-finite eigenvalue");
    if (v < 0) {
      if (v < -1e-8 * std::max(1.0, ev.empty() ? 1.0 : std::abs(ev.back())))
        fail(ErrorKind::ValidationError, "negative eigenvalue in spectrum");
      v = 0.0;
    }
  }
  Spectrum s;
  s.cutoff = cutoff >= 0 ? cutoff : (ev.empty() ? 0.0 : ev.back());
  s.eigenvalues = std::move(ev);
  s.source = source;
  return s;
}

Spectrum take_first(std::vector<double> ev, std::size_t count, SpectrumSource source) {
  std::sort(ev.begin(), ev.end());
  if (ev.size() <= count) return make_spectrum(std::move(ev), source);
  const double next = ev[count];
  ev.resize(count);
  // Drop a partially included cluster so that the cutoff statement stays true.
  double cutoff = ev.back();
  if (next - cutoff <= 1e-12 * std::max(1.0, next)) {
    while (!ev.empty() && next - ev.back() <= 1e-12 * std::max(1.0, next)) ev.pop_back();
    cutoff = ev.empty() ? 0.0 : ev.back();
  }
  return make_spectrum(std::move(ev), source, cutoff);
}

}  // namespace drumcorners
