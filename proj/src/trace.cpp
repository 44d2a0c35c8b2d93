#include "drumcorners/trace.hpp"

#include <cmath>
#include <numbers>

#include "drumcorners/errors.hpp"

namespace drumcorners {

namespace {

constexpr double kPi = std::numbers::pi;

TraceExpansion expansion(double area, double perimeter, int euler_char, double corners, const BoundaryCondition& bc) {
  TraceExpansion e;
  e.c_m1 = area / (4 * kPi);
  const double edge = perimeter / (8 * std::sqrt(kPi));
  e.c_mhalf = bc.kind() == BCKind::Dirichlet ? -edge : edge;
  e.c_0 = euler_char / 6.0 + corners;
  if (bc.kind() == BCKind::Robin && !bc.acts_as_neumann()) e.c_0 -= perimeter * bc.robin_coefficient() / (2 * kPi);
  return e;
}

}  // namespace

double corner_defect(double theta) {
  if (!(theta > 0 && theta < 2 * kPi)) fail(ErrorKind::AngleOutOfRange, "corner angle must lie in (0, 2 pi)");
  const double d = kPi - theta;
  return d * d / (24 * kPi * theta);
}

double corner_defect_expanded(double theta) {
  if (!(theta > 0 && theta < 2 * kPi)) fail(ErrorKind::AngleOutOfRange, "corner angle must lie in (0, 2 pi)");
  return -1.0 / 12.0 + (kPi * kPi + theta * theta) / (24 * kPi * theta);
}

TraceExpansion polygon_trace_coeffs(const Polygon& poly, const BoundaryCondition& bc) {
  if (poly.euler_char() != 1) fail(ErrorKind::NotSimplyConnected, "only simply connected polygons are supported");
  double corners = 0.0;
  for (double th : poly.angles()) corners += corner_defect(th);
  return expansion(poly.area(), poly.perimeter(), poly.euler_char(), corners, bc);
}

TraceExpansion smooth_trace_coeffs(const SmoothDomain& dom, const BoundaryCondition& bc) {
  return expansion(dom.area(), dom.perimeter(), dom.euler_char(), 0.0, bc);
}

TraceExpansion trace_coeffs(const Domain& dom, const BoundaryCondition& bc) {
  if (const auto* p = std::get_if<Polygon>(&dom)) return polygon_trace_coeffs(*p, bc);
  if (const auto* s = std::get_if<SmoothDomain>(&dom)) return smooth_trace_coeffs(*s, bc);
  fail(ErrorKind::ValidationError, "trace coefficients need a bounded polygon or smooth domain");
}

TraceValue heat_trace_from_spectrum(const Spectrum& spec, double t, double abs_tol) {
  if (!(t > 0)) fail(ErrorKind::NonPositiveTime, "heat trace needs t > 0");
  TraceValue r;
  long double sum = 0.0L;
  for (auto it = spec.eigenvalues.rbegin(); it != spec.eigenvalues.rend(); ++it) sum += std::exp(-*it * t);
  r.value = static_cast<double>(sum);
  if (spec.cutoff > 0 && !spec.empty()) {
    // Weyl-type density estimate N(Lambda)/Lambda, with margin for the boundary term.
    const double density = 1.5 * static_cast<double>(spec.size()) / spec.cutoff;
    r.tail_bound = density * std::exp(-spec.cutoff * t) / t;
  }
  if (r.tail_bound > abs_tol) fail(ErrorKind::TailTooLarge, "spectrum cutoff too low for this t");
  return r;
}

std::vector<double> geometric_grid(double t_min, double t_max, int n) {
  if (!(t_min > 0 && t_max > t_min) || n < 2) fail(ErrorKind::ValidationError, "invalid time grid");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = t_min * std::pow(t_max / t_min, double(i) / (n - 1));
  return g;
}

}  // namespace drumcorners
