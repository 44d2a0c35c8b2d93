#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "drumcorners/geometry.hpp"
#include "drumcorners/spectrum.hpp"

namespace drumcorners {

/// Short-time heat trace  c_m1 / t + c_mhalf / sqrt(t) + c_0 + O(sqrt t).
struct TraceExpansion {
  double c_m1 = 0.0;
  double c_mhalf = 0.0;
  double c_0 = 0.0;
  double remainder_order = 0.5;

  double evaluate(double t) const { return c_m1 / t + c_mhalf / std::sqrt(t) + c_0; }
};

/// (pi - theta)^2 / (24 pi theta), the constant-term contribution of a corner of angle theta.
/// Throws AngleOutOfRange unless 0 < theta < 2 pi.
double corner_defect(double theta);
/// The same quantity in its unsimplified form -1/12 + (pi^2 + theta^2) / (24 pi theta).
double corner_defect_expanded(double theta);

/// Throws NotSimplyConnected (euler_char != 1).
TraceExpansion polygon_trace_coeffs(const Polygon& poly, const BoundaryCondition& bc);
TraceExpansion smooth_trace_coeffs(const SmoothDomain& dom, const BoundaryCondition& bc);
/// Dispatch over Polygon/SmoothDomain; other domain kinds throw ValidationError.
TraceExpansion trace_coeffs(const Domain& dom, const BoundaryCondition& bc);

struct TraceValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Sum of e^{-lambda t} with a Weyl-type estimate of the omitted eigenvalues above the
/// cutoff. Throws NonPositiveTime, TailTooLarge (tail above abs_tol).
TraceValue heat_trace_from_spectrum(const Spectrum& spec, double t, double abs_tol = 1e-6);

// ---------------------------------------------------------------------------
// Fitting and classification.

struct KnownGeometry {
  double area = 0.0;
  double perimeter = 0.0;
  int euler_char = 1;
  BoundaryCondition bc = BoundaryCondition::dirichlet();
};

struct TraceFit {
  TraceExpansion expansion;
  double c_half = 0.0;   // fitted coefficient of sqrt(t)
  double c0_stderr = 0.0;
  double c0_systematic = 0.0;  // spread of c_0 over window/basis variants
  double condition = 0.0;
  bool pinned = false;
  std::vector<double> t_grid;
  std::vector<double> trace;
  std::vector<double> fitted;
  std::vector<double> residuals;
};

/// Least squares of the trace on {1/t, 1/sqrt t, 1, sqrt t}. With `known`, the first two
/// coefficients are pinned to area/(4 pi) and -+perimeter/(8 sqrt pi) and only (c_0, c_half)
/// are fitted. Throws IllConditionedFit, TailTooLarge, FitFailure (fewer points than unknowns).
TraceFit fit_trace_expansion(const Spectrum& spec, const std::vector<double>& t_grid,
                             const std::optional<KnownGeometry>& known = std::nullopt, double tail_tol = 1e-6);
/// The same fit on already-computed trace values.
TraceFit fit_trace_values(const std::vector<double>& t_grid, const std::vector<double>& trace,
                          const std::optional<KnownGeometry>& known = std::nullopt);

enum class CornerVerdict { Polygonal, Smooth, Inconclusive };
std::string to_string(CornerVerdict v);

struct CornerClassification {
  CornerVerdict verdict = CornerVerdict::Inconclusive;
  double excess = 0.0;  // fitted c_0 minus the smooth-domain constant term
  double ci = 0.0;      // uncertainty of the excess
  std::optional<TraceFit> fit;
  std::string note;
};

/// Polygonal if excess > 3 ci, Smooth if |excess| < ci, else Inconclusive. A spectrum too
/// short for the grid yields Inconclusive instead of an error.
CornerClassification classify_corners(const Spectrum& spec, const KnownGeometry& known, const std::vector<double>& t_grid);

/// n points geometrically spaced in [t_min, t_max].
std::vector<double> geometric_grid(double t_min, double t_max, int n);

}  // namespace drumcorners
