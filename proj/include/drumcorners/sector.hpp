#pragma once

#include "drumcorners/geometry.hpp"
#include "drumcorners/specfun.hpp"

namespace drumcorners {

/// Polar point in a sector, 0 <= phi <= gamma.
struct SectorPoint {
  double r = 1.0;
  double phi = 0.0;

  Point cartesian() const;
};

/// The brace of the sector Green's function multiplied by e^{-pi mu}, split into the free
/// term cosh((pi - |phi - phi0|) mu) e^{-pi mu} and the boundary-induced remainder.
struct SectorBrace {
  double gamma;
  double phi, phi0;
  BoundaryCondition bc;

  double free_scaled(double mu) const;
  double regular_scaled(double mu) const;
  /// Unscaled brace as printed (for moderate mu only; used in identity checks).
  double full(double mu) const;
  /// Exponential decay rate of regular_scaled in mu.
  double decay_rate() const;
};

/// Angular part of the Dirichlet ansatz, sinh(mu phi_<) sinh(mu (gamma - phi_>)) / (mu sinh(gamma mu)).
double dirichlet_angular(double mu, double gamma, double phi, double phi0);

struct SectorGreenResult {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Green's function of Delta + s on the infinite sector. The free term is evaluated through
/// the closed form (1/2 pi) K_0(sqrt(s) |z - z0|); the remaining brace terms by KL quadrature,
/// with a principal value at mu = alpha/beta for Robin.
/// Throws DiagonalSingularity, DivergentConfiguration, ToleranceNotMet, PointOutsideDomain,
/// UnsupportedBC (Robin with alpha/beta < 0).
SectorGreenResult green_sector(double s, const Sector& sector, SectorPoint p, SectorPoint p0,
                               const QuadratureBudget& budget = {});

/// Only the boundary-induced part (no free term); finite on the diagonal.
SectorGreenResult green_sector_regular(double s, const Sector& sector, SectorPoint p, SectorPoint p0,
                                       const QuadratureBudget& budget = {});

struct SectorHeatResult {
  double value = 0.0;
  double free_part = 0.0;
  double regular_stehfest = 0.0;
  double regular_gwr = 0.0;
  double disagreement = 0.0;  // |stehfest - gwr| / (|free| + |regular|)
};

struct SectorHeatOptions {
  int stehfest_n = 16;
  int gwr_m = 8;
  double agreement_tol = 1e-3;
};

/// Heat kernel on the sector: free kernel exactly plus the inverse Laplace transform of the
/// regular Green's part (Gaver-Stehfest value, Gaver-Wynn-rho cross-check).
/// Throws UnstableResult when the two inversions disagree beyond agreement_tol.
SectorHeatResult heat_sector(double t, const Sector& sector, SectorPoint p, SectorPoint p0,
                             const QuadratureBudget& budget = {}, const SectorHeatOptions& opts = {});

}  // namespace drumcorners
