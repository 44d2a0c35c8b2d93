#pragma once

// One-dimensional heat kernels templated on the scalar type, so the same formulas can run in
// double or in multiprecision (locality studies need differences far below double roundoff).

#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "drumcorners/geometry.hpp"

namespace drumcorners::oned {

template <class Real>
Real pi_v() {
  return boost::math::constants::pi<Real>();
}

/// (4 pi t)^{-1/2} e^{-(x - x')^2 / 4t}
template <class Real>
Real free_kernel(const Real& t, const Real& x, const Real& xp) {
  using std::exp;
  using std::sqrt;
  const Real d = x - xp;
  return exp(-d * d / (4 * t)) / sqrt(4 * pi_v<Real>() * t);
}

/// Robin part of the half-line kernel on x >= 0 (outward normal -x):
/// -c e^{c(x+x') + c^2 t} erfc((x+x')/sqrt(4t) + c sqrt(t)), written as
/// -c e^{-(x+x')^2/4t} erfcx((x+x')/sqrt(4t) + c sqrt(t)) to avoid overflow.
template <class Real, class Erfcx>
Real halfline_robin_part(const Real& t, const Real& x, const Real& xp, const Real& c, Erfcx erfcx_fn) {
  using std::exp;
  using std::sqrt;
  const Real sum = x + xp;
  const Real arg = sum / sqrt(4 * t) + c * sqrt(t);
  return -c * exp(-sum * sum / (4 * t)) * erfcx_fn(arg);
}

/// Half-line x >= 0 kernel; Dirichlet/Neumann by images, Robin adds the erfc correction.
template <class Real, class Erfcx>
Real halfline_kernel(const Real& t, const Real& x, const Real& xp, const BoundaryCondition& bc, Erfcx erfcx_fn) {
  const Real direct = free_kernel(t, x, xp);
  const Real image = free_kernel(t, x, Real(-xp));
  if (bc.kind() == BCKind::Dirichlet) return direct - image;
  if (bc.acts_as_neumann()) return direct + image;
  return direct + image + halfline_robin_part(t, x, xp, Real(bc.robin_coefficient()), erfcx_fn);
}

// ---------------------------------------------------------------------------
// Interval [0, L] with the same condition at both ends.

/// Characteristic function of the Robin interval problem with u = cos kx + (c/k) sin kx:
/// f(k) = (k^2 - c^2) sin kL - 2 c k cos kL; its j-th positive root lies in (j pi/L, (j+1) pi/L).
template <class Real>
Real robin_characteristic(const Real& k, const Real& L, const Real& c) {
  using std::cos;
  using std::sin;
  return (k * k - c * c) * sin(k * L) - 2 * c * k * cos(k * L);
}

template <class Real>
Real robin_characteristic_derivative(const Real& k, const Real& L, const Real& c) {
  using std::cos;
  using std::sin;
  const Real s = sin(k * L), co = cos(k * L);
  return 2 * k * s + (k * k - c * c) * L * co - 2 * c * co + 2 * c * k * L * s;
}

/// Newton polish of a bracketed root (starting from a double-precision estimate).
template <class Real>
Real polish_robin_root(Real k, const Real& L, const Real& c, int iterations = 8) {
  for (int i = 0; i < iterations; ++i) k -= robin_characteristic(k, L, c) / robin_characteristic_derivative(k, L, c);
  return k;
}

/// Squared L2 norm of cos kx + q sin kx on [0, L], q = c/k.
template <class Real>
Real robin_mode_norm2(const Real& k, const Real& L, const Real& c) {
  using std::cos;
  using std::sin;
  const Real q = c / k;
  return L / 2 * (1 + q * q) + (1 - q * q) * sin(2 * k * L) / (4 * k) + q * (1 - cos(2 * k * L)) / (2 * k);
}

/// Eigen-expansion of the interval kernel. `robin_roots` are the wavenumbers k_j for the Robin
/// case (ignored for Dirichlet/Neumann); `n_modes` bounds the sum for D/N.
template <class Real>
Real interval_kernel(const Real& t, const Real& x, const Real& xp, const Real& L, const BoundaryCondition& bc,
                     int n_modes, const std::vector<Real>& robin_roots) {
  using std::cos;
  using std::exp;
  using std::sin;
  const Real pi = pi_v<Real>();
  Real sum = 0;
  if (bc.kind() == BCKind::Dirichlet) {
    for (int j = 1; j <= n_modes; ++j) {
      const Real k = j * pi / L;
      sum += exp(-k * k * t) * sin(k * x) * sin(k * xp);
    }
    return 2 * sum / L;
  }
  if (bc.acts_as_neumann()) {
    for (int j = 1; j <= n_modes; ++j) {
      const Real k = j * pi / L;
      sum += exp(-k * k * t) * cos(k * x) * cos(k * xp);
    }
    return (1 + 2 * sum) / L;
  }
  const Real c = bc.robin_coefficient();
  for (const Real& k : robin_roots) {
    const Real ux = cos(k * x) + c / k * sin(k * x);
    const Real uxp = cos(k * xp) + c / k * sin(k * xp);
    sum += exp(-k * k * t) * ux * uxp / robin_mode_norm2(k, L, c);
  }
  return sum;
}

}  // namespace drumcorners::oned
