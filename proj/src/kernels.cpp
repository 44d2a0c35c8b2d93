#include "drumcorners/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "drumcorners/eigensolve.hpp"
#include "drumcorners/errors.hpp"
#include "drumcorners/kernels_1d.hpp"
#include "drumcorners/specfun.hpp"

namespace drumcorners {

namespace {

constexpr double kPi = std::numbers::pi;

void check_time(double t) {
  if (!(t > 0)) fail(ErrorKind::NonPositiveTime, "heat kernels need t > 0");
}

double erfcx_d(double x) { return erfcx(x); }

// Robin wavenumbers are reused across many kernel evaluations on the same interval.
const std::vector<double>& cached_robin_roots(double L, double c, std::size_t count) {
  static std::mutex mtx;
  static std::map<std::pair<double, double>, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& roots = cache[{L, c}];
  if (roots.size() < count) roots = robin_interval_wavenumbers(L, c, count);
  return roots;
}

// Interval [0, L] kernel with enough modes that the dropped tail is below abs_tol/scale.
double interval_eigen(double t, double x, double xp, double L, const BoundaryCondition& bc, double abs_tol,
                      double scale) {
  // Tail of sum_{j > J} (2/L) e^{-(j pi/L)^2 t} <= (2/L) e^{-E} L / (2 pi sqrt(E t)) with E = (J pi/L)^2 t.
  double E = 40.0;
  while ((1.0 / (kPi * std::sqrt(E * t))) * std::exp(-E) * scale > abs_tol && E < 800.0) E += 5.0;
  const double jmax = L / kPi * std::sqrt(E / t);
  if (jmax > 2e6) fail(ErrorKind::ToleranceNotMet, "rectangle eigen-sum needs too many modes at this t");
  const int n = static_cast<int>(std::ceil(jmax)) + 1;
  if (bc.kind() == BCKind::Robin && !bc.acts_as_neumann()) {
    const auto& all = cached_robin_roots(L, bc.robin_coefficient(), static_cast<std::size_t>(n));
    const std::vector<double> roots(all.begin(), all.begin() + n);
    return oned::interval_kernel<double>(t, x, xp, L, bc, n, roots);
  }
  return oned::interval_kernel<double>(t, x, xp, L, bc, n, {});
}

double interval_images(double t, double x, double xp, double L, bool dirichlet) {
  const int n = static_cast<int>(std::ceil(std::sqrt(160.0 * t) / (2 * L))) + 2;
  double s = 0.0;
  for (int k = -n; k <= n; ++k) {
    const double shift = 2.0 * k * L;
    const double direct = oned::free_kernel(t, x, xp + shift);
    const double image = oned::free_kernel(t, x, -xp + shift);
    s += dirichlet ? direct - image : direct + image;
  }
  return s;
}

void check_rectangle_point(Point z, double a, double b) {
  const double eps = 1e-12 * std::max(a, b);
  if (z.x < -eps || z.x > a + eps || z.y < -eps || z.y > b + eps)
    fail(ErrorKind::PointOutsideDomain, "point outside the rectangle");
}

}  // namespace

double heat_plane(double t, Point z, Point zp) {
  check_time(t);
  const Point d = z - zp;
  return std::exp(-dot(d, d) / (4 * t)) / (4 * kPi * t);
}

double heat_halfplane(double t, Point z, Point zp, const BoundaryCondition& bc) {
  check_time(t);
  if (z.y < 0 || zp.y < 0) fail(ErrorKind::PointOutsideDomain, "half-plane points need y >= 0");
  const double gx = oned::free_kernel(t, z.x, zp.x);
  return gx * oned::halfline_kernel(t, z.y, zp.y, bc, erfcx_d);
}

double heat_quarterplane(double t, Point z, Point zp, const BoundaryCondition& bc_x, const BoundaryCondition& bc_y) {
  check_time(t);
  if ((bc_x.kind() == BCKind::Robin && !bc_x.acts_as_neumann()) ||
      (bc_y.kind() == BCKind::Robin && !bc_y.acts_as_neumann()))
    fail(ErrorKind::UnsupportedBC, "quarter-plane kernel is only separable for Dirichlet/Neumann");
  if (z.x < 0 || z.y < 0 || zp.x < 0 || zp.y < 0) fail(ErrorKind::PointOutsideDomain, "quarter-plane points need x, y >= 0");
  return oned::halfline_kernel(t, z.x, zp.x, bc_x, erfcx_d) * oned::halfline_kernel(t, z.y, zp.y, bc_y, erfcx_d);
}

double heat_rectangle(double t, Point z, Point zp, double a, double b, const BoundaryCondition& bc, double abs_tol) {
  check_time(t);
  if (!(a > 0 && b > 0)) fail(ErrorKind::InvalidDimensions, "rectangle sides must be positive");
  if (bc.kind() == BCKind::Robin && bc.robin_coefficient() < 0)
    fail(ErrorKind::UnsupportedBC, "rectangle Robin kernel needs alpha/beta >= 0");
  check_rectangle_point(z, a, b);
  check_rectangle_point(zp, a, b);
  // Each factor is bounded by roughly 1/sqrt(pi t) + 1/L; use that to scale the per-axis tail.
  const double sx = 1.0 / std::sqrt(kPi * t) + 1.0 / a, sy = 1.0 / std::sqrt(kPi * t) + 1.0 / b;
  return interval_eigen(t, z.x, zp.x, a, bc, abs_tol, sy) * interval_eigen(t, z.y, zp.y, b, bc, abs_tol, sx);
}

double heat_rectangle_images(double t, Point z, Point zp, double a, double b, const BoundaryCondition& bc) {
  check_time(t);
  if (bc.kind() == BCKind::Robin && !bc.acts_as_neumann())
    fail(ErrorKind::UnsupportedBC, "image sums are only available for Dirichlet/Neumann");
  const bool d = bc.kind() == BCKind::Dirichlet;
  return interval_images(t, z.x, zp.x, a, d) * interval_images(t, z.y, zp.y, b, d);
}

KernelEvaluator plane_kernel() {
  return KernelEvaluator("plane", BoundaryCondition::neumann(), [](double t, Point z, Point zp) { return heat_plane(t, z, zp); });
}

KernelEvaluator halfplane_kernel(const BoundaryCondition& bc) {
  return KernelEvaluator("halfplane", bc, [bc](double t, Point z, Point zp) { return heat_halfplane(t, z, zp, bc); });
}

KernelEvaluator quarterplane_kernel(const BoundaryCondition& bc_x, const BoundaryCondition& bc_y) {
  return KernelEvaluator("quarterplane", bc_x, [bc_x, bc_y](double t, Point z, Point zp) {
    return heat_quarterplane(t, z, zp, bc_x, bc_y);
  });
}

KernelEvaluator rectangle_kernel(double a, double b, const BoundaryCondition& bc) {
  return KernelEvaluator("rectangle", bc, [a, b, bc](double t, Point z, Point zp) { return heat_rectangle(t, z, zp, a, b, bc); });
}

// ---------------------------------------------------------------------------
// Duhamel series.

namespace {

// Four-point Lagrange interpolation on a uniform grid 0..n-1 (coordinate in grid units).
double lagrange4(const std::vector<double>& v, double u) {
  const int n = static_cast<int>(v.size());
  if (u <= 0) return v.front();
  if (u >= n - 1) return v.back();
  int i0 = static_cast<int>(std::floor(u)) - 1;
  i0 = std::clamp(i0, 0, n - 4);
  const double x = u - i0;
  const double l0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
  const double l1 = x * (x - 2) * (x - 3) / 2.0;
  const double l2 = -x * (x - 1) * (x - 3) / 2.0;
  const double l3 = x * (x - 1) * (x - 2) / 6.0;
  return l0 * v[i0] + l1 * v[i0 + 1] + l2 * v[i0 + 2] + l3 * v[i0 + 3];
}

struct BoundaryGrid {
  double center = 0.0, scale = 1.0, stretch = 1.0;
  int n = 0;
  // Boundary parameter sigma = center + scale * sinh(stretch * u), u uniform on [-1, 1].
  double sigma(int i) const { return center + scale * std::sinh(stretch * (-1.0 + 2.0 * i / (n - 1))); }
  double grid_coord(double sigma) const {
    const double u = std::asinh((sigma - center) / scale) / stretch;
    return (u + 1.0) * 0.5 * (n - 1);
  }
  double lo() const { return sigma(0); }
  double hi() const { return sigma(n - 1); }
};

}  // namespace

RobinSeriesResult robin_from_neumann(const KernelEvaluator& hn, double c, const BoundaryLine& line, double t, Point x,
                                     Point y, int M, const RobinSeriesOptions& o) {
  check_time(t);
  if (M < 1) fail(ErrorKind::ValidationError, "the Duhamel series needs M >= 1");
  RobinSeriesResult res;
  const double k0 = hn(t, x, y);
  res.terms.assign(M + 1, 0.0);
  res.term_magnitudes.assign(M + 1, 0.0);
  res.terms[0] = k0;
  res.value = k0;
  if (c == 0.0) return res;

  const Point tan = (1.0 / norm(line.tangent)) * line.tangent;
  const Point nrm{-tan.y, tan.x};
  auto along = [&](Point p) { return dot(p - line.origin, tan); };
  auto on_line = [&](double s) { return line.origin + s * tan; };
  if (std::abs(dot(x - line.origin, nrm)) < 1e-9 || std::abs(dot(y - line.origin, nrm)) < 1e-9)
    fail(ErrorKind::QuadratureFailure, "Duhamel series points must lie off the boundary");

  const double sx = along(x), sy = along(y);
  const double width = 1.5 * std::sqrt(o.gaussian_c2 * t * std::log(1.0 / o.tol));
  BoundaryGrid grid;
  grid.n = o.boundary_nodes;
  grid.center = 0.5 * (sx + sy);
  const double half = 0.5 * std::abs(sx - sy) + width;
  grid.scale = std::sqrt(t);
  grid.stretch = std::asinh(half / grid.scale);

  const int nt = o.time_nodes;
  const double qt = std::sqrt(t);
  std::vector<double> tau(nt + 1);
  for (int k = 0; k <= nt; ++k) tau[k] = t * (double(k) / nt) * (double(k) / nt);

  const GaussRule& gth = gauss_legendre(o.angle_nodes);
  const GaussRule& gw = gauss_legendre(o.spatial_nodes);
  constexpr double kSpread = 6.0;  // Gaussian half-width in units of sqrt(4 s)

  // f[k][i] = k_m(tau_k, z_i, y) on the boundary grid; level 0 is evaluated exactly.
  std::vector<std::vector<double>> prev;
  auto level_value = [&](int level, double tau_p, double w, const std::vector<double>& slice) {
    if (level == 0) return hn(tau_p, on_line(w), y);
    if (w <= grid.lo() || w >= grid.hi()) return 0.0;
    return lagrange4(slice, grid.grid_coord(w));
  };
  // Time slice of the previous level at tau' by interpolation in sqrt(tau).
  auto slice_at = [&](double tau_p, std::vector<double>& out) {
    const double u = std::sqrt(tau_p) / qt * nt;
    std::vector<double> col(nt + 1);
    for (int i = 0; i < grid.n; ++i) {
      for (int k = 0; k <= nt; ++k) col[k] = prev[k][i];
      out[i] = lagrange4(col, u);
    }
  };
  // -c Int_0^T ds Int dw H_N(s, p, w) k_{m-1}(T - s, w, y), with s = T sin^2(theta), for a set
  // of target points sharing T (the time slices of the previous level are shared).
  std::vector<double> slice(grid.n);
  auto duhamel = [&](int level, double T, const std::vector<Point>& targets, const std::vector<double>& sp) {
    std::vector<double> total(targets.size(), 0.0);
    if (T <= 0) return total;
    for (std::size_t j = 0; j < gth.nodes.size(); ++j) {
      const double th = 0.25 * kPi * (gth.nodes[j] + 1.0);
      const double st = std::sin(th), ct = std::cos(th);
      const double s = T * st * st, tau_p = T * ct * ct;
      if (level > 0) slice_at(tau_p, slice);
      // The product of H_N(s, p, .) and k_{m-1}(tau', ., y) is negligible outside the overlap
      // of their Gaussian windows; integrating over the overlap resolves whichever is narrower.
      const double hw = kSpread * std::sqrt(4 * s);
      const double fw = (kSpread + 1.0) * std::sqrt(4 * tau_p);
      const double wj = gth.weights[j] * 2.0 * T * st * ct;
      for (std::size_t p = 0; p < targets.size(); ++p) {
        const double lo = std::max(sp[p] - hw, sy - fw), hi = std::min(sp[p] + hw, sy + fw);
        if (hi <= lo) continue;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double inner = 0.0;
        for (std::size_t q = 0; q < gw.nodes.size(); ++q) {
          const double w = mid + half * gw.nodes[q];
          inner += gw.weights[q] * hn(s, targets[p], on_line(w)) * level_value(level, tau_p, w, slice);
        }
        total[p] += wj * half * inner;
      }
    }
    for (double& v : total) v *= -c * 0.25 * kPi;
    return total;
  };

  std::vector<Point> bpts(grid.n);
  std::vector<double> bsig(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    bsig[i] = grid.sigma(i);
    bpts[i] = on_line(bsig[i]);
  }
  double a0 = 0.0;
  for (int k = 1; k <= nt; ++k)
    for (const Point& b : bpts) a0 = std::max(a0, std::abs(hn(tau[k], b, y)));
  res.term_magnitudes[0] = a0;

  for (int m = 1; m <= M; ++m) {
    const int level = m - 1;
    res.terms[m] = duhamel(level, t, {x}, {sx})[0];
    res.value += res.terms[m];
    std::vector<std::vector<double>> next(nt + 1, std::vector<double>(grid.n, 0.0));
    double amax = 0.0;
    for (int k = 1; k <= nt; ++k) {
      next[k] = duhamel(level, tau[k], bpts, bsig);
      for (double v : next[k]) amax = std::max(amax, std::abs(v));
    }
    res.term_magnitudes[m] = amax;
    prev = std::move(next);
  }
  if (M >= 2 && res.term_magnitudes[M] >= res.term_magnitudes[M / 2] && res.term_magnitudes[M] > 0)
    fail(ErrorKind::NonConvergent, "Duhamel series terms are not decaying");
  return res;
}

}  // namespace drumcorners
