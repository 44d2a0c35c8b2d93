#include "drumcorners/locality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include <boost/multiprecision/mpfr.hpp>

#include "drumcorners/eigensolve.hpp"
#include "drumcorners/errors.hpp"
#include "drumcorners/kernels_1d.hpp"

namespace drumcorners {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

enum class AxisModel { Free, HalfLineLeft, HalfLineRight };

struct AxisSpec {
  AxisModel model = AxisModel::Free;
  double wall = 0.0;  // boundary coordinate of a half-line
};

Real erfcx_mp(const Real& z) { return exp(z * z) * boost::multiprecision::erfc(z); }

// Restricts a model constraint dot(w - origin, d) >= 0 to one axis of the rectangle.
void add_constraint(std::array<AxisSpec, 2>& axes, Point origin, Point d) {
  constexpr double eps = 1e-12;
  for (int a = 0; a < 2; ++a) {
    const double along = a == 0 ? d.x : d.y, across = a == 0 ? d.y : d.x;
    if (std::abs(std::abs(along) - 1.0) < eps && std::abs(across) < eps) {
      if (axes[a].model != AxisModel::Free) fail(ErrorKind::KernelUnavailable, "model walls do not separate by axis");
      axes[a].model = along > 0 ? AxisModel::HalfLineLeft : AxisModel::HalfLineRight;
      axes[a].wall = a == 0 ? origin.x : origin.y;
      return;
    }
  }
  fail(ErrorKind::KernelUnavailable, "model boundary is not parallel to the rectangle axes");
}

std::array<AxisSpec, 2> model_axes(const LocalityScenario& sc) {
  std::array<AxisSpec, 2> axes{};
  const Placement& pl = sc.placement;
  auto dir = [&](double ang) { return pl.to_world({std::cos(ang), std::sin(ang)}) - pl.origin; };
  switch (sc.model) {
    case ModelKind::FreePlane: break;
    case ModelKind::HalfPlane: add_constraint(axes, pl.origin, dir(M_PI / 2)); break;
    case ModelKind::Sector:
      if (std::abs(sc.gamma - M_PI) < 1e-12) {
        add_constraint(axes, pl.origin, dir(M_PI / 2));
      } else if (std::abs(sc.gamma - M_PI / 2) < 1e-12) {
        add_constraint(axes, pl.origin, dir(M_PI / 2));
        add_constraint(axes, pl.origin, dir(0.0));
      } else {
        fail(ErrorKind::KernelUnavailable, "only sectors of angle pi/2 or pi factor into 1-D kernels");
      }
      break;
  }
  return axes;
}

// Side lengths of an axis-aligned rectangle with a corner at the origin.
std::array<double, 2> rectangle_sides(const Polygon& poly) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Point& p : poly.vertices()) {
    xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
  }
  const double tol = 1e-12 * std::max(1.0, xmax - xmin + ymax - ymin);
  bool ok = std::abs(xmin) < tol && std::abs(ymin) < tol;
  for (const Point& p : poly.vertices())
    ok = ok && (std::abs(p.x - xmin) < tol || std::abs(p.x - xmax) < tol) &&
         (std::abs(p.y - ymin) < tol || std::abs(p.y - ymax) < tol);
  ok = ok && std::abs(poly.area() - (xmax - xmin) * (ymax - ymin)) < tol;
  if (!ok) fail(ErrorKind::KernelUnavailable, "big domain must be an axis-aligned rectangle with a corner at (0,0)");
  return {xmax, ymax};
}

// Interval [0, L] eigenfunctions sampled at the coordinates, normalized; kernel = sum e^{-k^2 t} u_i u_j.
struct IntervalModes {
  std::vector<Real> k2;
  std::vector<std::vector<Real>> values;  // [mode][coordinate]
};

IntervalModes interval_modes(double L, const BoundaryCondition& bc, const std::vector<double>& coords, double t_min,
                             int digits) {
  const double budget = std::log(10.0) * (digits + 10);
  const int modes = static_cast<int>(std::ceil(L / M_PI * std::sqrt(budget / t_min))) + 2;
  const Real pi = oned::pi_v<Real>(), Lr = L;
  IntervalModes out;
  auto push = [&](const Real& k, const Real& norm2, auto shape) {
    out.k2.push_back(k * k);
    std::vector<Real> v;
    const Real inv = 1 / sqrt(norm2);
    for (double x : coords) v.push_back(shape(Real(x)) * inv);
    out.values.push_back(std::move(v));
  };
  if (bc.kind() == BCKind::Dirichlet) {
    for (int j = 1; j <= modes; ++j) {
      const Real k = j * pi / Lr;
      push(k, Lr / 2, [&](const Real& x) { return sin(k * x); });
    }
  } else if (bc.acts_as_neumann()) {
    push(Real(0), Lr, [](const Real&) { return Real(1); });
    for (int j = 1; j <= modes; ++j) {
      const Real k = j * pi / Lr;
      push(k, Lr / 2, [&](const Real& x) { return cos(k * x); });
    }
  } else {
    const double c = bc.robin_coefficient();
    if (!(c > 0)) fail(ErrorKind::KernelUnavailable, "rectangle Robin kernel needs alpha/beta > 0");
    const Real cr = c;
    for (double k0 : robin_interval_wavenumbers(L, c, static_cast<std::size_t>(modes + 1))) {
      const Real k = oned::polish_robin_root(Real(k0), Lr, cr);
      push(k, oned::robin_mode_norm2(k, Lr, cr), [&](const Real& x) { return cos(k * x) + cr / k * sin(k * x); });
    }
  }
  return out;
}

using Table = std::vector<std::vector<Real>>;

Table interval_table(const IntervalModes& m, double t) {
  const std::size_t n = m.values.front().size();
  Table tab(n, std::vector<Real>(n, Real(0)));
  const Real tr = t;
  for (std::size_t q = 0; q < m.k2.size(); ++q) {
    const Real w = exp(-m.k2[q] * tr);
    const auto& v = m.values[q];
    for (std::size_t i = 0; i < n; ++i) {
      const Real wi = w * v[i];
      for (std::size_t j = i; j < n; ++j) tab[i][j] += wi * v[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) tab[i][j] = tab[j][i];
  return tab;
}

Table model_table(const AxisSpec& ax, const BoundaryCondition& bc, const std::vector<double>& coords, double t) {
  const std::size_t n = coords.size();
  Table tab(n, std::vector<Real>(n));
  const Real tr = t;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Real x = coords[i], y = coords[j], w = ax.wall;
      switch (ax.model) {
        case AxisModel::Free: tab[i][j] = oned::free_kernel(tr, x, y); break;
        case AxisModel::HalfLineLeft: tab[i][j] = oned::halfline_kernel(tr, Real(x - w), Real(y - w), bc, erfcx_mp); break;
        case AxisModel::HalfLineRight: tab[i][j] = oned::halfline_kernel(tr, Real(w - x), Real(w - y), bc, erfcx_mp); break;
      }
    }
  return tab;
}

}  // namespace

std::vector<double> default_locality_grid() {
  std::vector<double> g{2e-3};
  for (int k = 6; k >= 0; --k) g.push_back(2e-2 * std::pow(2.0, -0.5 * k));
  return g;
}

LocalityReport locality_study(const LocalityScenario& sc, const std::vector<double>& t_grid, const LocalityOptions& opts) {
  if (t_grid.empty()) fail(ErrorKind::FitFailure, "empty t grid");
  for (double t : t_grid)
    if (!(t > 0)) fail(ErrorKind::NonPositiveTime, "t must be positive");
  if (opts.sample_density < 2) fail(ErrorKind::ValidationError, "sample density must be at least 2");

  LocalityReport rep;
  rep.sample_density = opts.sample_density;
  rep.match = check_geometric_match(sc);
  if (!rep.match.ok && !opts.skip_match_check)
    fail(ErrorKind::ValidationError, "model does not match the big domain near omega0: " + rep.match.reason);

  const auto sides = rectangle_sides(sc.big_domain);
  const auto axes = model_axes(sc);
  const BoundaryCondition& bc = sc.bc;

  // Sample points and their per-axis coordinate indices.
  const auto pts = patch_samples(sc, opts.sample_density);
  std::array<std::vector<double>, 2> coords;
  std::vector<std::array<int, 2>> idx(pts.size());
  for (int a = 0; a < 2; ++a) {
    std::map<double, int> pos;
    for (const Point& p : pts) pos.emplace(a == 0 ? p.x : p.y, 0);
    for (auto& [v, i] : pos) {
      i = static_cast<int>(coords[a].size());
      coords[a].push_back(v);
    }
    for (std::size_t q = 0; q < pts.size(); ++q) idx[q][a] = pos.at(a == 0 ? pts[q].x : pts[q].y);
  }

  const double t_min = *std::min_element(t_grid.begin(), t_grid.end());
  // The difference is about e^{-(2 sep)^2 / 4t}; carry enough digits to resolve it at t_min.
  int digits = opts.digits;
  if (rep.match.ok && std::isfinite(rep.match.separation))
    digits = std::max(digits, static_cast<int>(std::ceil(std::pow(rep.match.separation, 2) / t_min / std::log(10.0))) + 40);
  const int saved = Real::default_precision();
  Real::default_precision(digits);
  struct Restore {
    int d;
    ~Restore() { Real::default_precision(d); }
  } restore{saved};

  std::array<IntervalModes, 2> modes{interval_modes(sides[0], bc, coords[0], t_min, digits),
                                     interval_modes(sides[1], bc, coords[1], t_min, digits)};
  for (double t : t_grid) {
    std::array<Table, 2> big, model;
    for (int a = 0; a < 2; ++a) {
      big[a] = interval_table(modes[a], t);
      model[a] = opts.compare_to_self ? big[a] : model_table(axes[a], bc, coords[a], t);
    }
    Real sup = 0;
    for (const auto& p : idx)
      for (const auto& q : idx) {
        const Real d = abs(big[0][p[0]][q[0]] * big[1][p[1]][q[1]] - model[0][p[0]][q[0]] * model[1][p[1]][q[1]]);
        if (d > sup) sup = d;
      }
    rep.t_grid.push_back(t);
    rep.sup_diff.push_back(static_cast<double>(sup));
    rep.log_sup_diff.push_back(sup > 0 ? static_cast<double>(log(sup)) : -std::numeric_limits<double>::infinity());
  }

  // log(sup_diff) = log A - c / t.
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < rep.t_grid.size(); ++i)
    if (std::isfinite(rep.log_sup_diff[i])) {
      xs.push_back(1.0 / rep.t_grid[i]);
      ys.push_back(rep.log_sup_diff[i]);
    }
  rep.model_fit.assign(rep.t_grid.size(), std::numeric_limits<double>::quiet_NaN());
  if (xs.size() < 3) {
    rep.note = xs.empty() ? "kernels agree exactly; nothing to fit" : "too few nonzero differences to fit";
    return rep;
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / n, my += ys[i] / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0)) fail(ErrorKind::FitFailure, "t grid has no spread");
  const double slope = sxy / sxx;
  const double log_a = my - slope * mx;
  rep.c = -slope;
  rep.A = std::exp(log_a);
  rep.r_squared = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  for (std::size_t i = 0; i < rep.t_grid.size(); ++i) rep.model_fit[i] = std::exp(log_a - rep.c / rep.t_grid[i]);
  rep.fit_ok = true;
  return rep;
}

}  // namespace drumcorners
