#include <algorithm>
#include <cmath>
#include <numbers>

#include "drumcorners/eigensolve.hpp"
#include "drumcorners/errors.hpp"
#include "drumcorners/kernels_1d.hpp"

namespace drumcorners {

namespace {

constexpr double kPi = std::numbers::pi;

double bisect(const auto& f, double lo, double hi, double flo) {
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> interval_wavenumbers(double L, const BoundaryCondition& bc, double kmax) {
  std::vector<double> k;
  if (bc.kind() == BCKind::Dirichlet) {
    for (int j = 1; j * kPi / L <= kmax; ++j) k.push_back(j * kPi / L);
  } else if (bc.acts_as_neumann()) {
    for (int j = 0; j * kPi / L <= kmax; ++j) k.push_back(j * kPi / L);
  } else {
    const std::size_t n = static_cast<std::size_t>(std::ceil(kmax * L / kPi)) + 1;
    for (double v : robin_interval_wavenumbers(L, bc.robin_coefficient(), n))
      if (v <= kmax) k.push_back(v);
  }
  return k;
}

void check_rect(double a, double b, const BoundaryCondition& bc) {
  if (!(a > 0 && b > 0) || !std::isfinite(a) || !std::isfinite(b))
    fail(ErrorKind::InvalidDimensions, "rectangle sides must be positive");
  if (bc.kind() == BCKind::Robin && bc.robin_coefficient() < 0)
    fail(ErrorKind::UnsupportedBC, "rectangle Robin spectrum needs alpha/beta >= 0");
}

// Zeros of g on (x0, xmax] by scanning with a fixed step and bisecting sign changes.
std::vector<double> scan_zeros(const auto& g, double x0, double xmax, double step = 0.25) {
  std::vector<double> z;
  double a = x0, fa = g(a);
  while (a < xmax) {
    const double b = std::min(a + step, xmax);
    const double fb = g(b);
    if (fa == 0.0) {
      z.push_back(a);
    } else if ((fa < 0) != (fb < 0) && fb != 0.0) {
      z.push_back(bisect(g, a, b, fa));
    }
    a = b;
    fa = fb;
  }
  if (fa == 0.0) z.push_back(a);
  return z;
}

}  // namespace

std::vector<double> robin_interval_wavenumbers(double L, double c, std::size_t count) {
  if (!(L > 0)) fail(ErrorKind::InvalidDimensions, "interval length must be positive");
  if (!(c > 0) || !std::isfinite(c)) fail(ErrorKind::ValidationError, "Robin wavenumbers need 0 < c < inf");
  auto f = [&](double k) { return oned::robin_characteristic(k, L, c); };
  std::vector<double> roots;
  roots.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    double lo = j * kPi / L, hi = (j + 1) * kPi / L;
    // f vanishes at k = 0; its sign just above 0 is that of -c(cL + 2) k.
    double flo = j == 0 ? -1.0 : f(lo);
    const double fhi = f(hi);
    if (j > 0 && flo == 0.0) fail(ErrorKind::RootBracketFailure, "Robin root on a bracket endpoint");
    if ((flo < 0) == (fhi < 0)) fail(ErrorKind::RootBracketFailure, "no sign change in Robin bracket");
    double k = bisect(f, lo, hi, flo);
    const double polished = oned::polish_robin_root(k, L, c, 2);
    if (polished > lo && polished < hi && std::abs(f(polished)) <= std::abs(f(k))) k = polished;
    if (std::abs(f(k)) / (k * k + c * c) > 1e-10) fail(ErrorKind::RootBracketFailure, "Robin root residual too large");
    roots.push_back(k);
  }
  return roots;
}

std::vector<double> eigs_1d_robin(double L, double alpha, double beta, std::size_t count) {
  const BoundaryCondition bc = BoundaryCondition::robin(alpha, beta);
  if (!(L > 0)) fail(ErrorKind::InvalidDimensions, "interval length must be positive");
  if (bc.robin_coefficient() < 0) fail(ErrorKind::ValidationError, "eigs_1d_robin needs alpha/beta >= 0");
  std::vector<double> ev;
  if (bc.acts_as_neumann()) {
    for (std::size_t j = 0; j < count; ++j) ev.push_back((j * kPi / L) * (j * kPi / L));
    return ev;
  }
  for (double k : robin_interval_wavenumbers(L, bc.robin_coefficient(), count)) ev.push_back(k * k);
  return ev;
}

Spectrum eigs_rectangle_below(double a, double b, const BoundaryCondition& bc, double lambda_max) {
  check_rect(a, b, bc);
  const double kmax = std::sqrt(std::max(lambda_max, 0.0));
  const auto kx = interval_wavenumbers(a, bc, kmax), ky = interval_wavenumbers(b, bc, kmax);
  std::vector<double> ev;
  for (double p : kx)
    for (double q : ky) {
      const double l = p * p + q * q;
      if (l <= lambda_max) ev.push_back(l);
      else break;
    }
  const bool closed = bc.kind() != BCKind::Robin || bc.acts_as_neumann();
  return make_spectrum(std::move(ev), closed ? SpectrumSource::ClosedForm : SpectrumSource::RootFinding, lambda_max);
}

Spectrum eigs_rectangle(double a, double b, const BoundaryCondition& bc, std::size_t count) {
  check_rect(a, b, bc);
  double lam = 4 * kPi * (count + 10) / (a * b) * 1.2 + 4 * kPi * kPi / std::min(a * a, b * b);
  while (true) {
    Spectrum s = eigs_rectangle_below(a, b, bc, lam);
    if (s.size() > count) return take_first(std::move(s.eigenvalues), count, s.source);
    lam *= 1.5;
  }
}

Spectrum eigs_disk(double radius, const BoundaryCondition& bc, std::size_t count) {
  if (!(radius > 0)) fail(ErrorKind::InvalidDimensions, "disk radius must be positive");
  if (bc.kind() == BCKind::Robin && !bc.acts_as_neumann())
    fail(ErrorKind::UnsupportedBC, "disk spectra are available for Dirichlet/Neumann only");
  const bool dirichlet = bc.kind() == BCKind::Dirichlet;
  // Weyl: N(lambda) ~ R^2 lambda / 4, so x = k R up to about 2 sqrt(N).
  double xmax = 2.0 * std::sqrt(double(count)) * 1.1 + 10.0;
  while (true) {
    std::vector<double> ev;
    if (!dirichlet) ev.push_back(0.0);
    for (int nu = 0; nu <= static_cast<int>(xmax); ++nu) {
      auto g = [nu, dirichlet](double x) {
        if (dirichlet) return std::cyl_bessel_j(double(nu), x);
        if (nu == 0) return -std::cyl_bessel_j(1.0, x);
        return 0.5 * (std::cyl_bessel_j(nu - 1.0, x) - std::cyl_bessel_j(nu + 1.0, x));
      };
      const double x0 = nu == 0 ? 0.1 : double(nu);
      const auto zeros = scan_zeros(g, x0, xmax);
      if (zeros.empty()) break;
      for (double z : zeros) {
        const double l = (z / radius) * (z / radius);
        ev.push_back(l);
        if (nu > 0) ev.push_back(l);
      }
    }
    if (ev.size() > count) return take_first(std::move(ev), count, SpectrumSource::RootFinding);
    xmax *= 1.3;
  }
}

WeylReport weyl_sanity(const Spectrum& spec, double area, double perimeter, bool dirichlet) {
  WeylReport r;
  if (spec.size() < 10 || !(spec.cutoff > 0)) {
    r.insufficient = true;
    r.flagged = true;
    return r;
  }
  r.lambda = spec.cutoff / 2;
  r.counted = static_cast<double>(std::upper_bound(spec.eigenvalues.begin(), spec.eigenvalues.end(), r.lambda) -
                                  spec.eigenvalues.begin());
  const double edge = perimeter * std::sqrt(r.lambda) / (4 * kPi);
  r.predicted = area * r.lambda / (4 * kPi) + (dirichlet ? -edge : edge);
  r.rel_deviation = std::abs(r.counted - r.predicted) / std::max(r.predicted, 1.0);
  r.flagged = r.rel_deviation > 0.10;
  return r;
}

}  // namespace drumcorners
