#include "drumcorners/sector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "drumcorners/errors.hpp"
#include "drumcorners/kernels.hpp"

namespace drumcorners {

namespace {

constexpr double kPi = std::numbers::pi;

// (1 - e^{-2 pi mu}) / (1 - e^{-2 gamma mu}) = e^{(gamma - pi) mu} sinh(pi mu) / sinh(gamma mu)
double ratio_pi_gamma(double mu, double gamma) {
  if (mu < 1e-8) return kPi / gamma;
  return -std::expm1(-2 * kPi * mu) / -std::expm1(-2 * gamma * mu);
}

// (e^{-2 gamma mu} - e^{-2 pi mu}) / (1 - e^{-2 gamma mu}) = e^{(gamma - pi) mu} sinh((pi - gamma) mu) / sinh(gamma mu)
double ratio_pi_minus_gamma(double mu, double gamma) {
  if (mu < 1e-8) return (kPi - gamma) / gamma;
  return (std::exp(-2 * gamma * mu) - std::exp(-2 * kPi * mu)) / -std::expm1(-2 * gamma * mu);
}

void check_point(const Sector& sec, SectorPoint p) {
  if (!(p.r > 0)) fail(ErrorKind::PointOutsideDomain, "sector points need r > 0 (the apex is excluded)");
  if (p.phi < 0 || p.phi > sec.gamma) fail(ErrorKind::PointOutsideDomain, "sector point angle outside [0, gamma]");
}

void check_bc(const Sector& sec) {
  if (sec.bc.kind() == BCKind::Robin && sec.bc.robin_coefficient() < 0)
    fail(ErrorKind::UnsupportedBC, "sector Robin kernels are restricted to alpha/beta >= 0");
}

}  // namespace

Point SectorPoint::cartesian() const { return {r * std::cos(phi), r * std::sin(phi)}; }

double SectorBrace::free_scaled(double mu) const {
  const double d = std::abs(phi - phi0);
  return 0.5 * (std::exp(-d * mu) + std::exp(-(2 * kPi - d) * mu));
}

double SectorBrace::regular_scaled(double mu) const {
  const double X = phi + phi0 - gamma;
  const double R = ratio_pi_gamma(mu, gamma);
  const double lower = std::exp(-(gamma - X) * mu), upper = std::exp(-(gamma + X) * mu);
  const double reflected = 0.5 * R * (lower + upper);
  const double cross = ratio_pi_minus_gamma(mu, gamma) * std::cosh((phi - phi0) * mu);
  if (bc.kind() == BCKind::Dirichlet) return -reflected + cross;
  if (bc.acts_as_neumann()) return reflected + cross;
  const double c = bc.robin_coefficient();
  const double robin = -R * (lower * c / (c + mu) + upper * c / (c - mu));
  return reflected + cross + robin;
}

double SectorBrace::full(double mu) const {
  const double X = phi + phi0 - gamma;
  const double ratio = std::sinh(kPi * mu) / std::sinh(gamma * mu);
  double b = std::cosh((kPi - std::abs(phi0 - phi)) * mu) +
             std::sinh((kPi - gamma) * mu) / std::sinh(gamma * mu) * std::cosh((phi - phi0) * mu);
  if (bc.kind() == BCKind::Dirichlet) return b - ratio * std::cosh(X * mu);
  b += ratio * std::cosh(X * mu);
  if (bc.acts_as_neumann()) return b;
  const double a = bc.alpha(), be = bc.beta();
  return b - ratio * (std::exp(X * mu) * a / (a + be * mu) + std::exp(-X * mu) * a / (a - be * mu));
}

double SectorBrace::decay_rate() const {
  return std::min({phi + phi0, 2 * gamma - phi - phi0, 2 * std::min(gamma, kPi) - std::abs(phi - phi0)});
}

double dirichlet_angular(double mu, double gamma, double phi, double phi0) {
  const double lo = std::min(phi, phi0), hi = std::max(phi, phi0);
  return std::sinh(mu * lo) * std::sinh(mu * (gamma - hi)) / (mu * std::sinh(gamma * mu));
}

SectorGreenResult green_sector_regular(double s, const Sector& sec, SectorPoint p, SectorPoint p0,
                                       const QuadratureBudget& budget) {
  if (!(s > 0)) fail(ErrorKind::NonPositiveArgument, "sector Green's function needs s > 0");
  check_point(sec, p);
  check_point(sec, p0);
  check_bc(sec);
  const SectorBrace brace{sec.gamma, p.phi, p0.phi, sec.bc};
  KLIntegrand in;
  in.r = p.r;
  in.r0 = p0.r;
  in.s = s;
  in.decay_rate = brace.decay_rate();
  in.phi_factor = [brace](double mu) { return brace.regular_scaled(mu); };
  if (sec.bc.kind() == BCKind::Robin && !sec.bc.acts_as_neumann()) in.pole = sec.bc.robin_coefficient();
  const KLResult r = kl_integrate(in, budget);
  return {r.value, r.tail_bound};
}

SectorGreenResult green_sector(double s, const Sector& sec, SectorPoint p, SectorPoint p0,
                               const QuadratureBudget& budget) {
  const double dist = distance(p.cartesian(), p0.cartesian());
  if (dist < 1e-6 * std::max(p.r, p0.r)) fail(ErrorKind::DiagonalSingularity, "Green's function is singular at p = p0");
  SectorGreenResult g = green_sector_regular(s, sec, p, p0, budget);
  g.value += std::cyl_bessel_k(0.0, std::sqrt(s) * dist) / (2 * kPi);
  return g;
}

SectorHeatResult heat_sector(double t, const Sector& sec, SectorPoint p, SectorPoint p0, const QuadratureBudget& budget,
                             const SectorHeatOptions& opts) {
  if (!(t > 0)) fail(ErrorKind::NonPositiveTime, "heat kernels need t > 0");
  // Both inversions sample s_k = k ln2 / t; share the Green's evaluations.
  // The real-axis inversions amplify sample errors by up to ~1e9, so the KL quadrature is
  // run near double precision regardless of the caller's budget.
  QuadratureBudget inner = budget;
  inner.rel_tol = std::min(budget.rel_tol, 1e-14);
  inner.abs_tol = std::min(budget.abs_tol, 1e-17);
  std::map<double, double> memo;
  auto G = [&](double s) {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    const double v = green_sector_regular(s, sec, p, p0, inner).value;
    memo.emplace(s, v);
    return v;
  };
  SectorHeatResult res;
  res.free_part = heat_plane(t, p.cartesian(), p0.cartesian());
  res.regular_stehfest = inverse_laplace_stehfest(G, t, opts.stehfest_n).value;
  res.regular_gwr = inverse_laplace_gwr(G, t, opts.gwr_m).value;
  res.value = res.free_part + res.regular_stehfest;
  const double scale = std::abs(res.free_part) + std::abs(res.regular_stehfest);
  res.disagreement = std::abs(res.regular_stehfest - res.regular_gwr) / std::max(scale, 1e-300);
  if (res.disagreement > opts.agreement_tol)
    fail(ErrorKind::UnstableResult, "Gaver-Stehfest and Gaver-Wynn-rho inversions disagree");
  return res;
}

}  // namespace drumcorners
