#include <algorithm>
#include <cmath>
#include <numbers>

#include "drumcorners/errors.hpp"
#include "drumcorners/specfun.hpp"

namespace drumcorners {

namespace {

constexpr double kPi = std::numbers::pi;

// Panel width in mu: K_{i mu}(x) oscillates in mu with local frequency ~ log(2 mu / x).
double panel_width(double mu, double xmin) {
  return std::min(1.0, 3.0 / (1.0 + std::log(1.0 + 2.0 * mu / xmin)));
}

}  // namespace

KLResult kl_integrate(const KLIntegrand& in, const QuadratureBudget& budget) {
  if (!(budget.rel_tol > 0 && budget.abs_tol > 0)) fail(ErrorKind::ValidationError, "tolerances must be positive");
  if (!(in.r > 0 && in.r0 > 0 && in.s > 0)) fail(ErrorKind::NonPositiveArgument, "KL integrand needs r, r0, s > 0");
  if (!(in.decay_rate > 0))
    fail(ErrorKind::DivergentConfiguration, "brace does not decay faster than the Bessel product grows");
  if (!in.phi_factor) return {};

  const double sq = std::sqrt(in.s);
  const double x1 = in.r * sq, x2 = in.r0 * sq;
  const double xmin = std::min(x1, x2);
  auto f = [&](double mu) {
    const double b = in.phi_factor(mu);
    if (b == 0.0) return 0.0;
    return bessel_k_imag_scaled(mu, x1) * bessel_k_imag_scaled(mu, x2) * b / (kPi * kPi);
  };

  KLResult res;
  double mu = 0.0;
  const bool has_pole = in.pole && *in.pole > 0;
  const double c = has_pole ? *in.pole : 0.0;
  const double w = has_pole ? std::min(c, panel_width(c, xmin)) : 0.0;
  bool pole_done = !has_pole;

  while (true) {
    if (!pole_done && mu >= c - w) {
      // Principal value over [c - w, c + w]: Int_0^w [f(c - v) + f(c + v)] dv, graded toward v = 0.
      auto sym = [&](double v) { return f(c - v) + f(c + v); };
      res.value += gauss_integrate(sym, 0.0, 0.25 * w, 16) + gauss_integrate(sym, 0.25 * w, w, 16);
      res.panels += 2;
      mu = c + w;
      pole_done = true;
      continue;
    }
    double h = panel_width(mu, xmin);
    if (!pole_done) h = std::min(h, c - w - mu);
    const GaussRule& g = gauss_legendre(16);
    const double half = 0.5 * h, mid = mu + half;
    double ps = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double v = f(mid + half * g.nodes[i]);
      ps += g.weights[i] * v;
      peak = std::max(peak, std::abs(v));
    }
    res.value += half * ps;
    mu += h;
    ++res.panels;
    res.tail_bound = peak / in.decay_rate;
    const double tol = std::max(budget.abs_tol, budget.rel_tol * std::abs(res.value));
    // A pole still ahead only matters if the integrand has not decayed by the time it is reached;
    // near the pole |f| is at most ~ peak e^{-decay (c - mu)} / |c - mu| per unit window.
    const bool pole_negligible =
        pole_done || peak * std::exp(-in.decay_rate * (c - w - mu)) * (1.0 + 1.0 / w) < 0.1 * tol;
    // Require a few panels past any slow start before trusting the tail estimate.
    if (res.tail_bound < tol && mu > 2.0 / in.decay_rate && pole_negligible) break;
    if (res.panels >= budget.max_panels || mu >= budget.mu_cutoff)
      fail(ErrorKind::ToleranceNotMet, "KL integral did not reach its tolerance within the budget");
  }
  res.mu_end = mu;
  return res;
}

}  // namespace drumcorners
