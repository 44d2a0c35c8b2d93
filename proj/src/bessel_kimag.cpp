#include <cmath>
#include <numbers>

#include "drumcorners/errors.hpp"
#include "drumcorners/specfun.hpp"

namespace drumcorners {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCapWidth = 3.0;  // keeps cos(theta) >= sin(kCapWidth/mu) so the shifted integrand decays
constexpr int kMaxPanels = 2'000'000;

// K_{i mu}(x) = e^{-mu theta} Int_0^inf e^{-x cos(theta) cosh u} cos(mu u - x sin(theta) sinh u) du
// for any theta in [0, pi/2): the contour u -> u + i theta. Returns the integral times
// e^{mu (pi/2 - theta)}, i.e. the scaled value e^{pi mu/2} K_{i mu}(x).
double scaled_kernel(double mu, double x, double rel_tol) {
  double theta = std::asin(std::min(mu / x, 1.0));
  if (mu > 0) theta = std::min(theta, kPi / 2 - std::min(kPi / 2, kCapWidth / mu));
  theta = std::max(theta, 0.0);
  const double a = x * std::cos(theta);
  const double b = x * std::sin(theta);
  const double cutoff = std::max(40.0, -std::log(rel_tol) + 8.0);

  auto rate = [&](double u) { return std::abs(mu - b * std::cosh(u)) + a * std::sinh(u) + 1.0; };
  auto f = [&](double u) { return std::exp(-a * (std::cosh(u) - 1.0)) * std::cos(mu * u - b * std::sinh(u)); };

  const GaussRule& g = gauss_legendre(8);
  double sum = 0.0, u = 0.0;
  int panels = 0;
  while (a * (std::cosh(u) - 1.0) < cutoff) {
    double h = 2.0 / rate(u);
    h = 2.0 / std::max(rate(u), rate(u + h));
    const double mid = u + 0.5 * h;
    double ps = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) ps += g.weights[i] * f(mid + 0.5 * h * g.nodes[i]);
    sum += 0.5 * h * ps;
    u += h;
    if (++panels > kMaxPanels) fail(ErrorKind::ToleranceNotMet, "K_{i mu}(x) quadrature exceeded its panel budget");
  }
  // Undo the e^{-a} normalisation and apply e^{mu (pi/2 - theta)}.
  return sum * std::exp(-a + mu * (kPi / 2 - theta));
}

}  // namespace

double bessel_k_imag_scaled(double mu, double x, double rel_tol) {
  if (!(x > 0)) fail(ErrorKind::NonPositiveArgument, "K_{i mu}(x) needs x > 0");
  if (!(rel_tol > 0)) fail(ErrorKind::ValidationError, "rel_tol must be positive");
  return scaled_kernel(std::abs(mu), x, rel_tol);
}

double bessel_k_imag(double mu, double x, double rel_tol) {
  const double m = std::abs(mu);
  return bessel_k_imag_scaled(m, x, rel_tol) * std::exp(-kPi * m / 2);
}

}  // namespace drumcorners
