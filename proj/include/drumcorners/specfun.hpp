#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace drumcorners {

// ---------------------------------------------------------------------------
// Gauss-Legendre rules on [-1, 1], cached per order.

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

/// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
double gauss_integrate(F&& f, double a, double b, int n = 16) {
  const GaussRule& g = gauss_legendre(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(mid + half * g.nodes[i]);
  return half * s;
}

// ---------------------------------------------------------------------------

double erfc(double x);
/// e^{x^2} erfc(x), finite for every x where it does not overflow (x > -26).
double erfcx(double x);

// ---------------------------------------------------------------------------
// K_{i mu}(x), modified Bessel function of the second kind with imaginary order.

/// K_{i mu}(x) for real mu (even in mu) and x > 0. Throws NonPositiveArgument, ToleranceNotMet.
double bessel_k_imag(double mu, double x, double rel_tol = 1e-13);
/// e^{pi |mu| / 2} K_{i mu}(x); O(1) for large mu, which is how the KL integrals use it.
double bessel_k_imag_scaled(double mu, double x, double rel_tol = 1e-13);

// ---------------------------------------------------------------------------
// Kontorovich-Lebedev type integrals over the order.

struct QuadratureBudget {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_panels = 4000;
  double mu_cutoff = 2000.0;
};

/// (1/pi^2) * Int_0^inf K_{i mu}(r sqrt s) K_{i mu}(r0 sqrt s) * brace(mu) dmu.
/// `phi_factor` is the brace multiplied by e^{-pi mu}; it must decay like e^{-decay_rate mu}.
/// An optional simple pole inside (0, inf) is integrated as a principal value.
struct KLIntegrand {
  double r = 1.0;
  double r0 = 1.0;
  double s = 1.0;
  std::function<double(double)> phi_factor;
  double decay_rate = 0.0;
  std::optional<double> pole;
};

struct KLResult {
  double value = 0.0;
  double tail_bound = 0.0;
  int panels = 0;
  double mu_end = 0.0;
};

/// Throws DivergentConfiguration (decay_rate <= 0) or ToleranceNotMet.
KLResult kl_integrate(const KLIntegrand& integrand, const QuadratureBudget& budget);

// ---------------------------------------------------------------------------
// Numerical inverse Laplace transform.

enum class InverseLaplaceMethod { Talbot, Stehfest, GaverWynnRho };

struct InverseLaplaceParams {
  InverseLaplaceMethod method = InverseLaplaceMethod::Talbot;
  int talbot_points = 32;
  int stehfest_n = 16;
  int gwr_m = 8;
};

struct InverseLaplaceResult {
  double value = 0.0;
  double error_estimate = 0.0;  // difference to the next-lower order of the same method
};

using RealTransform = std::function<double(double)>;
using ComplexTransform = std::function<std::complex<double>(std::complex<double>)>;

/// Fixed Talbot contour; needs the analytic continuation of F.
InverseLaplaceResult inverse_laplace_talbot(const ComplexTransform& F, double t, int points = 32);
/// Gaver-Stehfest on the real abscissae k ln2 / t, k = 1..n (n even).
InverseLaplaceResult inverse_laplace_stehfest(const RealTransform& F, double t, int n = 16);
/// Gaver functionals accelerated by the Wynn rho algorithm, abscissae k ln2 / t, k = 1..2m.
InverseLaplaceResult inverse_laplace_gwr(const RealTransform& F, double t, int m = 8);

/// Dispatch on params.method. For Talbot the real transform is used on the complex contour
/// only if `complex_F` is given; otherwise EvaluationFailure.
InverseLaplaceResult inverse_laplace(const RealTransform& F, double t, const InverseLaplaceParams& params,
                                     const ComplexTransform& complex_F = nullptr);

}  // namespace drumcorners
