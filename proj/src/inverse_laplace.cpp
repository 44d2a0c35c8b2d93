#include <cmath>
#include <numbers>
#include <vector>

#include "drumcorners/errors.hpp"
#include "drumcorners/specfun.hpp"

namespace drumcorners {

namespace {

double checked(double v) {
  if (!std::isfinite(v)) fail(ErrorKind::EvaluationFailure, "transform returned a non-finite value");
  return v;
}

std::complex<double> checked(std::complex<double> v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    fail(ErrorKind::EvaluationFailure, "transform returned a non-finite value");
  return v;
}

long double factorial(int n) {
  long double f = 1.0L;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long double binomial(int n, int k) {
  long double b = 1.0L;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

std::vector<long double> stehfest_weights(int n) {
  const int h = n / 2;
  std::vector<long double> v(n + 1, 0.0L);
  for (int k = 1; k <= n; ++k) {
    long double s = 0.0L;
    for (int j = (k + 1) / 2; j <= std::min(k, h); ++j) {
      s += std::pow(static_cast<long double>(j), h) * factorial(2 * j) /
           (factorial(h - j) * factorial(j) * factorial(j - 1) * factorial(k - j) * factorial(2 * j - k));
    }
    v[k] = ((k + h) % 2 == 0 ? 1.0L : -1.0L) * s;
  }
  return v;
}

double stehfest_sum(const std::vector<double>& samples, double tau, int n) {
  const auto w = stehfest_weights(n);
  long double s = 0.0L;
  for (int k = 1; k <= n; ++k) s += w[k] * samples[k - 1];
  return static_cast<double>(tau * s);
}

double talbot_once(const ComplexTransform& F, double t, int m) {
  const double r = 2.0 * m / (5.0 * t);
  double sum = 0.5 * std::exp(r * t) * checked(F({r, 0.0})).real();
  for (int k = 1; k < m; ++k) {
    const double th = k * std::numbers::pi / m;
    const double cot = std::cos(th) / std::sin(th);
    const std::complex<double> s(r * th * cot, r * th);
    const std::complex<double> ds(1.0, th + (th * cot - 1.0) * cot);
    sum += (std::exp(t * s) * checked(F(s)) * ds).real();
  }
  return r / m * sum;
}

}  // namespace

InverseLaplaceResult inverse_laplace_talbot(const ComplexTransform& F, double t, int points) {
  if (!(t > 0)) fail(ErrorKind::NonPositiveTime, "inverse Laplace needs t > 0");
  if (points < 4) fail(ErrorKind::ValidationError, "Talbot needs at least 4 points");
  InverseLaplaceResult res;
  res.value = talbot_once(F, t, points);
  res.error_estimate = std::abs(res.value - talbot_once(F, t, points / 2));
  return res;
}

InverseLaplaceResult inverse_laplace_stehfest(const RealTransform& F, double t, int n) {
  if (!(t > 0)) fail(ErrorKind::NonPositiveTime, "inverse Laplace needs t > 0");
  if (n < 4 || n % 2) fail(ErrorKind::ValidationError, "Stehfest order must be even and >= 4");
  const double tau = std::numbers::ln2 / t;
  std::vector<double> samples(n);
  for (int k = 1; k <= n; ++k) samples[k - 1] = checked(F(k * tau));
  InverseLaplaceResult res;
  res.value = stehfest_sum(samples, tau, n);
  res.error_estimate = std::abs(res.value - stehfest_sum(samples, tau, n - 2));
  return res;
}

InverseLaplaceResult inverse_laplace_gwr(const RealTransform& F, double t, int m) {
  if (!(t > 0)) fail(ErrorKind::NonPositiveTime, "inverse Laplace needs t > 0");
  if (m < 2) fail(ErrorKind::ValidationError, "GWR order must be >= 2");
  const double tau = std::numbers::ln2 / t;
  std::vector<long double> fk(2 * m + 1);
  for (int k = 1; k <= 2 * m; ++k) fk[k] = checked(F(k * tau));

  // Gaver functionals G_n, n = 1..m.
  std::vector<long double> g0(m), gm(m, 0.0L), gp(m, 0.0L);
  for (int n = 1; n <= m; ++n) {
    long double s = 0.0L;
    for (int i = 0; i <= n; ++i) s += (i % 2 ? -1.0L : 1.0L) * binomial(n, i) * fk[n + i];
    g0[n - 1] = tau * n * binomial(2 * n, n) * s;
  }
  // Wynn rho acceleration; even columns are the estimates.
  long double best = g0[m - 1], previous = m >= 2 ? g0[m - 2] : g0[m - 1];
  for (int k = 0; k < m - 1; ++k) {
    bool broken = false;
    for (int n = m - 2 - k; n >= 0; --n) {
      const long double d = g0[n + 1] - g0[n];
      if (d == 0.0L) {
        broken = true;
        break;
      }
      gp[n] = gm[n + 1] + (k + 1) / d;
      if (k % 2 == 1 && n == m - 2 - k) {
        previous = best;
        best = gp[n];
      }
    }
    if (broken) break;
    for (int n = 0; n < m - k; ++n) {
      gm[n] = g0[n];
      g0[n] = gp[n];
    }
  }
  InverseLaplaceResult res;
  res.value = static_cast<double>(best);
  res.error_estimate = static_cast<double>(std::abs(best - previous));
  return res;
}

InverseLaplaceResult inverse_laplace(const RealTransform& F, double t, const InverseLaplaceParams& p,
                                     const ComplexTransform& complex_F) {
  switch (p.method) {
    case InverseLaplaceMethod::Talbot:
      if (!complex_F) fail(ErrorKind::EvaluationFailure, "Talbot needs the transform at complex abscissae");
      return inverse_laplace_talbot(complex_F, t, p.talbot_points);
    case InverseLaplaceMethod::Stehfest: return inverse_laplace_stehfest(F, t, p.stehfest_n);
    case InverseLaplaceMethod::GaverWynnRho: return inverse_laplace_gwr(F, t, p.gwr_m);
  }
  fail(ErrorKind::ValidationError, "unknown inverse Laplace method");
}

}  // namespace drumcorners
