#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "drumcorners/errors.hpp"
#include "drumcorners/specfun.hpp"

using namespace drumcorners;

namespace {

// K_{i mu}(x) and e^{pi mu / 2} K_{i mu}(x), computed once with mpmath besselk at 30 digits.
struct KRef {
  double mu, x, value, scaled;
};
constexpr KRef kRefs[] = {
    {0, 1, 0.42102443824070833334, 0.42102443824070833334},
    {1, 1, 0.28942803702599212763, 1.3922870255307374367},
    {5, 1, 3.8046182799756372805e-4, 0.9800584440033037075},
    {10, 2, 1.1735704221220611526e-7, 0.77873720579500545377},
    {20, 0.5, -8.1056068347248340901e-15, -0.3569020748471655624},
    {3, 10, 1.1540111450067396975e-5, 1.2846195701468560243e-3},
    {30, 30, 1.5476680623386728065e-21, 0.45219226395092165189},
    {0.5, 0.01, 1.1098860905451278987, 2.4342910209842357349},
    {60, 5, -1.3923623078387531186e-42, -0.11886195617272293062},
    {0, 10, 1.77800623161676518e-5, 1.77800623161676518e-5},
};

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("K of imaginary order against reference values") {
  for (const KRef& r : kRefs) {
    CAPTURE(r.mu);
    CAPTURE(r.x);
    CHECK(bessel_k_imag_scaled(r.mu, r.x) == doctest::Approx(r.scaled).epsilon(1e-11));
    CHECK(bessel_k_imag(r.mu, r.x) == doctest::Approx(r.value).epsilon(1e-11));
  }
  CHECK(bessel_k_imag(0, 1) == doctest::Approx(std::cyl_bessel_k(0.0, 1.0)).epsilon(1e-12));
  // Leading asymptotics sqrt(pi / 2x) e^{-x} (1 - 1/8x) at x = 10.
  const double asym = std::sqrt(M_PI / 20) * std::exp(-10.0) * (1 - 1.0 / 80 + 9.0 / (2 * 6400));
  CHECK(std::abs(bessel_k_imag(0, 10) - asym) < 1e-8);
  CHECK(bessel_k_imag(-1.0, 1.0) == bessel_k_imag(1.0, 1.0));
}

TEST_CASE("K of imaginary order is bounded by K_0") {
  for (double x : {0.05, 0.3, 1.0, 4.0, 12.0})
    for (double mu : {0.0, 0.2, 1.0, 2.5, 7.0, 15.0, 40.0}) {
      const double k0 = std::cyl_bessel_k(0.0, x);
      CHECK(std::abs(bessel_k_imag(mu, x)) <= k0 * (1 + 1e-12));
      if (mu == 0.0) CHECK(bessel_k_imag(mu, x) > 0);
    }
  CHECK(kind_of([] { bessel_k_imag(1.0, 0.0); }) == ErrorKind::NonPositiveArgument);
}

TEST_CASE("erfc and erfcx") {
  CHECK(drumcorners::erfc(0.0) == 1.0);
  CHECK(std::abs(drumcorners::erfc(1.0) - 0.15729920705028513) < 1e-8);
  CHECK(erfcx(100.0) == doctest::Approx(1 / (100 * std::sqrt(M_PI))).epsilon(1e-4));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng);
    CHECK(drumcorners::erfc(x) + drumcorners::erfc(-x) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(drumcorners::erfc(x) == doctest::Approx(std::erfc(x)).epsilon(1e-13));
    if (x < 5) CHECK(erfcx(x) == doctest::Approx(std::exp(x * x) * std::erfc(x)).epsilon(1e-12));
  }
  double prev = 2.0;
  for (double x = -5; x <= 5; x += 0.01) {
    CHECK(drumcorners::erfc(x) <= prev);
    prev = drumcorners::erfc(x);
  }
  // Continued-fraction branch against the asymptotic series.
  const double x = 30.0;
  const double series = (1 - 1 / (2 * x * x) + 3 / (4 * std::pow(x, 4)) - 15 / (8 * std::pow(x, 6))) / (x * std::sqrt(M_PI));
  CHECK(erfcx(x) == doctest::Approx(series).epsilon(1e-12));
}

TEST_CASE("KL integration") {
  KLIntegrand in;
  in.r = 1.0;
  in.r0 = 1.5;
  in.s = 1.0;
  in.decay_rate = 1.0;
  in.phi_factor = [](double) { return 0.0; };
  const KLResult zero = kl_integrate(in, {});
  CHECK(zero.value == 0.0);
  CHECK(zero.tail_bound == 0.0);

  const auto f = [](double mu) { return std::exp(-mu) * std::cos(0.3 * mu); };
  const auto g = [](double mu) { return std::exp(-2 * mu) * (1 + mu); };
  in.phi_factor = f;
  const double vf = kl_integrate(in, {}).value;
  in.phi_factor = g;
  const double vg = kl_integrate(in, {}).value;
  in.phi_factor = [&](double mu) { return 0.5 * f(mu); };
  CHECK(kl_integrate(in, {}).value == doctest::Approx(0.5 * vf).epsilon(1e-13));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 5; ++i) {
    const double a = u(rng), b = u(rng);
    in.phi_factor = [&](double mu) { return a * f(mu) + b * g(mu); };
    CHECK(kl_integrate(in, {}).value == doctest::Approx(a * vf + b * vg).epsilon(1e-9));
  }
  in.decay_rate = 0.0;
  CHECK(kind_of([&] { kl_integrate(in, {}); }) == ErrorKind::DivergentConfiguration);
}

TEST_CASE("inverse Laplace transforms") {
  CHECK(inverse_laplace_talbot([](std::complex<double> s) { return 1.0 / s; }, 1.0).value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(inverse_laplace_stehfest([](double s) { return 1.0 / s; }, 1.0).value - 1.0) < 1e-6);
  const double e1 = std::exp(-1.0);
  CHECK(std::abs(inverse_laplace_talbot([](std::complex<double> s) { return 1.0 / (s + 2.0); }, 0.5).value - e1) < 1e-6);
  CHECK(std::abs(inverse_laplace_stehfest([](double s) { return 1.0 / (s + 2.0); }, 0.5).value - e1) < 1e-6);
  CHECK(std::abs(inverse_laplace_gwr([](double s) { return 1.0 / (s + 2.0); }, 0.5).value - e1) < 1e-6);
  // Free Green's function and free heat kernel at distance 1.
  const auto K = [](double s) { return std::cyl_bessel_k(0.0, std::sqrt(s)) / (2 * M_PI); };
  CHECK(std::abs(inverse_laplace_stehfest(K, 0.25).value - e1 / M_PI) < 1e-4);
  CHECK(std::abs(inverse_laplace_gwr(K, 0.25).value - e1 / M_PI) < 1e-4);
}

TEST_CASE("inverse Laplace undoes the Laplace transform on damped functions") {
  for (double a : {0.5, 1.0, 3.0})
    for (double t : {0.1, 0.7, 2.0}) {
      const double e = std::exp(-a * t), te = t * std::exp(-a * t);
      const auto F1 = [a](std::complex<double> s) { return 1.0 / (s + a); };
      const auto F2 = [a](std::complex<double> s) { return 1.0 / ((s + a) * (s + a)); };
      CHECK(std::abs(inverse_laplace_talbot(F1, t).value / e - 1) < 1e-5);
      CHECK(std::abs(inverse_laplace_talbot(F2, t).value / te - 1) < 1e-5);
      const auto G1 = [a](double s) { return 1.0 / (s + a); };
      const auto G2 = [a](double s) { return 1.0 / ((s + a) * (s + a)); };
      // Gaver-Wynn-rho in double precision is accurate to ~1e-5 of the function scale, not relatively.
      CHECK(std::abs(inverse_laplace_gwr(G1, t).value - e) < 1e-5);
      CHECK(std::abs(inverse_laplace_gwr(G2, t).value - te) < 1e-5);
    }
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n : {4, 8, 16, 32}) {
    const double v = gauss_integrate([n](double x) { return std::pow(x, 2 * n - 1) + std::pow(x, 2 * n - 2); }, 0.0, 1.0, n);
    CHECK(v == doctest::Approx(1.0 / (2 * n) + 1.0 / (2 * n - 1)).epsilon(1e-13));
  }
}
