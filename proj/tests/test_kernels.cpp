#include <doctest.h>

#include <cmath>

#include "drumcorners/errors.hpp"
#include "drumcorners/kernels.hpp"
#include "drumcorners/specfun.hpp"
#include "support/properties.hpp"

using namespace drumcorners;

namespace {

const auto D = BoundaryCondition::dirichlet();
const auto N = BoundaryCondition::neumann();

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::IoError;
}

// n-th repeated integral of erfc by quadrature: (2/sqrt pi) Int_z^inf (s-z)^n/n! e^{-s^2} ds.
double ierfc(int n, double z) {
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  double sum = 0.0;
  for (int p = 0; p < 40; ++p) {
    const double a = z + 0.3 * p, b = a + 0.3;
    sum += gauss_integrate([&](double s) { return std::pow(s - z, n) / fact * std::exp(-s * s); }, a, b, 24);
  }
  return 2 / std::sqrt(M_PI) * sum;
}

}  // namespace

TEST_CASE("free heat kernel") {
  CHECK(heat_plane(0.25, {0.3, 0.1}, {0.3, 0.1}) == doctest::Approx(1 / M_PI).epsilon(1e-15));
  CHECK(heat_plane(0.25, {0, 0}, {0.6, 0.8}) == doctest::Approx(std::exp(-1.0) / M_PI).epsilon(1e-15));
  CHECK(kind_of([] { heat_plane(0.0, {0, 0}, {0, 0}); }) == ErrorKind::NonPositiveTime);
}

TEST_CASE("half-plane kernels") {
  for (double t : {0.01, 0.3, 2.0})
    for (double x : {-1.0, 0.0, 0.4}) CHECK(heat_halfplane(t, {x, 0.7}, {0.2, 0.0}, D) == 0.0);
  for (double t : {0.01, 0.3}) {
    const Point z{0.1, 0.3}, w{-0.2, 0.6};
    CHECK(heat_halfplane(t, z, w, BoundaryCondition::robin(0.0, 2.0)) == heat_halfplane(t, z, w, N));
  }
  CHECK(kind_of([] { heat_halfplane(0.1, {0, -0.1}, {0, 1}, N); }) == ErrorKind::PointOutsideDomain);

  // Robin correction against its one-dimensional closed form at c = 1 (independent erfc evaluation).
  const double t = 0.1, y = 0.5, c = 1.0;
  const double g = 1 / (4 * M_PI * t);
  const double h_n = g * (1 + std::exp(-y * y / t));
  const double corr = -c / std::sqrt(4 * M_PI * t) * std::exp(c * 2 * y + c * c * t) * std::erfc(2 * y / std::sqrt(4 * t) + c * std::sqrt(t));
  CHECK(heat_halfplane(t, {0, y}, {0, y}, BoundaryCondition::robin(1, 1)) == doctest::Approx(h_n + corr).epsilon(1e-13));
}

TEST_CASE("Robin half-plane kernel approaches Dirichlet monotonically") {
  for (const auto& [z, w] : {std::pair<Point, Point>{{0, 0.2}, {0.1, 0.3}}, {{0.5, 0.05}, {0.4, 0.5}}}) {
    const double dir = heat_halfplane(0.05, z, w, D);
    double prev = heat_halfplane(0.05, z, w, N);
    for (double c : {1.0, 10.0, 100.0, 1000.0}) {
      const double v = heat_halfplane(0.05, z, w, BoundaryCondition::robin(c, 1.0));
      CHECK(v < prev);
      CHECK(v > dir);
      prev = v;
    }
    CHECK(std::abs(prev - dir) < 0.02 * std::abs(heat_halfplane(0.05, z, w, N) - dir));
  }
}

TEST_CASE("quarter-plane kernels") {
  CHECK(heat_quarterplane(0.1, {0.0, 0.4}, {0.3, 0.2}, D, D) == 0.0);
  CHECK(heat_quarterplane(0.1, {0.3, 0.0}, {0.3, 0.2}, D, D) == 0.0);
  CHECK(heat_quarterplane(0.1, {0, 0}, {0, 0}, N, N) == doctest::Approx(4 / (4 * M_PI * 0.1)).epsilon(1e-15));
  CHECK(kind_of([] { heat_quarterplane(0.1, {1, 1}, {1, 1}, BoundaryCondition::robin(1, 1), D); }) ==
        ErrorKind::UnsupportedBC);
}

TEST_CASE("rectangle kernels") {
  CHECK(std::abs(heat_rectangle(0.05, {0.0, 0.3}, {0.4, 0.4}, 1, 1, D)) < 1e-14);
  CHECK(heat_rectangle(0.05, {0.5, 0.5}, {0.5, 0.5}, 1, 1, D) ==
        doctest::Approx(heat_rectangle_images(0.05, {0.5, 0.5}, {0.5, 0.5}, 1, 1, D)).epsilon(1e-8));
  CHECK(heat_rectangle(0.01, {0.2, 0.9}, {0.3, 0.7}, 1, 1.3, N) ==
        doctest::Approx(heat_rectangle_images(0.01, {0.2, 0.9}, {0.3, 0.7}, 1, 1.3, N)).epsilon(1e-8));

  // Neumann heat flow preserves mass.
  const double a = 1.2, b = 0.8, t = 0.02;
  const Point z{0.3, 0.1};
  double mass = 0.0;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j)
      mass += gauss_integrate(
          [&](double x) {
            return gauss_integrate([&](double y) { return heat_rectangle(t, z, {x, y}, a, b, N); }, b * j / 12, b * (j + 1) / 12, 12);
          },
          a * i / 12, a * (i + 1) / 12, 12);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(kind_of([] { heat_rectangle(0.1, {2, 0.5}, {0.5, 0.5}, 1, 1, D); }) == ErrorKind::PointOutsideDomain);
}

TEST_CASE("kernels satisfy the heat equation") {
  const double t = 0.1, h = 1e-3, ht = 1e-4;
  const Point z{0.35, 0.45}, w{0.5, 0.3};
  for (const auto& [name, k] : props::model_kernels()) {
    CAPTURE(name);
    const double dt = (k(t + ht, z, w) - k(t - ht, z, w)) / (2 * ht);
    const double lap = (k(t, {z.x + h, z.y}, w) + k(t, {z.x - h, z.y}, w) + k(t, {z.x, z.y + h}, w) +
                        k(t, {z.x, z.y - h}, w) - 4 * k(t, z, w)) /
                       (h * h);
    CHECK(std::abs(dt - lap) < 1e-4);
  }
}

TEST_CASE("kernel symmetry, semigroup and Gaussian bound") {
  const auto sym = props::kernel_symmetry();
  CHECK_MESSAGE(sym.ok, sym.detail);
  const auto semi = props::semigroup();
  CHECK_MESSAGE(semi.ok, semi.detail);
  const auto gauss = props::gaussian_bound();
  CHECK_MESSAGE(gauss.ok, gauss.detail);
}

TEST_CASE("Duhamel series from the Neumann kernel") {
  const auto hn = halfplane_kernel(N);
  const Point x{0, 0.5}, y{0.1, 0.3};
  const auto zero = robin_from_neumann(hn, 0.0, {}, 0.1, x, y, 4);
  CHECK(zero.value == hn(0.1, x, y));
  for (std::size_t m = 1; m < zero.terms.size(); ++m) CHECK(zero.terms[m] == 0.0);

  // Term by term against k_m = g (-c)^m (4t)^{(m-1)/2} i^{m-1}erfc((y+y')/(2 sqrt t)) on the normal line.
  const double c = 1.0, t = 0.1;
  const Point p{0, 0.5}, q{0, 0.3};
  const auto r = robin_from_neumann(hn, c, {}, t, p, q, 6);
  const double gx = 1 / std::sqrt(4 * M_PI * t) * std::exp(-0.0);
  for (int m = 1; m <= 4; ++m) {
    const double exact = gx * std::pow(-c, m) * std::pow(4 * t, (m - 1) / 2.0) * ierfc(m - 1, (0.8) / (2 * std::sqrt(t)));
    CAPTURE(m);
    CHECK(r.terms[m] == doctest::Approx(exact).epsilon(1e-5));
  }

  const auto rr = robin_from_neumann(hn, 1.0, {}, 0.1, {0, 0.5}, {0, 0.5}, 12);
  CHECK(rr.value == doctest::Approx(heat_halfplane(0.1, {0, 0.5}, {0, 0.5}, BoundaryCondition::robin(1, 1))).epsilon(1e-5));
  CHECK(kind_of([&] { robin_from_neumann(hn, 1.0, {}, 0.1, {0, 0.0}, {0, 0.5}, 4); }) == ErrorKind::QuadratureFailure);
}
